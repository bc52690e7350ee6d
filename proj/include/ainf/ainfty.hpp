#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ainf/errors.hpp"
#include "ainf/linalg.hpp"

namespace ainf {

// A basis word x_{i1} (x) ... (x) x_{in} of a tensor power.
using Word = std::vector<std::uint32_t>;
// Sparse element of a tensor power; zero coefficients are never stored.
using Tensor = std::map<Word, Scalar>;

void accumulate(Tensor& t, const Word& w, const Scalar& c);
void accumulate(Tensor& t, const Tensor& other, const Scalar& c);
Tensor scaled(const Tensor& t, const Scalar& c);

// Graded basis sorted by ascending degree.
struct GradedBasis {
    Field field;
    std::vector<int> degrees;
    std::vector<std::string> labels;

    std::size_t size() const { return degrees.size(); }
    int word_degree(const Word& w) const;
    std::size_t dim(int p) const;
    std::vector<std::uint32_t> indices_of_degree(int p) const;
    std::vector<int> distinct_degrees() const;
    bool is_sorted() const;
};

// Operations Delta_n : C -> C^{(x)n} of degree n-2, stored per basis element.
class AInftyCoalgebra {
public:
    GradedBasis space;
    int arity_bound = 4;
    std::map<int, std::vector<Tensor>> ops;

    const Tensor& op(int n, std::size_t x) const;
    void set_op(int n, std::size_t x, Tensor t);
    bool is_minimal() const;
    bool is_zero(int n) const;
    // Every stored term has degree |x| + n - 2.
    bool degrees_consistent() const;
};

// Operations mu_n : A^{(x)n} -> A of degree 2-n (cohomological grading).
class AInftyAlgebra {
public:
    GradedBasis space;
    int arity_bound = 4;
    std::map<int, std::map<Word, SparseVec>> ops;

    SparseVec op(int n, const Word& w) const;
    void set_op(int n, const Word& w, SparseVec v);
    bool is_minimal() const;
    bool is_zero(int n) const;
    bool degrees_consistent() const;
};

// Components f_(k) : C -> C'^{(x)k} of degree k-1.
struct AInftyMorphism {
    std::map<int, std::vector<Tensor>> components;

    const Tensor& component(int k, std::size_t x) const;
    static AInftyMorphism identity(const GradedBasis& space);
};

struct IdentityReport {
    bool ok = true;
    std::vector<int> failing;  // arities whose identity fails
    int max_failing() const { return failing.empty() ? 0 : failing.back(); }
};

// Coalgebra:  sum_{i,j} (-1)^{i+j+ij} (1^{n-i-j} (x) Delta_i (x) 1^j) Delta_{n-i+1} = 0.
// Algebra:    sum_{r+s+t=n} (-1)^{r+st} mu_{r+1+t} (1^r (x) mu_s (x) 1^t) = 0.
// Koszul rule: g placed after x_1..x_a picks up (-1)^{|g|(|x_1|+...+|x_a|)}.
IdentityReport verify_stasheff(const AInftyCoalgebra& s, int n_max);
IdentityReport verify_stasheff(const AInftyAlgebra& s, int n_max);
Tensor stasheff_defect(const AInftyCoalgebra& s, int n, std::size_t x);

// f : (C, Delta) -> (C', Delta'), checked for i <= i_max:
//   sum_{p+q+k=i} (-1)^{p+kq} (1^p (x) Delta'_q (x) 1^k) f_(p+k+1)
//     = sum_{k_1+...+k_l=i} (-1)^{sum_{a<b} k_b (k_a - 1)} (f_(k_1) (x) ... (x) f_(k_l)) Delta_l.
IdentityReport verify_morphism(const AInftyMorphism& f, const AInftyCoalgebra& src, const AInftyCoalgebra& tgt, int i_max);

// Cobar differential on generators s^{-1}x (degree |x|-1):
//   d_n = -(s^{-1})^{(x)n} o Delta_n o s,
// where (s^{-1})^{(x)n} on x_0 (x) ... (x) x_{n-1} carries (-1)^{sum_l (n-1-l)|x_l|}.
struct CobarComplex {
    GradedBasis generators;
    int word_bound = 4;
    std::map<int, std::vector<Tensor>> d;

    const Tensor& component(int n, std::size_t x) const;
};

CobarComplex cobar(const AInftyCoalgebra& s, int word_bound);
// Word-length-L part of d^2 on each generator, for L <= word_bound.
IdentityReport cobar_d_squared_check(const CobarComplex& cb);
Tensor cobar_d_squared(const CobarComplex& cb, int word_length, std::size_t x);
// Inverse of cobar(): recovers Delta_n from d_n.
AInftyCoalgebra structure_from_cobar(const CobarComplex& cb, const GradedBasis& space);

// The structure s' making g : s -> s' an A-infinity isomorphism, solved arity by arity.
AInftyCoalgebra transport_structure(const AInftyCoalgebra& s, const AInftyMorphism& g, int n_max);

// Smallest n >= 2 with Delta_n != 0 within the arity bound; nullopt stands for infinity.
std::optional<int> min_nonzero_arity(const AInftyCoalgebra& s);
// dim Ker of Delta_n restricted to degree p, or to all degrees.
std::size_t dim_ker_op(const AInftyCoalgebra& s, int n, int p);
std::size_t dim_ker_op_total(const AInftyCoalgebra& s, int n);
// Matrix of Delta_n on degree p; rows are the words in first-seen order.
SparseMatrix op_block_matrix(const AInftyCoalgebra& s, int n, int p);
AInftyCoalgebra truncate_to_arity(const AInftyCoalgebra& s, int k);
// Structure on reduced homology of a connected space: drops the single degree-0
// class and every term containing it.
AInftyCoalgebra reduced_coalgebra(const AInftyCoalgebra& s);

}  // namespace ainf
