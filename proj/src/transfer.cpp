#include "ainf/transfer.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ainf {

namespace {

Scalar sign_of(long long e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }

class CoalgebraTransfer {
public:
    CoalgebraTransfer(const ContractionOps& c, const Coproduct& diag) : c_(c), diag_(diag) {
        const ChainComplex& big = c.big();
        deg_.resize(big.total_dim());
        for (std::size_t i = 0; i < deg_.size(); ++i) deg_[i] = big.degree_of(i);
    }

    // pi^{(x)n} omega_n applied to the basis element m.
    Tensor omega(int n, std::size_t m) {
        Tensor out;
        if (m >= diag_.terms.size()) return out;
        for (int s = 1; s < n; ++s) {
            int t = n - s;
            Scalar cst = sign_of(t + 1);
            for (const auto& term : diag_.terms[m]) {
                const Tensor& left = f(s, term.left);
                if (left.empty()) continue;
                const Tensor& right = f(t, term.right);
                if (right.empty()) continue;
                Scalar c = cst * term.coef * sign_of(static_cast<long long>(t - 1) * deg_[term.left]);
                for (const auto& [lw, lc] : left)
                    for (const auto& [rw, rc] : right) {
                        Word w = lw;
                        w.insert(w.end(), rw.begin(), rw.end());
                        accumulate(out, w, c * lc * rc);
                    }
            }
        }
        return out;
    }

private:
    const Tensor& f(int s, std::size_t sigma) {
        auto key = std::make_pair(s, sigma);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Tensor r;
        const Field& fld = c_.big().field;
        SparseVec e = unit_vector(static_cast<Index>(sigma), fld);
        if (s == 1) {
            for (const auto& x : c_.project(e)) accumulate(r, Word{x.idx}, -x.val);
        } else {
            for (const auto& x : c_.homotopy(e)) accumulate(r, omega(s, x.idx), -x.val);
        }
        return memo_.emplace(key, std::move(r)).first->second;
    }

    const ContractionOps& c_;
    const Coproduct& diag_;
    std::vector<int> deg_;
    std::map<std::pair<int, std::size_t>, Tensor> memo_;
};

GradedBasis homology_basis(const ContractionOps& c) {
    GradedBasis b;
    b.field = c.big().field;
    std::map<int, int> seen;
    for (std::size_t h = 0; h < c.homology_dim(); ++h) {
        int p = c.homology_degree(h);
        b.degrees.push_back(p);
        b.labels.push_back("H" + std::to_string(p) + "_" + std::to_string(seen[p]++));
    }
    return b;
}

}  // namespace

AInftyCoalgebra transfer_coalgebra_unchecked(const ContractionOps& c, const Coproduct& diag, int n_max) {
    if (n_max < 2) throw PreconditionError("transfer_coalgebra: arity bound must be at least 2");
    AInftyCoalgebra out;
    out.space = homology_basis(c);
    out.arity_bound = n_max;
    CoalgebraTransfer tr(c, diag);
    const std::size_t nh = c.homology_dim();
    for (int n = 2; n <= n_max; ++n) {
        std::vector<Tensor> op(nh);
        bool any = false;
        for (std::size_t h = 0; h < nh; ++h) {
            for (const auto& x : c.include(h)) accumulate(op[h], tr.omega(n, x.idx), x.val);
            any = any || !op[h].empty();
        }
        if (any) out.ops[n] = std::move(op);
    }
    return out;
}

AInftyCoalgebra transfer_coalgebra(const ContractionOps& c, const Coproduct& diag, int n_max) {
    if (diag.terms.size() != c.big().total_dim())
        throw PreconditionError("transfer_coalgebra: comultiplication does not match the complex");
    if (!is_coassociative(diag, c.big().field)) throw PreconditionError("transfer_coalgebra: comultiplication is not coassociative");
    if (!is_chain_map(diag, c.big())) throw PreconditionError("transfer_coalgebra: comultiplication is not a chain map");
    return transfer_coalgebra_unchecked(c, diag, n_max);
}

AInftyCoalgebra transfer_coalgebra(const Contraction& c, const Coproduct& diag, int n_max) {
    ExplicitContractionOps ops(c);
    return transfer_coalgebra(ops, diag, n_max);
}

AlgebraTransfer::AlgebraTransfer(const ContractionOps& c, CochainProduct product) : c_(&c), product_(std::move(product)) {
    const std::size_t nh = c.homology_dim();
    order_.resize(nh);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return c.homology_degree(a) > c.homology_degree(b); });
    space_.field = c.big().field;
    std::map<int, int> seen;
    for (auto h : order_) {
        int q = -c.homology_degree(h);
        space_.degrees.push_back(q);
        space_.labels.push_back("H^" + std::to_string(q) + "_" + std::to_string(seen[q]++));
        reps_.push_back(c.include(h));
    }
}

SparseVec AlgebraTransfer::representative(std::size_t h) const { return reps_.at(h); }

SparseVec AlgebraTransfer::project(const SparseVec& cochain) const {
    std::vector<std::size_t> pos(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    std::vector<Entry> out;
    for (const auto& e : c_->project(cochain)) out.push_back({static_cast<Index>(pos[e.idx]), e.val});
    return canonical(std::move(out));
}

SparseVec AlgebraTransfer::lambda(const Word& w) {
    const int n = static_cast<int>(w.size());
    SparseVec out;
    int lead = 0;
    for (int s = 1; s < n; ++s) {
        int t = n - s;
        lead += space_.degrees[w[static_cast<std::size_t>(s - 1)]];
        Word a(w.begin(), w.begin() + s), b(w.begin() + s, w.end());
        const SparseVec& ga = g_lambda(a);
        if (ga.empty()) continue;
        const SparseVec& gb = g_lambda(b);
        if (gb.empty()) continue;
        axpy(out, sign_of(s + 1) * sign_of(static_cast<long long>(t - 1) * lead), product_(ga, gb));
    }
    return out;
}

const SparseVec& AlgebraTransfer::g_lambda(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    SparseVec r;
    if (w.size() == 1) {
        r = scaled(reps_.at(w[0]), Scalar(-1));
    } else {
        // output degree of lambda_s is sum|x| + 2 - s; G lowers it by one more
        int top = 0;
        for (const auto& [p, k] : c_->big().dims)
            if (k > 0) top = std::max(top, -p);
        int out_deg = space_.word_degree(w) + 1 - static_cast<int>(w.size());
        if (out_deg >= 0 && out_deg <= top) r = scaled(c_->homotopy(lambda(w)), Scalar(-1));
    }
    return memo_.emplace(w, std::move(r)).first->second;
}

SparseVec AlgebraTransfer::mu(const Word& w) {
    if (w.size() < 2) return {};
    return project(lambda(w));
}

AInftyAlgebra AlgebraTransfer::structure(int n_max) {
    if (n_max < 2) throw PreconditionError("transfer_algebra: arity bound must be at least 2");
    AInftyAlgebra out;
    out.space = space_;
    out.arity_bound = n_max;
    const std::size_t nh = space_.size();
    std::set<int> present(space_.degrees.begin(), space_.degrees.end());
    for (int n = 2; n <= n_max; ++n) {
        if (nh == 0) break;
        Word w(static_cast<std::size_t>(n), 0);
        while (true) {
            if (present.count(space_.word_degree(w) + 2 - n)) {
                SparseVec v = mu(w);
                if (!v.empty()) out.set_op(n, w, std::move(v));
            }
            std::size_t pos = 0;
            while (pos < w.size() && ++w[pos] == nh) w[pos++] = 0;
            if (pos == w.size()) break;
        }
    }
    return out;
}

AInftyAlgebra transfer_algebra(const ContractionOps& c, CochainProduct product, int n_max) {
    AlgebraTransfer tr(c, std::move(product));
    return tr.structure(n_max);
}

CochainProduct cup_product_of(const CupProduct& cup) {
    return [&cup](const SparseVec& a, const SparseVec& b) { return cup.cup_global(a, b); };
}

}  // namespace ainf
