#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "ainf/errors.hpp"

namespace ainf {

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

// Face-closed set of simplices; within each dimension simplices are sorted
// lexicographically and addressed by their position.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    // Sorts vertices of each simplex and adds all faces.
    static SimplicialComplex from_simplices(const std::vector<Simplex>& simplices);

    int max_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t count(int d) const;
    std::size_t size() const;
    bool empty() const { return by_dim_.empty(); }
    const std::vector<Simplex>& simplices(int d) const;
    const Simplex& simplex(int d, std::size_t i) const { return by_dim_.at(static_cast<std::size_t>(d)).at(i); }
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }
    long long euler_characteristic() const;
    std::vector<Vertex> vertices() const;

private:
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
};

// Monotone level function on a complex (levels 0..N).
class Filtration {
public:
    Filtration() = default;
    // levels[d][i] is the level of simplex(d, i); must be monotone under faces.
    Filtration(SimplicialComplex k, std::vector<std::vector<std::size_t>> levels);

    const SimplicialComplex& complex() const { return complex_; }
    std::size_t level(int d, std::size_t i) const { return levels_.at(static_cast<std::size_t>(d)).at(i); }
    std::size_t max_level() const { return max_level_; }
    // The subcomplex K_i together with, per dimension, the index in the full complex.
    SimplicialComplex subcomplex(std::size_t i, std::vector<std::vector<std::size_t>>* original_index = nullptr) const;

private:
    SimplicialComplex complex_;
    std::vector<std::vector<std::size_t>> levels_;
    std::size_t max_level_ = 0;
};

SimplicialComplex parse_complex(std::istream& in);
SimplicialComplex load_complex(const std::string& path);
// Missing faces get the smallest level among the listed simplices containing them;
// explicitly listed faces above a coface are rejected.
Filtration parse_filtration(std::istream& in);
Filtration load_filtration(const std::string& path);
void write_filtration(std::ostream& out, const Filtration& f);

// Exact point cloud: rational coordinates.
using Point = std::vector<mpq_class>;
std::vector<Point> parse_point_cloud(std::istream& in);
std::vector<Point> load_point_cloud(const std::string& path);

// Simplex enters at the first radius index l with all pairwise distances <= 2 r_l.
Filtration rips_filtration(const std::vector<Point>& points, const std::vector<mpq_class>& radii, int max_dim);

// Small named complexes used by tests and examples.
SimplicialComplex torus_7_vertex();
SimplicialComplex sphere_boundary(int dim);  // boundary of a (dim+1)-simplex
// S^1 v S^2 v S^1 as two hollow triangles and a hollow tetrahedron sharing vertex 0.
SimplicialComplex wedge_circle_sphere_circle();

}  // namespace ainf
