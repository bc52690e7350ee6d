#pragma once

#include <array>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ainf/simplicial.hpp"
#include "ainf/sparse.hpp"
#include "json.hpp"

namespace ainf {

using Point3 = std::array<mpq_class, 3>;

// Closed polygonal curves in the unit cube; the last vertex joins the first.
struct LinkSpec {
    std::string name;
    std::vector<std::vector<Point3>> curves;
    mpq_class tube_radius;
    int resolution = 8;
};

// {"name"?, "curves": [[[x,y,z],...],...], "tube_radius": "r", "resolution": R};
// coordinates are exact decimal or fraction strings (plain numbers also accepted).
LinkSpec link_spec_from_json(const nlohmann::json& j);
LinkSpec load_link_spec(const std::string& path);
nlohmann::json to_json(const LinkSpec& s);

// Triangulated S^3 minus open tubes around the curves: the unit cube cut into
// R^3 cells, each split into the six Kuhn tetrahedra, cells within the tube radius
// of a curve removed, and the cube boundary coned off to one extra vertex.
struct LinkComplement {
    SimplicialComplex complex;
    int resolution = 0;
    std::size_t removed_cells = 0;
    // Per component, a closed edge path (vertex cycle) linking that component once.
    std::vector<std::vector<Vertex>> meridians;
};

// Throws PreconditionError when tubes touch each other or the cube boundary, or
// when some component has no axis-parallel segment to place a meridian on.
LinkComplement build_link_complement(const LinkSpec& spec);
LinkComplement build_link_complement(const LinkSpec& spec, int resolution);

// The 1-chain of a vertex cycle in the basis of k's edges.
SparseVec cycle_chain(const SimplicialComplex& k, const std::vector<Vertex>& loop, const Field& f);

// Canned specs. Coordinates are multiples of 1/24 so that curves run through
// cell centres at resolution 12.
LinkSpec unlink_spec(int components);
LinkSpec hopf_spec();
LinkSpec borromean_spec();
// The three circles of the (1,1,1) sphere link, short sides first.
LinkSpec sphere_triple_spec();

}  // namespace ainf
