#include "levels.hpp"

namespace ainf::detail {

std::vector<std::size_t> Level::classes(int p) const {
    std::vector<std::size_t> out;
    for (std::size_t h = 0; h < red->homology_dim(); ++h)
        if (red->homology_degree(h) == p) out.push_back(h);
    return out;
}

Level make_level(const Filtration& f, std::size_t i, const Field& field) {
    Level l;
    l.k = f.subcomplex(i, &l.original);
    l.local.resize(l.original.size());
    for (std::size_t d = 0; d < l.original.size(); ++d)
        for (std::size_t a = 0; a < l.original[d].size(); ++a) l.local[d][l.original[d][a]] = a;
    l.chains = chain_complex(l.k, field);
    l.red = std::make_unique<HomologyReduction>(l.chains);
    return l;
}

SparseMatrix induced_map(const Level& a, const Level& b, int p, const Field& field) {
    auto ca = a.classes(p), cb = b.classes(p);
    SparseMatrix m(cb.size(), ca.size(), field);
    if (ca.empty() || cb.empty()) return m;
    std::vector<std::int64_t> position(b.red->homology_dim(), -1);
    for (std::size_t x = 0; x < cb.size(); ++x) position[cb[x]] = static_cast<std::int64_t>(x);
    const std::size_t off_a = a.chains.offset(p), off_b = b.chains.offset(p);
    const auto pd = static_cast<std::size_t>(p);
    for (std::size_t c = 0; c < ca.size(); ++c) {
        std::vector<Entry> chain;
        for (const auto& e : a.red->include(ca[c])) {
            std::size_t orig = a.original[pd][e.idx - off_a];
            chain.push_back({static_cast<Index>(off_b + b.local[pd].at(orig)), e.val});
        }
        SparseVec col;
        for (const auto& e : b.red->project(canonical(std::move(chain)))) {
            auto pos = position[e.idx];
            if (pos >= 0) col.push_back({static_cast<Index>(pos), e.val});
        }
        m.set_column(c, canonical(std::move(col)));
    }
    return m;
}

}  // namespace ainf::detail
