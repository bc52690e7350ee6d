#include "ainf/persist.hpp"

#include <algorithm>

#include "levels.hpp"

namespace ainf {

using nlohmann::json;

void PersistenceModule::validate() const {
    if (dims.empty()) {
        if (!maps.empty()) throw PreconditionError("persistence module: maps without spaces");
        return;
    }
    if (maps.size() + 1 != dims.size()) throw PreconditionError("persistence module: need one map between consecutive spaces");
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].cols() != dims[i] || maps[i].rows() != dims[i + 1])
            throw PreconditionError("persistence module: map " + std::to_string(i) + " has the wrong shape");
}

RankTable ranks_table(const PersistenceModule& m) {
    m.validate();
    const std::size_t n = m.dims.size();
    RankTable d(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = static_cast<long long>(m.dims[i]);
        SparseMatrix acc = SparseMatrix::identity(m.dims[i], m.field);
        for (std::size_t j = i + 1; j < n; ++j) {
            acc = m.maps[j - 1] * acc;
            d[i][j] = static_cast<long long>(rank(acc));
            // once the composite vanishes it stays zero
            if (d[i][j] == 0) break;
        }
    }
    return d;
}

long long rank_entry(const RankTable& d, long long i, long long j) {
    const long long n = static_cast<long long>(d.size());
    if (i < 0 || j < 0 || i >= n || j >= n || i > j) return 0;
    return d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

long long Barcode::multiplicity(std::size_t birth, std::size_t last) const {
    for (const auto& iv : intervals)
        if (iv.birth == birth && iv.last == last) return iv.multiplicity;
    return 0;
}

long long Barcode::total() const {
    long long t = 0;
    for (const auto& iv : intervals) t += iv.multiplicity;
    return t;
}

long long Barcode::covering(std::size_t i, std::size_t j) const {
    long long t = 0;
    for (const auto& iv : intervals)
        if (iv.birth <= i && iv.last >= j) t += iv.multiplicity;
    return t;
}

Barcode barcode_from_ranks(const RankTable& d, Flavor flavor) {
    Barcode b;
    b.flavor = flavor;
    const long long n = static_cast<long long>(d.size());
    b.last_index = n ? static_cast<std::size_t>(n - 1) : 0;
    for (long long i = 0; i < n; ++i)
        for (long long j = i; j < n; ++j) {
            long long m = rank_entry(d, i, j) - rank_entry(d, i - 1, j) - rank_entry(d, i, j + 1) + rank_entry(d, i - 1, j + 1);
            if (m < 0)
                throw ConsistencyError("negative multiplicity " + std::to_string(m) + " for [" + std::to_string(i) + ", " +
                                       std::to_string(j) + "]: not the rank table of a persistence module");
            if (m > 0) b.intervals.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), m});
        }
    return b;
}

RankTable ranks_from_barcode(const Barcode& b) {
    const std::size_t n = b.last_index + 1;
    RankTable d(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) d[i][j] = b.covering(i, j);
    return d;
}

bool counting_property_holds(const Barcode& b, const RankTable& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i; j < d.size(); ++j)
            if (b.covering(i, j) != d[i][j]) return false;
    return true;
}

json to_json(const Barcode& b) {
    json out = json::array();
    for (const auto& iv : b.intervals) {
        json e;
        e["degree"] = b.degree;
        e["birth"] = iv.birth;
        if (b.flavor == Flavor::Closed) e["death"] = iv.last;
        else if (iv.last == b.last_index) e["death"] = nullptr;
        else e["death"] = iv.last + 1;
        e["multiplicity"] = iv.multiplicity;
        e["flavor"] = b.flavor == Flavor::Closed ? "closed" : "half-open";
        e["kind"] = b.kind;
        out.push_back(e);
    }
    return out;
}

json to_json(const std::vector<Barcode>& bs) {
    json out = json::array();
    for (const auto& b : bs)
        for (auto& e : to_json(b)) out.push_back(e);
    return out;
}

PersistenceModule homology_module(const Filtration& f, int p, const Field& field) {
    if (p < 0) throw PreconditionError("homology degree must be non-negative");
    PersistenceModule m;
    m.field = field;
    if (f.complex().empty()) return m;
    std::vector<detail::Level> levels;
    for (std::size_t i = 0; i <= f.max_level(); ++i) {
        levels.push_back(detail::make_level(f, i, field));
        m.dims.push_back(levels.back().classes(p).size());
        if (i > 0) m.maps.push_back(detail::induced_map(levels[i - 1], levels[i], p, field));
    }
    return m;
}

std::size_t persistent_betti(const Filtration& f, int p, std::size_t i, std::size_t j, const Field& field) {
    if (i > j || j > f.max_level()) throw PreconditionError("persistent_betti: need i <= j <= N");
    PersistenceModule m = homology_module(f, p, field);
    if (m.dims.empty()) return 0;
    return static_cast<std::size_t>(ranks_table(m)[i][j]);
}

Barcode homology_barcode(const Filtration& f, int p, const Field& field) {
    PersistenceModule m = homology_module(f, p, field);
    Barcode b = barcode_from_ranks(ranks_table(m), Flavor::HalfOpen);
    b.degree = p;
    b.kind = "H";
    return b;
}

long long frobenius_defect(const SparseMatrix& a, const SparseMatrix& b, const SparseMatrix& c) {
    if (a.cols() != b.rows() || b.cols() != c.rows()) throw PreconditionError("frobenius_defect: shapes do not compose");
    SparseMatrix ab = a * b;
    long long v = static_cast<long long>(rank(b)) - static_cast<long long>(rank(ab)) - static_cast<long long>(rank(b * c)) +
                  static_cast<long long>(rank(ab * c));
    if (v < 0) throw ConsistencyError("Frobenius inequality violated");
    return v;
}

}  // namespace ainf
