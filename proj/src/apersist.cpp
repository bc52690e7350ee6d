#include "ainf/apersist.hpp"

#include "ainf/structure_io.hpp"
#include "ainf/transfer.hpp"
#include "levels.hpp"

namespace ainf {

using nlohmann::json;

void APersistenceInput::validate() const {
    if (n < 1) throw PreconditionError("A-infinity persistence: arity must be positive");
    if (!structures.empty() && maps.size() + 1 != structures.size())
        throw PreconditionError("A-infinity persistence: need one map between consecutive structures");
    if (structures.empty() && !maps.empty()) throw PreconditionError("A-infinity persistence: maps without structures");
    for (const auto& s : structures)
        if (s.space.field != field) throw PreconditionError("A-infinity persistence: structures over different fields");
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (const auto& [p, m] : maps[i].blocks)
            if (m.cols() != structures[i].space.dim(p) || m.rows() != structures[i + 1].space.dim(p))
                throw PreconditionError("A-infinity persistence: map " + std::to_string(i) + " has the wrong shape in degree " +
                                        std::to_string(p));
}

std::size_t APersistenceInput::dim(std::size_t i) const { return structures.at(i).space.dim(degree); }

SparseMatrix APersistenceInput::map_block(std::size_t i) const {
    return maps.at(i).block(degree, dim(i), dim(i + 1), field);
}

SparseMatrix APersistenceInput::delta_block(std::size_t i) const { return op_block_matrix(structures.at(i), n, degree); }

namespace {

Subspace kernel_or_full(const SparseMatrix& m) {
    if (m.is_zero()) return Subspace::full(m.cols(), m.field());
    return kernel_basis(m);
}

void check_range(const APersistenceInput& inp, std::size_t i, std::size_t j) {
    if (inp.structures.empty() || i > j || j > inp.last_index())
        throw PreconditionError("delta_group_dim: need i <= j <= N");
}

// D^{i,j} for j = i..N at once: the kernel intersection only shrinks as j grows.
std::vector<long long> delta_row(const APersistenceInput& inp, std::size_t i) {
    const std::size_t last = inp.last_index();
    std::vector<long long> row;
    SparseMatrix f = SparseMatrix::identity(inp.dim(i), inp.field);
    Subspace w = Subspace::full(inp.dim(i), inp.field);
    for (std::size_t j = i; j <= last; ++j) {
        if (j > i) f = inp.map_block(j - 1) * f;
        if (w.dim() > 0) w = intersect(w, kernel_or_full(inp.delta_block(j) * f));
        row.push_back(w.dim() ? static_cast<long long>(rank(restrict_map(f, w))) : 0);
    }
    return row;
}

Barcode tag(Barcode b, const APersistenceInput& inp) {
    b.degree = inp.degree;
    b.kind = "Delta";
    return b;
}

}  // namespace

std::size_t delta_group_dim(const APersistenceInput& inp, std::size_t i, std::size_t j) {
    inp.validate();
    check_range(inp, i, j);
    return static_cast<std::size_t>(delta_row(inp, i).at(j - i));
}

RankTable delta_table(const APersistenceInput& inp) {
    inp.validate();
    const std::size_t n = inp.structures.size();
    RankTable d(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        auto row = delta_row(inp, i);
        for (std::size_t j = i; j < n; ++j) d[i][j] = row[j - i];
    }
    return d;
}

Barcode delta_barcode(const APersistenceInput& inp) {
    if (inp.structures.empty()) return tag(Barcode{0, 0, Flavor::Closed, "Delta", {}}, inp);
    return tag(barcode_from_ranks(delta_table(inp), Flavor::Closed), inp);
}

CompatibilityReport compatibility_check(const APersistenceInput& inp) {
    inp.validate();
    CompatibilityReport r;
    for (std::size_t i = 0; i + 1 < inp.structures.size(); ++i) {
        Subspace k = kernel_or_full(inp.delta_block(i));
        SparseMatrix next = inp.delta_block(i + 1) * inp.map_block(i);
        for (std::size_t c = 0; c < k.dim(); ++c)
            if (!next.apply(k.basis().column(c)).empty()) {
                r.ok = false;
                r.index = i;
                r.witness = k.basis().column(c);
                return r;
            }
    }
    return r;
}

Barcode kernel_submodule_barcode(const APersistenceInput& inp) {
    inp.validate();
    if (inp.structures.empty()) return tag(Barcode{0, 0, Flavor::Closed, "Delta", {}}, inp);
    std::vector<Subspace> ker;
    for (std::size_t i = 0; i < inp.structures.size(); ++i) ker.push_back(kernel_or_full(inp.delta_block(i)));
    PersistenceModule g;
    g.field = inp.field;
    for (const auto& k : ker) g.dims.push_back(k.dim());
    for (std::size_t i = 0; i + 1 < ker.size(); ++i) {
        SparseMatrix img = restrict_map(inp.map_block(i), ker[i]);
        SparseMatrix gi(ker[i + 1].dim(), ker[i].dim(), inp.field);
        for (std::size_t c = 0; c < img.cols(); ++c) {
            auto coords = ker[i + 1].coordinates(img.column(c));
            if (!coords) throw PreconditionError("kernel_submodule_barcode: f maps Ker Delta^" + std::to_string(i) + " outside Ker Delta^" +
                                                 std::to_string(i + 1));
            gi.set_column(c, *coords);
        }
        g.maps.push_back(std::move(gi));
    }
    return tag(barcode_from_ranks(ranks_table(g), Flavor::Closed), inp);
}

std::vector<std::size_t> KernelPattern::support() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < in_kernel.size(); ++k)
        if (in_kernel[k]) out.push_back(start + k);
    return out;
}

bool KernelPattern::contiguous() const {
    auto s = support();
    for (std::size_t a = 1; a < s.size(); ++a)
        if (s[a] != s[a - 1] + 1) return false;
    return true;
}

std::vector<KernelPattern> kernel_patterns(const APersistenceInput& inp) {
    inp.validate();
    std::vector<KernelPattern> out;
    const std::size_t count = inp.structures.size();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t d = inp.dim(i);
        SparseMatrix span = i > 0 ? inp.map_block(i - 1) : SparseMatrix(d, 0, inp.field);
        std::size_t r = rank(span);
        for (std::size_t a = 0; a < d && r < d; ++a) {
            SparseVec e = unit_vector(static_cast<Index>(a), inp.field);
            SparseMatrix trial = span.hconcat(SparseMatrix::from_columns(d, {e}, inp.field));
            if (rank(trial) == r) continue;
            span = std::move(trial);
            ++r;
            KernelPattern k;
            k.start = i;
            k.cls = e;
            SparseVec v = e;
            for (std::size_t j = i; j < count; ++j) {
                if (j > i) v = inp.map_block(j - 1).apply(v);
                bool alive = !v.empty();
                k.alive.push_back(alive);
                k.in_kernel.push_back(alive && inp.delta_block(j).apply(v).empty());
            }
            out.push_back(std::move(k));
        }
    }
    return out;
}

std::vector<KernelPattern> sleep_wake_diagnostic(const APersistenceInput& inp) {
    std::vector<KernelPattern> out;
    for (auto& k : kernel_patterns(inp))
        if (!k.contiguous()) out.push_back(std::move(k));
    return out;
}

APersistenceInput apersistence_from_filtration(const Filtration& f, int p, int n, const Field& field) {
    if (p < 0) throw PreconditionError("homology degree must be non-negative");
    if (n < 2) throw PreconditionError("arity must be at least 2");
    APersistenceInput inp;
    inp.field = field;
    inp.degree = p;
    inp.n = n;
    if (f.complex().empty()) return inp;
    std::vector<detail::Level> levels;
    for (std::size_t i = 0; i <= f.max_level(); ++i) {
        levels.push_back(detail::make_level(f, i, field));
        const auto& lv = levels.back();
        AInftyCoalgebra s = transfer_coalgebra(*lv.red, aw_diagonal(lv.k, field), n);
        for (auto& [arity, op] : s.ops)
            for (auto& t : op)
                std::erase_if(t, [&](const auto& term) {
                    for (auto x : term.first)
                        if (s.space.degrees[x] == 0) return true;
                    return false;
                });
        inp.structures.push_back(std::move(s));
        if (i > 0) {
            GradedMap g;
            for (int q = 0; q <= lv.k.max_dim(); ++q) g.blocks[q] = detail::induced_map(levels[i - 1], lv, q, field);
            inp.maps.push_back(std::move(g));
        }
    }
    return inp;
}

json to_json(const APersistenceInput& inp) {
    json j;
    j["field"] = inp.field.name();
    j["degree"] = inp.degree;
    j["n"] = inp.n;
    j["structures"] = json::array();
    for (const auto& s : inp.structures) j["structures"].push_back(to_json(s));
    j["maps"] = json::array();
    for (const auto& g : inp.maps) {
        json m = json::object();
        for (const auto& [p, block] : g.blocks) {
            json rows = json::array();
            for (const auto& r : block.to_dense()) {
                json row = json::array();
                for (const auto& c : r) row.push_back(c.str());
                rows.push_back(row);
            }
            m[std::to_string(p)] = rows;
        }
        j["maps"].push_back(m);
    }
    return j;
}

APersistenceInput apersistence_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("bundle: expected a JSON object");
    APersistenceInput inp;
    try {
        inp.field = Field::parse(j.at("field").get<std::string>());
        inp.degree = j.value("degree", 0);
        inp.n = j.value("n", 2);
        for (const auto& s : j.at("structures")) {
            json withfield = s;
            if (!withfield.contains("field")) withfield["field"] = inp.field.name();
            inp.structures.push_back(coalgebra_from_json(withfield));
        }
        for (const auto& m : j.value("maps", json::array())) {
            const std::size_t i = inp.maps.size();
            if (i + 1 >= inp.structures.size()) throw ParseError("bundle: more maps than gaps between structures");
            GradedMap g;
            for (const auto& [key, rows] : m.items()) {
                int p = std::stoi(key);
                std::size_t src = inp.structures[i].space.dim(p), tgt = inp.structures[i + 1].space.dim(p);
                if (rows.size() != tgt) throw ParseError("bundle: map " + std::to_string(i) + " has the wrong row count in degree " + key);
                std::vector<std::vector<Scalar>> dense;
                for (const auto& row : rows) {
                    if (row.size() != src) throw ParseError("bundle: map " + std::to_string(i) + " has the wrong column count in degree " + key);
                    dense.emplace_back();
                    for (const auto& c : row)
                        dense.back().push_back(c.is_string() ? inp.field.parse_scalar(c.get<std::string>()) : inp.field.from_int(c.get<long long>()));
                }
                g.blocks[p] = SparseMatrix::from_dense(dense, src, inp.field);
            }
            inp.maps.push_back(std::move(g));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bundle: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bundle: ") + e.what());
    }
    if (!inp.structures.empty() && inp.maps.size() + 1 != inp.structures.size())
        throw ParseError("bundle: need one map between consecutive structures");
    return inp;
}

json to_json(const KernelPattern& k) {
    json j;
    j["start"] = k.start;
    json cls = json::array();
    for (const auto& e : k.cls) cls.push_back(json::array({e.idx, e.val.str()}));
    j["class"] = cls;
    j["alive"] = k.alive;
    j["in_kernel"] = k.in_kernel;
    j["support"] = k.support();
    return j;
}

}  // namespace ainf
