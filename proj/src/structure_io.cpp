#include "ainf/structure_io.hpp"

#include <fstream>

namespace ainf {

using nlohmann::json;

namespace {

json header(const char* kind, const GradedBasis& b, int arity_bound) {
    if (!b.is_sorted()) throw PreconditionError("structure JSON needs a basis sorted by degree");
    json j;
    j["kind"] = kind;
    j["field"] = b.field.name();
    j["arity_bound"] = arity_bound;
    json dims = json::object(), labels = json::object();
    for (int p : b.distinct_degrees()) {
        dims[std::to_string(p)] = b.dim(p);
        json lab = json::array();
        for (auto i : b.indices_of_degree(p)) lab.push_back(i < b.labels.size() ? b.labels[i] : "x" + std::to_string(i));
        labels[std::to_string(p)] = lab;
    }
    j["dims"] = dims;
    j["labels"] = labels;
    return j;
}

bool is_count(const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); }

int parse_degree(const std::string& key) {
    try {
        std::size_t used = 0;
        int p = std::stoi(key, &used);
        if (used != key.size()) throw ParseError("bad degree key '" + key + "'");
        return p;
    } catch (const std::logic_error&) {
        throw ParseError("bad degree key '" + key + "'");
    }
}

struct Header {
    GradedBasis space;
    int arity_bound = 4;
    std::map<int, std::uint32_t> first;  // degree -> global index of its first element
};

Header read_header(const json& j) {
    Header h;
    try {
        h.space.field = Field::parse(j.at("field").get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("structure: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (!j.contains("dims") || !j["dims"].is_object()) throw ParseError("structure: missing dims object");
    std::map<int, std::size_t> dims;
    for (const auto& [k, v] : j["dims"].items()) {
        if (!is_count(v)) throw ParseError("structure: dims must be non-negative integers");
        dims[parse_degree(k)] = v.get<std::size_t>();
    }
    for (const auto& [p, k] : dims) {
        h.first[p] = static_cast<std::uint32_t>(h.space.size());
        std::vector<std::string> labels;
        if (j.contains("labels") && j["labels"].contains(std::to_string(p))) {
            try {
                labels = j["labels"][std::to_string(p)].get<std::vector<std::string>>();
            } catch (const json::exception& e) {
                throw ParseError(std::string("structure: bad labels: ") + e.what());
            }
            if (labels.size() != k) throw ParseError("structure: label count differs from dims in degree " + std::to_string(p));
        }
        for (std::size_t i = 0; i < k; ++i) {
            h.space.degrees.push_back(p);
            h.space.labels.push_back(i < labels.size() ? labels[i] : "x" + std::to_string(h.space.size() - 1));
        }
    }
    if (j.contains("arity_bound")) {
        if (!j["arity_bound"].is_number_integer()) throw ParseError("structure: arity_bound must be an integer");
        h.arity_bound = j["arity_bound"].get<int>();
        if (h.arity_bound < 2) throw ParseError("structure: arity_bound must be at least 2");
    }
    return h;
}

Scalar read_coef(const json& c, const Field& f) {
    try {
        if (c.is_string()) return f.parse_scalar(c.get<std::string>());
        if (c.is_number_integer()) return f.from_int(c.get<long long>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    throw ParseError("structure: coefficients must be strings or integers");
}

std::uint32_t read_index(const json& v, std::size_t bound, const char* what) {
    if (!is_count(v) || v.get<std::size_t>() >= bound) throw ParseError(std::string("structure: ") + what + " out of range");
    return v.get<std::uint32_t>();
}

Word read_word(const json& v, std::size_t bound) {
    if (!v.is_array()) throw ParseError("structure: expected an index list");
    Word w;
    for (const auto& x : v) w.push_back(read_index(x, bound, "word index"));
    return w;
}

const json& ops_of(const json& j) {
    static const json empty = json::array();
    if (!j.contains("ops")) return empty;
    if (!j["ops"].is_array()) throw ParseError("structure: ops must be an array");
    return j["ops"];
}

}  // namespace

json to_json(const AInftyCoalgebra& s) {
    json j = header("coalgebra", s.space, s.arity_bound);
    json ops = json::array();
    for (const auto& [n, v] : s.ops) {
        if (s.is_zero(n)) continue;
        json blocks = json::array();
        for (int p : s.space.distinct_degrees()) {
            json entries = json::array();
            auto idx = s.space.indices_of_degree(p);
            for (std::size_t local = 0; local < idx.size(); ++local)
                for (const auto& [w, c] : s.op(n, idx[local])) entries.push_back(json::array({local, w, c.str()}));
            if (!entries.empty()) blocks.push_back({{"src_degree", p}, {"entries", entries}});
        }
        ops.push_back({{"n", n}, {"blocks", blocks}});
    }
    j["ops"] = ops;
    return j;
}

json to_json(const AInftyAlgebra& s) {
    json j = header("algebra", s.space, s.arity_bound);
    json ops = json::array();
    for (const auto& [n, m] : s.ops) {
        if (m.empty()) continue;
        std::map<int, json> by_target;
        for (const auto& [w, v] : m)
            for (const auto& e : v) {
                int p = s.space.degrees[e.idx];
                auto idx = s.space.indices_of_degree(p);
                std::size_t local = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), e.idx) - idx.begin());
                by_target[p].push_back(json::array({w, local, e.val.str()}));
            }
        json blocks = json::array();
        for (auto& [p, entries] : by_target) blocks.push_back({{"tgt_degree", p}, {"entries", entries}});
        ops.push_back({{"n", n}, {"blocks", blocks}});
    }
    j["ops"] = ops;
    return j;
}

AInftyCoalgebra coalgebra_from_json(const json& j) {
    Header h = read_header(j);
    AInftyCoalgebra s;
    s.space = h.space;
    s.arity_bound = h.arity_bound;
    const Field& f = s.space.field;
    for (const auto& op : ops_of(j)) {
        if (!op.contains("n") || !op["n"].is_number_integer()) throw ParseError("structure: op without arity");
        int n = op["n"].get<int>();
        if (n < 1) throw ParseError("structure: arity must be positive");
        if (!op.contains("blocks") || !op["blocks"].is_array()) throw ParseError("structure: op without blocks");
        for (const auto& blk : op["blocks"]) {
            if (!blk.contains("src_degree") || !blk["src_degree"].is_number_integer()) throw ParseError("structure: block without src_degree");
            int p = blk["src_degree"].get<int>();
            if (!h.first.count(p)) throw ParseError("structure: block for an empty degree");
            std::size_t dim = s.space.dim(p);
            if (!blk.contains("entries") || !blk["entries"].is_array()) throw ParseError("structure: block without entries");
            for (const auto& e : blk["entries"]) {
                if (!e.is_array() || e.size() != 3) throw ParseError("structure: entries are [src, [tgt...], coef]");
                std::uint32_t x = h.first[p] + read_index(e[0], dim, "source index");
                Word w = read_word(e[1], s.space.size());
                if (static_cast<int>(w.size()) != n) throw ParseError("structure: target word length differs from n");
                Tensor t = s.op(n, x);
                accumulate(t, w, read_coef(e[2], f));
                s.set_op(n, x, std::move(t));
            }
        }
    }
    if (!s.degrees_consistent()) throw ParseError("structure: an operation has the wrong degree");
    return s;
}

AInftyAlgebra algebra_from_json(const json& j) {
    Header h = read_header(j);
    AInftyAlgebra s;
    s.space = h.space;
    s.arity_bound = h.arity_bound;
    const Field& f = s.space.field;
    for (const auto& op : ops_of(j)) {
        if (!op.contains("n") || !op["n"].is_number_integer()) throw ParseError("structure: op without arity");
        int n = op["n"].get<int>();
        if (n < 1) throw ParseError("structure: arity must be positive");
        if (!op.contains("blocks") || !op["blocks"].is_array()) throw ParseError("structure: op without blocks");
        for (const auto& blk : op["blocks"]) {
            if (!blk.contains("tgt_degree") || !blk["tgt_degree"].is_number_integer()) throw ParseError("structure: block without tgt_degree");
            int p = blk["tgt_degree"].get<int>();
            if (!h.first.count(p)) throw ParseError("structure: block for an empty degree");
            std::size_t dim = s.space.dim(p);
            if (!blk.contains("entries") || !blk["entries"].is_array()) throw ParseError("structure: block without entries");
            for (const auto& e : blk["entries"]) {
                if (!e.is_array() || e.size() != 3) throw ParseError("structure: entries are [[src...], tgt, coef]");
                Word w = read_word(e[0], s.space.size());
                if (static_cast<int>(w.size()) != n) throw ParseError("structure: source word length differs from n");
                Index y = h.first[p] + read_index(e[1], dim, "target index");
                SparseVec v = s.op(n, w);
                axpy(v, read_coef(e[2], f), unit_vector(y, f));
                s.set_op(n, w, in_field(v, f));
            }
        }
    }
    if (!s.degrees_consistent()) throw ParseError("structure: an operation has the wrong degree");
    return s;
}

AnyStructure structure_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("structure: expected a JSON object");
    std::string kind = j.value("kind", "coalgebra");
    if (kind == "coalgebra") return coalgebra_from_json(j);
    if (kind == "algebra") return algebra_from_json(j);
    throw ParseError("structure: unknown kind '" + kind + "'");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

AnyStructure load_structure(const std::string& path) { return structure_from_json(read_json_file(path)); }

}  // namespace ainf
