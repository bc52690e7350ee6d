#include "ainf/simplicial.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ainf/field.hpp"

namespace ainf {

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
    std::size_t h = s.size();
    for (Vertex v : s) h ^= std::hash<Vertex>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

namespace {

void add_faces(const Simplex& s, std::vector<std::set<Simplex>>& out) {
    // every nonempty subset of s
    std::size_t n = s.size();
    if (n > 20) throw std::invalid_argument("simplex too large");
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) f.push_back(s[i]);
        if (out.size() < f.size()) out.resize(f.size());
        out[f.size() - 1].insert(std::move(f));
    }
}

Simplex normalized(Simplex s) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("simplex with repeated vertex");
    return s;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

SimplicialComplex SimplicialComplex::from_simplices(const std::vector<Simplex>& simplices) {
    std::vector<std::set<Simplex>> sets;
    for (const auto& s : simplices) {
        if (s.empty()) continue;
        add_faces(normalized(s), sets);
    }
    SimplicialComplex k;
    k.by_dim_.resize(sets.size());
    k.index_.resize(sets.size());
    for (std::size_t d = 0; d < sets.size(); ++d) {
        k.by_dim_[d].assign(sets[d].begin(), sets[d].end());
        k.index_[d].reserve(k.by_dim_[d].size());
        for (std::size_t i = 0; i < k.by_dim_[d].size(); ++i) k.index_[d].emplace(k.by_dim_[d][i], i);
    }
    return k;
}

std::size_t SimplicialComplex::count(int d) const {
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return 0;
    return by_dim_[static_cast<std::size_t>(d)].size();
}

std::size_t SimplicialComplex::size() const {
    std::size_t n = 0;
    for (const auto& v : by_dim_) n += v.size();
    return n;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const {
    static const std::vector<Simplex> none;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return none;
    return by_dim_[static_cast<std::size_t>(d)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    if (s.empty() || s.size() > index_.size()) return std::nullopt;
    const auto& m = index_[s.size() - 1];
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (std::size_t d = 0; d < by_dim_.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(by_dim_[d].size());
    return chi;
}

std::vector<Vertex> SimplicialComplex::vertices() const {
    std::vector<Vertex> v;
    for (const auto& s : simplices(0)) v.push_back(s[0]);
    return v;
}

Filtration::Filtration(SimplicialComplex k, std::vector<std::vector<std::size_t>> levels)
    : complex_(std::move(k)), levels_(std::move(levels)) {
    if (static_cast<int>(levels_.size()) != complex_.max_dim() + 1)
        throw std::invalid_argument("filtration levels do not match complex dimensions");
    for (int d = 0; d <= complex_.max_dim(); ++d) {
        if (levels_[static_cast<std::size_t>(d)].size() != complex_.count(d))
            throw std::invalid_argument("filtration levels do not match simplex counts");
        for (std::size_t i = 0; i < complex_.count(d); ++i) {
            std::size_t lv = levels_[static_cast<std::size_t>(d)][i];
            max_level_ = std::max(max_level_, lv);
            if (d == 0) continue;
            const Simplex& s = complex_.simplex(d, i);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
                if (level(d - 1, *complex_.index_of(f)) > lv) throw std::invalid_argument("filtration is not monotone");
            }
        }
    }
}

SimplicialComplex Filtration::subcomplex(std::size_t i, std::vector<std::vector<std::size_t>>* original_index) const {
    std::vector<Simplex> keep;
    for (int d = 0; d <= complex_.max_dim(); ++d)
        for (std::size_t j = 0; j < complex_.count(d); ++j)
            if (level(d, j) <= i) keep.push_back(complex_.simplex(d, j));
    SimplicialComplex sub = SimplicialComplex::from_simplices(keep);
    if (original_index) {
        original_index->assign(static_cast<std::size_t>(std::max(sub.max_dim() + 1, 0)), {});
        for (int d = 0; d <= sub.max_dim(); ++d)
            for (const auto& s : sub.simplices(d)) (*original_index)[static_cast<std::size_t>(d)].push_back(*complex_.index_of(s));
    }
    return sub;
}

namespace {

struct ParsedLine {
    Simplex simplex;
    std::optional<std::size_t> level;
};

std::vector<ParsedLine> parse_lines(std::istream& in) {
    std::vector<ParsedLine> out;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        ParsedLine pl;
        auto at = line.find('@');
        std::string body = at == std::string::npos ? line : line.substr(0, at);
        if (at != std::string::npos) {
            std::istringstream ls(line.substr(at + 1));
            long long lv;
            std::string extra;
            if (!(ls >> lv) || lv < 0 || (ls >> extra))
                throw ParseError("line " + std::to_string(lineno) + ": bad level");
            pl.level = static_cast<std::size_t>(lv);
        }
        std::istringstream bs(body);
        std::string tok;
        while (bs >> tok) {
            if (tok.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("line " + std::to_string(lineno) + ": bad vertex id '" + tok + "'");
            pl.simplex.push_back(static_cast<Vertex>(std::stoul(tok)));
        }
        if (pl.simplex.empty()) {
            if (pl.level) throw ParseError("line " + std::to_string(lineno) + ": level without simplex");
            continue;
        }
        std::sort(pl.simplex.begin(), pl.simplex.end());
        if (std::adjacent_find(pl.simplex.begin(), pl.simplex.end()) != pl.simplex.end())
            throw ParseError("line " + std::to_string(lineno) + ": repeated vertex");
        out.push_back(std::move(pl));
    }
    return out;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

}  // namespace

SimplicialComplex parse_complex(std::istream& in) {
    std::vector<Simplex> s;
    for (auto& pl : parse_lines(in)) s.push_back(std::move(pl.simplex));
    return SimplicialComplex::from_simplices(s);
}

SimplicialComplex load_complex(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_complex(in);
}

Filtration parse_filtration(std::istream& in) {
    auto lines = parse_lines(in);
    std::vector<Simplex> all;
    for (const auto& pl : lines) all.push_back(pl.simplex);
    SimplicialComplex k = SimplicialComplex::from_simplices(all);
    const std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> explicit_level(static_cast<std::size_t>(k.max_dim() + 1));
    for (int d = 0; d <= k.max_dim(); ++d) explicit_level[static_cast<std::size_t>(d)].assign(k.count(d), unset);
    for (const auto& pl : lines) {
        std::size_t d = pl.simplex.size() - 1;
        std::size_t lv = pl.level.value_or(0);
        auto& slot = explicit_level[d][*k.index_of(pl.simplex)];
        slot = slot == unset ? lv : std::min(slot, lv);
    }
    // Push levels down to faces: a face enters no later than any simplex containing it.
    std::vector<std::vector<std::size_t>> level = explicit_level;
    for (int d = k.max_dim(); d >= 1; --d) {
        for (std::size_t i = 0; i < k.count(d); ++i) {
            std::size_t lv = level[static_cast<std::size_t>(d)][i];
            if (lv == unset) continue;
            const Simplex& s = k.simplex(d, i);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
                std::size_t fi = *k.index_of(f);
                std::size_t ex = explicit_level[static_cast<std::size_t>(d - 1)][fi];
                if (ex != unset && ex > lv) throw ParseError("non-monotone levels: a face is listed after its coface");
                auto& fl = level[static_cast<std::size_t>(d - 1)][fi];
                fl = fl == unset ? lv : std::min(fl, lv);
            }
        }
    }
    return Filtration(std::move(k), std::move(level));
}

Filtration load_filtration(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_filtration(in);
}

void write_filtration(std::ostream& out, const Filtration& f) {
    const auto& k = f.complex();
    for (int d = 0; d <= k.max_dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            const auto& s = k.simplex(d, i);
            for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
            out << " @ " << f.level(d, i) << "\n";
        }
}

std::vector<Point> parse_point_cloud(std::istream& in) {
    std::vector<Point> pts;
    std::string raw;
    std::size_t lineno = 0;
    Field q = Field::rationals();
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        Point p;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                p.push_back(q.parse_scalar(cell).to_mpq());
            } catch (const std::exception&) {
                throw ParseError("point cloud line " + std::to_string(lineno) + ": bad coordinate '" + cell + "'");
            }
        }
        if (!pts.empty() && p.size() != pts.front().size())
            throw ParseError("point cloud line " + std::to_string(lineno) + ": inconsistent dimension");
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Point> load_point_cloud(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_point_cloud(in);
}

Filtration rips_filtration(const std::vector<Point>& points, const std::vector<mpq_class>& radii, int max_dim) {
    if (points.empty()) throw std::invalid_argument("rips: empty point set");
    if (max_dim < 0) throw std::invalid_argument("rips: negative dimension cap");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i - 1] < radii[i])) throw std::invalid_argument("rips: radii must be strictly ascending");
    const std::size_t n = points.size();
    // entry[i][j]: first radius index admitting the edge, radii.size() if none
    std::vector<std::vector<std::size_t>> entry(n, std::vector<std::size_t>(n, 0));
    std::vector<mpq_class> thresholds;
    for (const auto& r : radii) thresholds.push_back(4 * r * r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            mpq_class d2 = 0;
            for (std::size_t c = 0; c < points[i].size(); ++c) {
                mpq_class t = points[i][c] - points[j][c];
                d2 += t * t;
            }
            auto it = std::lower_bound(thresholds.begin(), thresholds.end(), d2, [](const mpq_class& a, const mpq_class& b) { return a < b; });
            entry[i][j] = entry[j][i] = static_cast<std::size_t>(it - thresholds.begin());
        }
    const std::size_t never = radii.size();
    std::vector<Simplex> simplices;
    std::vector<std::size_t> levels;
    // grow cliques vertex by vertex in lexicographic order
    std::vector<std::pair<Simplex, std::size_t>> frontier;
    for (std::size_t i = 0; i < n; ++i) frontier.push_back({{static_cast<Vertex>(i)}, 0});
    for (int d = 0; d <= max_dim && !frontier.empty(); ++d) {
        std::vector<std::pair<Simplex, std::size_t>> next;
        for (auto& [s, lv] : frontier) {
            simplices.push_back(s);
            levels.push_back(lv);
            if (d == max_dim) continue;
            for (std::size_t v = s.back() + 1; v < n; ++v) {
                std::size_t l = lv;
                for (Vertex u : s) l = std::max(l, entry[u][v]);
                if (l >= never) continue;
                Simplex t = s;
                t.push_back(static_cast<Vertex>(v));
                next.push_back({std::move(t), l});
            }
        }
        frontier = std::move(next);
    }
    SimplicialComplex k = SimplicialComplex::from_simplices(simplices);
    std::vector<std::vector<std::size_t>> lv(static_cast<std::size_t>(k.max_dim() + 1));
    for (int d = 0; d <= k.max_dim(); ++d) lv[static_cast<std::size_t>(d)].assign(k.count(d), 0);
    for (std::size_t i = 0; i < simplices.size(); ++i)
        lv[simplices[i].size() - 1][*k.index_of(simplices[i])] = levels[i];
    return Filtration(std::move(k), std::move(lv));
}

SimplicialComplex torus_7_vertex() {
    std::vector<Simplex> t;
    for (Vertex i = 0; i < 7; ++i) {
        t.push_back({i, (i + 1) % 7, (i + 3) % 7});
        t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex::from_simplices(t);
}

SimplicialComplex sphere_boundary(int dim) {
    if (dim < 0) throw std::invalid_argument("sphere dimension must be non-negative");
    Simplex full;
    for (int i = 0; i <= dim + 1; ++i) full.push_back(static_cast<Vertex>(i));
    std::vector<Simplex> facets;
    for (std::size_t drop = 0; drop < full.size(); ++drop) {
        Simplex f = full;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
        facets.push_back(f);
    }
    return SimplicialComplex::from_simplices(facets);
}

SimplicialComplex wedge_circle_sphere_circle() {
    return SimplicialComplex::from_simplices({
        {0, 1}, {1, 2}, {0, 2},                          // first circle
        {0, 3, 4}, {0, 3, 5}, {0, 4, 5}, {3, 4, 5},      // sphere
        {0, 6}, {6, 7}, {0, 7},                          // second circle
    });
}

}  // namespace ainf
