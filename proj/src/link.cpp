#include "ainf/link.hpp"

#include <algorithm>
#include <fstream>

#include "ainf/errors.hpp"
#include "ainf/field.hpp"

namespace ainf {

using nlohmann::json;

namespace {

mpq_class parse_coordinate(const json& v) {
    static const Field q = Field::rationals();
    try {
        if (v.is_string()) return q.parse_scalar(v.get<std::string>()).to_mpq();
        if (v.is_number_integer()) return mpq_class(v.get<long>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("link spec: ") + e.what());
    }
    throw ParseError("link spec: coordinates must be decimal strings or integers");
}

std::string decimal4(const mpq_class& x) {
    // round to 4 decimals, half away from zero
    mpq_class scaled = x * 10000;
    mpz_class n = scaled.get_num(), d = scaled.get_den();
    mpz_class r = (2 * n + (n >= 0 ? d : -d)) / (2 * d);
    bool neg = r < 0;
    if (neg) r = -r;
    std::string digits = r.get_str();
    while (digits.size() < 5) digits.insert(digits.begin(), '0');
    return std::string(neg ? "-" : "") + digits.substr(0, digits.size() - 4) + "." + digits.substr(digits.size() - 4);
}

// Terminating decimal when the denominator allows it, else "n/d".
std::string exact_string(const mpq_class& x) {
    mpz_class d = x.get_den();
    int digits = 0;
    mpz_class scale = 1;
    while (d % 2 == 0 || d % 5 == 0) {
        if (d % 2 == 0) d /= 2;
        if (d % 5 == 0) d /= 5;
    }
    if (d != 1) return x.get_str();
    while (mpq_class(x * scale).get_den() != 1) {
        scale *= 10;
        ++digits;
    }
    if (digits == 0) return x.get_num().get_str();
    mpz_class n = mpq_class(x * scale).get_num();
    bool neg = n < 0;
    if (neg) n = -n;
    std::string s = n.get_str();
    while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
    return std::string(neg ? "-" : "") + s.substr(0, s.size() - static_cast<std::size_t>(digits)) + "." +
           s.substr(s.size() - static_cast<std::size_t>(digits));
}

// Axis-aligned rectangle in the plane coordinate[axis] = level, given in
// resolution-12 cell units; the other two axes follow in cyclic order.
std::vector<Point3> rectangle(int axis, double level, double u0, double u1, double v0, double v1) {
    static const Field q = Field::rationals();
    auto at = [&](double u, double v) {
        std::array<double, 3> p{};
        p[static_cast<std::size_t>(axis)] = level;
        p[static_cast<std::size_t>((axis + 1) % 3)] = u;
        p[static_cast<std::size_t>((axis + 2) % 3)] = v;
        Point3 out;
        for (std::size_t c = 0; c < 3; ++c)
            out[c] = q.parse_scalar(decimal4(mpq_class(static_cast<long>(p[c] * 2), 24))).to_mpq();
        return out;
    };
    return {at(u0, v0), at(u1, v0), at(u1, v1), at(u0, v1)};
}

LinkSpec canned(std::string name, std::vector<std::vector<Point3>> curves) {
    LinkSpec s;
    s.name = std::move(name);
    s.curves = std::move(curves);
    s.tube_radius = mpq_class(3, 100);
    s.resolution = 8;
    return s;
}

struct Segment {
    std::array<mpq_class, 3> p, q;  // grid units
    std::size_t component;
};

// Squared distance from the segment to the box [lo, lo+1]^3, exactly. The
// function of the segment parameter is convex and piecewise quadratic with
// breaks where a coordinate crosses a box face.
mpq_class segment_cell_distance2(const Segment& s, const std::array<long, 3>& lo) {
    std::array<mpq_class, 3> d;
    for (int a = 0; a < 3; ++a) d[a] = s.q[a] - s.p[a];
    std::vector<mpq_class> ts{0, 1};
    for (int a = 0; a < 3; ++a) {
        if (d[a] == 0) continue;
        for (long face : {lo[a], lo[a] + 1}) {
            mpq_class t = (mpq_class(face) - s.p[a]) / d[a];
            if (t > 0 && t < 1) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    auto value = [&](const mpq_class& t) {
        mpq_class total = 0;
        for (int a = 0; a < 3; ++a) {
            mpq_class x = s.p[a] + t * d[a];
            if (x < lo[a]) total += (lo[a] - x) * (lo[a] - x);
            else if (x > lo[a] + 1) total += (x - lo[a] - 1) * (x - lo[a] - 1);
        }
        return total;
    };
    mpq_class best = value(ts[0]);
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const mpq_class &t0 = ts[k], &t1 = ts[k + 1];
        if (t0 == t1) continue;
        best = std::min(best, value(t1));
        // quadratic a t^2 + b t on this piece: only axes outside the box contribute
        mpq_class mid = (t0 + t1) / 2, qa = 0, qb = 0;
        for (int a = 0; a < 3; ++a) {
            mpq_class x = s.p[a] + mid * d[a];
            mpq_class face;
            if (x < lo[a]) face = lo[a];
            else if (x > lo[a] + 1) face = lo[a] + 1;
            else continue;
            qa += d[a] * d[a];
            qb += 2 * d[a] * (s.p[a] - face);
        }
        if (qa > 0) {
            mpq_class t = -qb / (2 * qa);
            if (t > t0 && t < t1) best = std::min(best, value(t));
        }
    }
    return best;
}

struct Grid {
    long r;
    long idx(long x, long y, long z) const { return x + (r + 1) * (y + (r + 1) * z); }
    long cell(long x, long y, long z) const { return x + r * (y + r * z); }
};

// Kuhn tetrahedra of the cell with lower corner c: monotone lattice paths.
std::vector<Simplex> kuhn(const Grid& g, long x, long y, long z) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<Simplex> out;
    for (const auto& p : perms) {
        std::array<long, 3> c{x, y, z};
        Simplex s{static_cast<Vertex>(g.idx(c[0], c[1], c[2]))};
        for (int a : p) {
            ++c[static_cast<std::size_t>(a)];
            s.push_back(static_cast<Vertex>(g.idx(c[0], c[1], c[2])));
        }
        out.push_back(s);
    }
    return out;
}

std::array<long, 3> coords(const Grid& g, Vertex v) {
    long n = g.r + 1, i = static_cast<long>(v);
    return {i % n, (i / n) % n, i / (n * n)};
}

// Square loop in the plane coordinate[axis] = level around the point (u, v) of the
// other two axes, s extra cells on each side; vertices counterclockwise in (u, v).
std::vector<Vertex> square_loop(const Grid& g, int axis, long level, long u0, long v0, long s) {
    const int ua = (axis + 1) % 3, va = (axis + 2) % 3;
    auto vert = [&](long u, long v) {
        std::array<long, 3> c{};
        c[static_cast<std::size_t>(axis)] = level;
        c[static_cast<std::size_t>(ua)] = u;
        c[static_cast<std::size_t>(va)] = v;
        return static_cast<Vertex>(g.idx(c[0], c[1], c[2]));
    };
    std::vector<Vertex> loop;
    long a = u0 - s, b = u0 + 1 + s, c = v0 - s, d = v0 + 1 + s;
    for (long u = a; u < b; ++u) loop.push_back(vert(u, c));
    for (long v = c; v < d; ++v) loop.push_back(vert(b, v));
    for (long u = b; u > a; --u) loop.push_back(vert(u, d));
    for (long v = d; v > c; --v) loop.push_back(vert(a, v));
    return loop;
}

// Number of segments crossing the closed square [a,b] x [c,d] in the plane
// coordinate[axis] = level; -1 if a segment lies in that plane.
int crossings(const std::vector<Segment>& segs, int axis, long level, long a, long b, long c, long d) {
    const int ua = (axis + 1) % 3, va = (axis + 2) % 3;
    int count = 0;
    for (const auto& s : segs) {
        mpq_class p = s.p[axis] - level, q = s.q[axis] - level;
        if (p == 0 && q == 0) return -1;
        if ((p > 0) == (q > 0)) continue;  // an endpoint on the plane counts on the lower side
        mpq_class t = p / (p - q);
        mpq_class u = s.p[ua] + t * (s.q[ua] - s.p[ua]), v = s.p[va] + t * (s.q[va] - s.p[va]);
        if (u >= a && u <= b && v >= c && v <= d) ++count;
    }
    return count;
}

}  // namespace

LinkSpec link_spec_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("link spec: expected a JSON object");
    LinkSpec s;
    s.name = j.value("name", "");
    if (!j.contains("curves") || !j["curves"].is_array()) throw ParseError("link spec: missing curves");
    for (const auto& c : j["curves"]) {
        if (!c.is_array()) throw ParseError("link spec: a curve must be a list of points");
        std::vector<Point3> curve;
        for (const auto& p : c) {
            if (!p.is_array() || p.size() != 3) throw ParseError("link spec: points have three coordinates");
            curve.push_back({parse_coordinate(p[0]), parse_coordinate(p[1]), parse_coordinate(p[2])});
        }
        if (curve.size() > 1 && curve.front() == curve.back()) curve.pop_back();
        if (curve.size() < 3) throw ParseError("link spec: a closed curve needs at least three vertices");
        s.curves.push_back(std::move(curve));
    }
    if (!j.contains("tube_radius")) throw ParseError("link spec: missing tube_radius");
    s.tube_radius = parse_coordinate(j["tube_radius"]);
    if (s.tube_radius <= 0) throw ParseError("link spec: tube_radius must be positive");
    if (j.contains("resolution")) {
        if (!j["resolution"].is_number_integer()) throw ParseError("link spec: resolution must be an integer");
        s.resolution = j["resolution"].get<int>();
    }
    if (s.resolution < 2) throw ParseError("link spec: resolution must be at least 2");
    return s;
}

LinkSpec load_link_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return link_spec_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json to_json(const LinkSpec& s) {
    json j;
    if (!s.name.empty()) j["name"] = s.name;
    j["curves"] = json::array();
    for (const auto& c : s.curves) {
        json curve = json::array();
        for (const auto& p : c) {
            json pt = json::array();
            for (const auto& x : p) pt.push_back(exact_string(x));
            curve.push_back(pt);
        }
        j["curves"].push_back(curve);
    }
    j["tube_radius"] = exact_string(s.tube_radius);
    j["resolution"] = s.resolution;
    return j;
}

LinkComplement build_link_complement(const LinkSpec& spec) { return build_link_complement(spec, spec.resolution); }

LinkComplement build_link_complement(const LinkSpec& spec, int resolution) {
    if (resolution < 2) throw PreconditionError("link complement: resolution must be at least 2");
    const long R = resolution;
    Grid g{R};
    std::vector<Segment> segs;
    for (std::size_t c = 0; c < spec.curves.size(); ++c) {
        const auto& curve = spec.curves[c];
        for (std::size_t k = 0; k < curve.size(); ++k) {
            Segment s;
            s.component = c;
            for (int a = 0; a < 3; ++a) {
                s.p[a] = curve[k][a] * R;
                s.q[a] = curve[(k + 1) % curve.size()][a] * R;
            }
            segs.push_back(s);
        }
    }
    const mpq_class rad = spec.tube_radius * R, rad2 = rad * rad;

    // owner[cell] = component whose tube meets the cell, -1 if none
    std::vector<long> owner(static_cast<std::size_t>(R * R * R), -1);
    for (const auto& s : segs) {
        std::array<long, 3> lo, hi;
        for (int a = 0; a < 3; ++a) {
            mpq_class mn = std::min(s.p[a], s.q[a]) - rad, mx = std::max(s.p[a], s.q[a]) + rad;
            mpz_class f = mn.get_num() / mn.get_den();
            if (f * mn.get_den() > mn.get_num()) f -= 1;  // floor
            lo[a] = std::max<long>(f.get_si() - 1, -1);
            mpz_class cmx = mx.get_num() / mx.get_den();
            hi[a] = std::min<long>(cmx.get_si() + 1, R);
        }
        for (long z = lo[2]; z <= hi[2]; ++z)
            for (long y = lo[1]; y <= hi[1]; ++y)
                for (long x = lo[0]; x <= hi[0]; ++x) {
                    if (segment_cell_distance2(s, {x, y, z}) > rad2) continue;
                    if (x < 1 || y < 1 || z < 1 || x > R - 2 || y > R - 2 || z > R - 2)
                        throw PreconditionError("link complement: a tube reaches the cube boundary at resolution " + std::to_string(R));
                    long& o = owner[static_cast<std::size_t>(g.cell(x, y, z))];
                    if (o >= 0 && o != static_cast<long>(s.component))
                        throw PreconditionError("link complement: tubes merge at resolution " + std::to_string(R));
                    o = static_cast<long>(s.component);
                }
    }
    // tubes of different components must not even touch at a corner
    std::vector<long> vertex_owner(static_cast<std::size_t>((R + 1) * (R + 1) * (R + 1)), -1);
    std::size_t removed = 0;
    for (long z = 0; z < R; ++z)
        for (long y = 0; y < R; ++y)
            for (long x = 0; x < R; ++x) {
                long o = owner[static_cast<std::size_t>(g.cell(x, y, z))];
                if (o < 0) continue;
                ++removed;
                for (long dz = 0; dz < 2; ++dz)
                    for (long dy = 0; dy < 2; ++dy)
                        for (long dx = 0; dx < 2; ++dx) {
                            long& vo = vertex_owner[static_cast<std::size_t>(g.idx(x + dx, y + dy, z + dz))];
                            if (vo >= 0 && vo != o)
                                throw PreconditionError("link complement: tubes touch at resolution " + std::to_string(R));
                            vo = o;
                        }
            }

    std::vector<Simplex> tops;
    const Vertex apex = static_cast<Vertex>((R + 1) * (R + 1) * (R + 1));
    for (long z = 0; z < R; ++z)
        for (long y = 0; y < R; ++y)
            for (long x = 0; x < R; ++x) {
                if (owner[static_cast<std::size_t>(g.cell(x, y, z))] >= 0) continue;
                bool boundary = x == 0 || y == 0 || z == 0 || x == R - 1 || y == R - 1 || z == R - 1;
                for (auto& t : kuhn(g, x, y, z)) {
                    if (boundary)
                        for (std::size_t drop = 0; drop < 4; ++drop) {
                            Simplex tri;
                            for (std::size_t k = 0; k < 4; ++k)
                                if (k != drop) tri.push_back(t[k]);
                            for (int a = 0; a < 3; ++a)
                                for (long side : {0L, R}) {
                                    bool on = true;
                                    for (auto v : tri) on = on && coords(g, v)[static_cast<std::size_t>(a)] == side;
                                    if (on) {
                                        Simplex cone = tri;
                                        cone.push_back(apex);
                                        tops.push_back(cone);
                                    }
                                }
                        }
                    tops.push_back(std::move(t));
                }
            }
    LinkComplement out;
    out.resolution = resolution;
    out.removed_cells = removed;
    out.complex = SimplicialComplex::from_simplices(tops);

    for (std::size_t c = 0; c < spec.curves.size(); ++c) {
        std::vector<Vertex> found;
        for (const auto& s : segs) {
            if (s.component != c || !found.empty()) continue;
            int axis = -1, moving = 0;
            for (int a = 0; a < 3; ++a)
                if (s.p[a] != s.q[a]) {
                    axis = a;
                    ++moving;
                }
            if (moving != 1) continue;
            const int ua = (axis + 1) % 3, va = (axis + 2) % 3;
            mpq_class lo = std::min(s.p[axis], s.q[axis]), hi = std::max(s.p[axis], s.q[axis]);
            mpq_class u = s.p[ua], v = s.p[va];
            if (u.get_den() == 1 || v.get_den() == 1) continue;  // on a grid line
            mpz_class fu = u.get_num() / u.get_den(), fv = v.get_num() / v.get_den();
            const long u0 = fu.get_si(), v0 = fv.get_si();
            // try planes from the middle of the segment outwards
            std::vector<long> planes;
            for (long l = 1; l < R; ++l)
                if (mpq_class(l) > lo && mpq_class(l) < hi) planes.push_back(l);
            mpq_class mid = (lo + hi) / 2;
            std::stable_sort(planes.begin(), planes.end(),
                             [&](long a, long b) { return abs(mpq_class(a) - mid) < abs(mpq_class(b) - mid); });
            for (long level : planes) {
                for (long ext = 0; ext < 3 && found.empty(); ++ext) {
                    if (u0 - ext < 0 || v0 - ext < 0 || u0 + 1 + ext > R || v0 + 1 + ext > R) break;
                    if (crossings(segs, axis, level, u0 - ext, u0 + 1 + ext, v0 - ext, v0 + 1 + ext) != 1) continue;
                    auto loop = square_loop(g, axis, level, u0, v0, ext);
                    bool ok = true;
                    for (std::size_t k = 0; k < loop.size() && ok; ++k) {
                        Simplex e{loop[k], loop[(k + 1) % loop.size()]};
                        std::sort(e.begin(), e.end());
                        ok = out.complex.contains(e);
                    }
                    if (ok) found = loop;
                }
                if (!found.empty()) break;
            }
        }
        if (found.empty())
            throw PreconditionError("link complement: no meridian found for component " + std::to_string(c) +
                                    " (needs an axis-parallel segment off the grid lines)");
        out.meridians.push_back(std::move(found));
    }
    return out;
}

SparseVec cycle_chain(const SimplicialComplex& k, const std::vector<Vertex>& loop, const Field& f) {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        Vertex a = loop[i], b = loop[(i + 1) % loop.size()];
        auto idx = k.index_of(a < b ? Simplex{a, b} : Simplex{b, a});
        if (!idx) throw PreconditionError("cycle_chain: edge missing from the complex");
        out.push_back({static_cast<Index>(*idx), a < b ? f.one() : -f.one()});
    }
    return canonical(std::move(out));
}

LinkSpec unlink_spec(int components) {
    if (components < 0 || components > 3) throw PreconditionError("unlink_spec: between 0 and 3 components");
    static const double levels[3][3] = {{5.5, 0, 0}, {3.5, 7.5, 0}, {2.5, 5.5, 8.5}};
    std::vector<std::vector<Point3>> curves;
    for (int c = 0; c < components; ++c) curves.push_back(rectangle(2, levels[components - 1][c], 2.5, 8.5, 2.5, 8.5));
    return canned(components == 0 ? "empty" : "unlink" + std::to_string(components), curves);
}

LinkSpec hopf_spec() {
    // ring 1 in z = 5.5 around (4.5, 5.5); ring 2 in y = 5.5 through that disc once
    return canned("hopf", {rectangle(2, 5.5, 1.5, 7.5, 3.5, 7.5), rectangle(1, 5.5, 2.5, 8.5, 5.5, 9.5)});
}

LinkSpec borromean_spec() {
    // three mutually perpendicular rectangles, long sides in cyclic order
    const double m = 5.5, a = 4, b = 2;
    return canned("borromean", {rectangle(2, m, m - a, m + a, m - b, m + b), rectangle(0, m, m - a, m + a, m - b, m + b),
                                rectangle(1, m, m - a, m + a, m - b, m + b)});
}

LinkSpec sphere_triple_spec() {
    // x = 0, y^2 + z^2/4 = 1 and its cyclic shifts: short side first
    const double m = 5.5, a = 4, b = 2;
    return canned("sphere_triple_1_1_1", {rectangle(0, m, m - b, m + b, m - a, m + a), rectangle(1, m, m - b, m + b, m - a, m + a),
                                          rectangle(2, m, m - b, m + b, m - a, m + a)});
}

}  // namespace ainf
