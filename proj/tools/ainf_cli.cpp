// ainf: persistence barcodes, transferred A-infinity structures and link Massey products.
//
//   ainf barcode FILTRATION [--degree p] [--field F] [--format json|svg] [--out PATH]
//   ainf ainfty BUNDLE.json | FILTRATION [--n n] [--degree p] [--field F] [--format json|svg]
//   ainf transfer COMPLEX [--n-max k] [--field F]
//   ainf stasheff STRUCTURE.json [--n-max k]
//   ainf massey LINKSPEC.json [--field F] [--resolution R]
//   ainf link-build LINKSPEC.json [--resolution R] [--format text|json]
//   ainf rips POINTS --radii r0,r1,... [--max-dim d]
//
// Exit codes: 0 ok, 2 parse error, 3 precondition violation, 4 internal consistency failure.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ainf/apersist.hpp"
#include "ainf/chain.hpp"
#include "ainf/contraction.hpp"
#include "ainf/massey.hpp"
#include "ainf/persist.hpp"
#include "ainf/structure_io.hpp"
#include "ainf/transfer.hpp"
#include "svg.hpp"

using namespace ainf;
using nlohmann::json;

namespace {

struct Config {
    std::string field = "Q";
    int arity_bound = 4;
    std::optional<int> degree;
    int n = 2;
    std::string output;
    std::string format = "json";
    std::optional<int> resolution;
};

enum Exit { kOk = 0, kParse = 2, kPrecondition = 3, kConsistency = 4 };

void emit(const Config& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw PreconditionError("cannot write " + cfg.output);
    out << text;
}

void emit_json(const Config& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

void emit_barcodes(const Config& cfg, const std::vector<Barcode>& codes, const json& j, const std::string& title) {
    if (cfg.format == "svg")
        emit(cfg, cli::barcode_svg(codes, title));
    else
        emit_json(cfg, j);
}

Field field_of(const Config& cfg) {
    try {
        return Field::parse(cfg.field);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

bool looks_like_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    char c = 0;
    while (in.get(c))
        if (!std::isspace(static_cast<unsigned char>(c))) return c == '{' || c == '[';
    return false;
}

int cmd_barcode(const Config& cfg, const std::string& path) {
    Filtration f = load_filtration(path);
    Field field = field_of(cfg);
    std::vector<Barcode> codes;
    const int top = f.complex().max_dim();
    if (cfg.degree) {
        if (*cfg.degree < 0) throw PreconditionError("degree must be non-negative");
        codes.push_back(homology_barcode(f, *cfg.degree, field));
    } else {
        for (int p = 0; p <= top; ++p) codes.push_back(homology_barcode(f, p, field));
    }
    emit_barcodes(cfg, codes, to_json(codes), "H barcode of " + path);
    return kOk;
}

int cmd_ainfty(const Config& cfg, const std::string& path, bool n_given) {
    APersistenceInput inp;
    if (looks_like_json(path)) {
        inp = apersistence_from_json(read_json_file(path));
        if (cfg.degree) inp.degree = *cfg.degree;
        if (n_given) inp.n = cfg.n;
        inp.validate();
    } else {
        inp = apersistence_from_filtration(load_filtration(path), cfg.degree.value_or(1), cfg.n, field_of(cfg));
    }
    Barcode b = delta_barcode(inp);
    CompatibilityReport compat = compatibility_check(inp);
    auto flagged = sleep_wake_diagnostic(inp);

    json j;
    j["field"] = inp.field.name();
    j["degree"] = inp.degree;
    j["n"] = inp.n;
    j["barcode"] = to_json(b);
    j["compatible"] = compat.ok;
    if (compat.ok) {
        j["kernel_submodule_barcode"] = to_json(kernel_submodule_barcode(inp));
    } else {
        j["incompatible_at"] = compat.index;
    }
    json diag = json::array();
    for (const auto& k : flagged) diag.push_back(to_json(k));
    j["sleep_wake"] = diag;
    if (!flagged.empty())
        std::cerr << "warning: " << flagged.size()
                  << " kernel class(es) leave Ker Delta_" << inp.n << " and return; their bars are split\n";
    emit_barcodes(cfg, {b}, j, "Delta_" + std::to_string(inp.n) + " barcode of " + path);
    return kOk;
}

int cmd_transfer(const Config& cfg, const std::string& path) {
    if (cfg.arity_bound < 2) throw PreconditionError("--n-max must be at least 2");
    SimplicialComplex k = load_complex(path);
    Field f = field_of(cfg);
    HomologyReduction red(chain_complex(k, f));
    AInftyCoalgebra s = transfer_coalgebra(red, aw_diagonal(k, f), cfg.arity_bound);
    json j = to_json(s);
    j["field"] = f.name();
    json nonzero = json::array();
    for (int n = 2; n <= cfg.arity_bound; ++n)
        if (!s.is_zero(n)) nonzero.push_back(n);
    std::cerr << "nonzero operations: " << nonzero.dump() << "\n";
    emit_json(cfg, j);
    return kOk;
}

int cmd_stasheff(const Config& cfg, const std::string& path) {
    if (cfg.arity_bound < 1) throw PreconditionError("--n-max must be positive");
    AnyStructure any = load_structure(path);
    json j;
    if (auto* co = std::get_if<AInftyCoalgebra>(&any)) {
        IdentityReport r = verify_stasheff(*co, cfg.arity_bound);
        IdentityReport cb = cobar_d_squared_check(cobar(*co, cfg.arity_bound));
        j["kind"] = "coalgebra";
        j["passes"] = r.ok;
        j["failing_arities"] = r.failing;
        j["cobar_d_squared_zero"] = cb.ok;
        if (cb.ok != r.ok) throw ConsistencyError("Stasheff check and cobar d^2 disagree");
    } else {
        IdentityReport r = verify_stasheff(std::get<AInftyAlgebra>(any), cfg.arity_bound);
        j["kind"] = "algebra";
        j["passes"] = r.ok;
        j["failing_arities"] = r.failing;
    }
    j["n_max"] = cfg.arity_bound;
    emit_json(cfg, j);
    return kOk;
}

LinkSpec spec_with_resolution(const Config& cfg, const std::string& path) {
    LinkSpec s = load_link_spec(path);
    if (cfg.resolution) {
        if (*cfg.resolution < 2) throw PreconditionError("--resolution must be at least 2");
        s.resolution = *cfg.resolution;
    }
    return s;
}

int cmd_massey(const Config& cfg, const std::string& path) {
    LinkSpec s = spec_with_resolution(cfg, path);
    LinkReport r = link_pipeline(s, field_of(cfg), !cfg.resolution.has_value());
    emit_json(cfg, to_json(r));
    return kOk;
}

int cmd_link_build(const Config& cfg, const std::string& path) {
    LinkSpec s = spec_with_resolution(cfg, path);
    LinkComplement lc = build_link_complement(s);
    const SimplicialComplex& k = lc.complex;
    // maximal simplices only
    std::set<Simplex> faces;
    std::vector<Simplex> facets;
    for (int d = k.max_dim(); d >= 0; --d)
        for (const auto& sx : k.simplices(d)) {
            if (!faces.count(sx)) facets.push_back(sx);
            if (d == 0) continue;
            for (std::size_t drop = 0; drop < sx.size(); ++drop) {
                Simplex face = sx;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                faces.insert(std::move(face));
            }
        }
    if (cfg.format == "json") {
        json j;
        j["name"] = s.name;
        j["resolution"] = lc.resolution;
        j["removed_cells"] = lc.removed_cells;
        j["facets"] = facets;
        j["meridians"] = lc.meridians;
        emit_json(cfg, j);
        return kOk;
    }
    std::ostringstream out;
    out << "# complement of " << s.name << " at resolution " << lc.resolution << ", " << facets.size() << " facets\n";
    for (std::size_t i = 0; i < lc.meridians.size(); ++i) {
        out << "# meridian " << i << ":";
        for (Vertex v : lc.meridians[i]) out << ' ' << v;
        out << '\n';
    }
    for (const auto& sx : facets) {
        for (std::size_t i = 0; i < sx.size(); ++i) out << (i ? " " : "") << sx[i];
        out << '\n';
    }
    emit(cfg, out.str());
    return kOk;
}

int cmd_rips(const Config& cfg, const std::string& path, const std::string& radii_text, int max_dim) {
    auto pts = load_point_cloud(path);
    std::vector<mpq_class> radii;
    Field q = Field::rationals();
    std::stringstream in(radii_text);
    std::string item;
    while (std::getline(in, item, ',')) radii.push_back(q.parse_scalar(item).to_mpq());
    if (radii.empty()) throw PreconditionError("--radii needs at least one value");
    Filtration f = rips_filtration(pts, radii, max_dim);
    std::ostringstream out;
    write_filtration(out, f);
    emit(cfg, out.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistence barcodes, transferred A-infinity structures and link Massey products over exact fields"};
    app.require_subcommand(1);
    Config cfg;
    std::string input, radii, link_format = "text";
    int max_dim = 2;

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", input, "input file")->required();
        sub->add_option("--out,-o", cfg.output, "write here instead of stdout");
    };
    auto with_field = [&](CLI::App* sub) {
        sub->add_option("--field", cfg.field, "Q or GF:p")->default_val("Q");
    };

    auto* barcode = app.add_subcommand("barcode", "homology barcode of a filtration file");
    common(barcode);
    with_field(barcode);
    barcode->add_option("--degree", cfg.degree, "homology degree (all degrees when omitted)");
    barcode->add_option("--format", cfg.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));

    auto* ainfty = app.add_subcommand("ainfty", "Delta_n barcode of a bundle or a filtration, with sleep-wake diagnostics");
    common(ainfty);
    with_field(ainfty);
    auto* n_opt = ainfty->add_option("--n", cfg.n, "operation arity")->check(CLI::Range(2, 64));
    ainfty->add_option("--degree", cfg.degree, "degree of the studied classes");
    ainfty->add_option("--format", cfg.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));

    auto* transfer = app.add_subcommand("transfer", "transferred A-infinity coalgebra on the homology of a complex");
    common(transfer);
    with_field(transfer);
    transfer->add_option("--n-max", cfg.arity_bound, "arity bound")->default_val(4);

    auto* stasheff = app.add_subcommand("stasheff", "check the Stasheff identities of a structure file");
    common(stasheff);
    stasheff->add_option("--n-max", cfg.arity_bound, "highest identity checked")->default_val(4);

    auto* massey = app.add_subcommand("massey", "link complement report: Betti numbers, cup rank, Massey product, mu_3");
    common(massey);
    with_field(massey);
    massey->add_option("--resolution", cfg.resolution, "grid resolution (no escalation when given)");

    auto* link_build = app.add_subcommand("link-build", "triangulated link complement as a complex file");
    common(link_build);
    link_build->add_option("--resolution", cfg.resolution, "grid resolution");
    link_build->add_option("--format", link_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* rips = app.add_subcommand("rips", "Vietoris-Rips filtration of a point cloud");
    common(rips);
    rips->add_option("--radii", radii, "comma-separated exact radii, one per level")->required();
    rips->add_option("--max-dim", max_dim, "highest simplex dimension")->default_val(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*barcode) return cmd_barcode(cfg, input);
        if (*ainfty) return cmd_ainfty(cfg, input, n_opt->count() > 0);
        if (*transfer) return cmd_transfer(cfg, input);
        if (*stasheff) return cmd_stasheff(cfg, input);
        if (*massey) return cmd_massey(cfg, input);
        if (*link_build) {
            cfg.format = link_format;
            return cmd_link_build(cfg, input);
        }
        if (*rips) return cmd_rips(cfg, input, radii, max_dim);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kConsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConsistency;
    }
    return kOk;
}
