#include "cremona/report.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cremona/certify.hpp"
#include "cremona/errors.hpp"
#include "cremona/textio.hpp"

namespace cremona {

const char* kToolVersion = "0.1.0";
const char* kReportSchema = "cremona-lab/1";

namespace {

nlohmann::json map_lines(const RationalMap& m) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < 3; ++i)
        out.push_back("F" + std::to_string(i) + ": " + poly_to_text(m.coord(i)));
    return out;
}

RationalMap map_from_lines(const nlohmann::json& lines) {
    if (!lines.is_array() || lines.size() != 3) throw Error("malformed map serialization");
    std::array<MPoly, 3> c = {MPoly(plane_vars()), MPoly(plane_vars()), MPoly(plane_vars())};
    for (int i = 0; i < 3; ++i) {
        std::string s = lines[i].get<std::string>();
        std::string prefix = "F" + std::to_string(i) + ": ";
        if (s.rfind(prefix, 0) != 0) throw Error("malformed map line '" + s + "'");
        c[i] = poly_from_text(s.substr(prefix.size()), plane_vars());
    }
    return RationalMap(c[0], c[1], c[2]);
}

nlohmann::json rationals_json(const std::vector<Rational>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : v) out.push_back(r.get_str());
    return out;
}

} // namespace

nlohmann::json build_report(const ConstructionResult& result, bool with_timings,
                            double elapsed_seconds) {
    const ConstructionConfig& cfg = result.config;
    nlohmann::json rep;
    rep["schema"] = kReportSchema;
    rep["tool_version"] = kToolVersion;

    nlohmann::json config;
    config["n"] = cfg.n;
    config["lambda"] = cfg.lambda.get_str();
    config["mu"] = cfg.mu.get_str();
    config["a"] = rationals_json(cfg.a);
    config["psi_poly"] = cfg.psi_poly;
    config["modular"] = cfg.modular;
    config["seed"] = cfg.seed;
    rep["config"] = config;
    rep["seed"] = cfg.seed;
    rep["cluster_note"] = cluster_note();

    nlohmann::json maps;
    maps["f"] = map_lines(result.f);
    maps["phi"] = map_lines(result.phi);
    maps["phi_prime"] = map_lines(result.phi_prime);
    rep["maps"] = maps;

    nlohmann::json towers;
    towers["a"] = rationals_json(result.tower_a.params);
    towers["b"] = rationals_json(result.tower_b.params);
    towers["length"] = result.tower_a.length();
    rep["towers"] = towers;

    nlohmann::json curves;
    curves["C"] = poly_to_text(result.curve_c.equation);
    curves["D"] = poly_to_text(result.curve_d.equation);
    curves["degree"] = result.curve_c.degree;
    curves["q1_C"] = result.q1_c.to_string();
    curves["q1_D"] = result.q1_d.to_string();
    rep["curves"] = curves;

    nlohmann::json lattice;
    nlohmann::json hom = nlohmann::json::array();
    hom.push_back(result.homaloidal.degree);
    for (long m : result.homaloidal.mults) hom.push_back(m);
    lattice["homaloidal"] = hom;
    lattice["dual_graph_dot"] = result.graph.to_dot();
    rep["lattice"] = lattice;

    nlohmann::json psi;
    psi["mode"] = result.psi.polynomial_mode ? "polynomial" : "sampled";
    psi["predicted_degree"] = result.psi.predicted_degree;
    if (result.psi.actual_degree) psi["degree"] = *result.psi.actual_degree;
    if (result.psi.psi) psi["map"] = map_lines(*result.psi.psi);
    psi["witness_count"] = result.psi.samples.size();
    rep["psi"] = psi;

    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : result.certificates)
        certs.push_back({{"kind", c.kind}, {"verdict", c.verdict}, {"evidence", c.evidence}});
    rep["certificates"] = certs;
    rep["verdict"] = result.verdict;

    if (with_timings) rep["timings"] = {{"total_seconds", elapsed_seconds}};
    else rep["timings"] = nullptr;
    return rep;
}

std::string report_to_string(const nlohmann::json& report) {
    return report.dump(2) + "\n";
}

ConstructionConfig parse_config_file(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string key, eq, value;
        std::istringstream ls(line);
        if (!(ls >> key)) continue;
        if (!(ls >> eq)) throw Error("config: missing value for '" + key + "'");
        if (eq == "=") {
            if (!(ls >> value)) throw Error("config: missing value for '" + key + "'");
        } else {
            value = eq;
        }
        kv[key] = value;
    }
    auto parse_bool = [](const std::string& s) {
        if (s == "true" || s == "1" || s == "on") return true;
        if (s == "false" || s == "0" || s == "off") return false;
        throw Error("config: unparsable boolean '" + s + "'");
    };

    int n = kv.count("n") ? std::stoi(kv.at("n")) : 2;
    ConstructionConfig cfg = ConstructionConfig::defaults(n);
    if (kv.count("lambda")) cfg.lambda = rational_from_string(kv.at("lambda"));
    if (kv.count("mu")) cfg.mu = rational_from_string(kv.at("mu"));
    if (kv.count("a")) {
        cfg.a.clear();
        std::istringstream as(kv.at("a"));
        std::string piece;
        while (std::getline(as, piece, ',')) cfg.a.push_back(rational_from_string(piece));
    }
    if (kv.count("psi_poly")) cfg.psi_poly = parse_bool(kv.at("psi_poly"));
    if (kv.count("modular")) cfg.modular = parse_bool(kv.at("modular"));
    if (kv.count("seed")) cfg.seed = std::stoull(kv.at("seed"));
    return cfg;
}

namespace {

bool recheck_graph_match(const nlohmann::json& report, const nlohmann::json& ev) {
    int n = report.at("config").at("n").get<int>();
    DualGraph want = expected_dual_graph(n);
    return ev.at("dot").get<std::string>() == want.to_dot() && ev.at("tree").get<bool>() &&
           ev.at("end_swap_symmetry").get<bool>();
}

bool recheck_tower_resolution(const nlohmann::json& report, const nlohmann::json& ev) {
    int n = report.at("config").at("n").get<int>();
    std::vector<Rational> a;
    for (const auto& s : report.at("towers").at("a")) a.push_back(rational_from_string(s));
    ChartTower t = build_tower(n, a);
    TowerClasses cls = strict_transform_classes(t);
    auto down = contraction_sequence(cls, "Etilde_" + std::to_string(4 + 2 * n));
    auto up = contraction_sequence(cls, "Qtilde");
    std::vector<std::string> sdown = ev.at("contractions_keeping_top");
    std::vector<std::string> sup = ev.at("contractions_keeping_conic");
    return down == sdown && up == sup &&
           is_minus_one_tower_resolution(t, standard_conic()) ==
               ev.at("tower_predicate_source").get<bool>();
}

bool recheck_degree(const nlohmann::json& report, const nlohmann::json& ev) {
    long degree = ev.at("degree").get<long>();
    MPoly c = poly_from_text(ev.at("curve_c").get<std::string>(), plane_vars());
    MPoly d = poly_from_text(ev.at("curve_d").get<std::string>(), plane_vars());
    int dc = 0, dd = 0;
    if (!c.is_homogeneous(&dc) || !d.is_homogeneous(&dd)) return false;
    if (dc != degree || dd != degree) return false;
    // Noether identities on the stored homaloidal multiplicities.
    long sum = 0, sq = 0;
    for (const auto& m : ev.at("homaloidal")) {
        sum += m.get<long>();
        sq += m.get<long>() * m.get<long>();
    }
    if (sum != 3 * degree - 3 || sq != degree * degree - 1) return false;
    // Stored points lie on the stored curves.
    for (const auto& ps : ev.at("points_on_c")) {
        ProjPoint p = ProjPoint::from_string(ps.get<std::string>());
        if (c.eval({p.c[0], p.c[1], p.c[2]}) != 0) return false;
    }
    for (const auto& ps : ev.at("points_on_d")) {
        ProjPoint p = ProjPoint::from_string(ps.get<std::string>());
        if (d.eval({p.c[0], p.c[1], p.c[2]}) != 0) return false;
    }
    // Consistency with the report's curve section.
    return report.at("curves").at("C").get<std::string>() == ev.at("curve_c") &&
           report.at("curves").at("D").get<std::string>() == ev.at("curve_d");
}

bool recheck_unicuspidal(const nlohmann::json& report, const nlohmann::json& ev) {
    (void)report;
    MPoly eq = poly_from_text(ev.at("equation").get<std::string>(), plane_vars());
    ProjPoint p = ProjPoint::from_string(ev.at("point").get<std::string>());
    std::vector<Rational> pt = {p.c[0], p.c[1], p.c[2]};
    for (int v = 0; v < 3; ++v)
        if (eq.derivative(v).eval(pt) != 0) return false;
    if (eq.eval(pt) != 0) return false;
    // Multiplicity from the local expansion.
    int chart = 2;
    while (chart >= 0 && p.c[chart] == 0) --chart;
    MPoly g = eq.substitute_value(chart, Rational(1));
    for (int v = 0; v < 3; ++v)
        if (v != chart) g = g.shifted(v, p.c[v]);
    int best = -1;
    for (const auto& [e, c] : g.terms()) {
        int d = 0;
        for (int v = 0; v < 3; ++v)
            if (v != chart) d += e[v];
        if (best < 0 || d < best) best = d;
    }
    return best == ev.at("multiplicity").get<int>();
}

bool recheck_complement_iso(const nlohmann::json& report, const nlohmann::json& ev) {
    RationalMap phi = map_from_lines(report.at("maps").at("phi"));
    RationalMap phi_prime = map_from_lines(report.at("maps").at("phi_prime"));
    RationalMap f = map_from_lines(report.at("maps").at("f"));

    // Purity of the conic pullbacks.
    MPoly conic = standard_conic();
    for (const RationalMap* m : {&phi, &phi_prime}) {
        MPoly pb = pullback(*m, PlaneCurve(conic));
        for (int i = 0; i < m->degree(); ++i) {
            auto q = pb.divide_exact(conic);
            if (!q) return false;
            pb = *q;
        }
        if (!pb.is_constant() || pb.constant_value() == 0) return false;
    }
    if (ev.at("contracted_conic_phi").get<std::string>() != poly_to_text(conic)) return false;
    if (ev.at("contracted_conic_phi_prime").get<std::string>() != poly_to_text(conic))
        return false;

    // Witness samples: rhs = phi'(f(r)) recomputed; lhs must match.
    for (const auto& s : ev.at("samples")) {
        ProjPoint r = ProjPoint::from_string(s.at("r").get<std::string>());
        ProjPoint rhs = apply_map(phi_prime, apply_map(f, r));
        if (!(rhs == ProjPoint::from_string(s.at("rhs").get<std::string>()))) return false;
        if (!(rhs == ProjPoint::from_string(s.at("lhs").get<std::string>()))) return false;
        ProjPoint image = apply_map(phi, r);
        if (!(image == ProjPoint::from_string(s.at("image").get<std::string>()))) return false;
    }
    return true;
}

bool recheck_nonequivalence(const nlohmann::json& report, const nlohmann::json& ev) {
    (void)report;
    const std::vector<std::string> K = {"k"};
    // The chain stores the two constraint inputs first, then every
    // remainder; re-run Euclid on the inputs and compare everything.
    std::vector<MPoly> inputs;
    for (const auto& s : ev.at("euclid_chain")) inputs.push_back(poly_from_text(s, K));
    if (inputs.size() < 2) return false;
    EuclidChain redo = euclid_chain({inputs[0], inputs[1]});
    std::vector<std::string> redo_seq;
    for (const auto& p : redo.sequence) redo_seq.push_back(poly_to_text(p));
    std::vector<std::string> stored_seq;
    for (const auto& s : ev.at("euclid_chain")) stored_seq.push_back(s.get<std::string>());
    if (redo_seq != stored_seq) return false;
    if (poly_to_text(redo.gcd) != ev.at("gcd").get<std::string>()) return false;
    return !redo.gcd.is_zero() && redo.gcd.degree() == 0;
}

} // namespace

RecheckOutcome recheck_report(const nlohmann::json& report) {
    if (!report.contains("schema") || report.at("schema").get<std::string>() != kReportSchema)
        throw Error("recheck: unsupported schema");
    RecheckOutcome out;
    for (const auto& c : report.at("certificates")) {
        std::string kind = c.at("kind").get<std::string>();
        std::string verdict = c.at("verdict").get<std::string>();
        bool ok = true;
        if (verdict == "pass") {
            const nlohmann::json& ev = c.at("evidence");
            try {
                if (kind == "GraphMatch") ok = recheck_graph_match(report, ev);
                else if (kind == "TowerResolution") ok = recheck_tower_resolution(report, ev);
                else if (kind == "Degree") ok = recheck_degree(report, ev);
                else if (kind == "Unicuspidal") ok = recheck_unicuspidal(report, ev);
                else if (kind == "ComplementIso") ok = recheck_complement_iso(report, ev);
                else if (kind == "NonEquivalence") ok = recheck_nonequivalence(report, ev);
                else ok = false;
            } catch (const std::exception&) {
                ok = false;
            }
        }
        out.checks.push_back({kind, ok});
        if (!ok) out.ok = false;
    }
    return out;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact construction and certification of plane curve pairs with "
                 "isomorphic complements"};
    app.require_subcommand(1);

    auto* construct = app.add_subcommand("construct", "run the construction and emit a report");
    int n = -1;
    std::string lambda_s, mu_s, a_s, config_path, out_path;
    bool psi_poly = false, modular = false, timings = false;
    bool seed_set = false;
    std::uint64_t seed = 1;
    construct->add_option("--n", n, "family parameter (degree 4n+1)");
    construct->add_option("--lambda", lambda_s, "lambda parameter (rational, != 0, 1)");
    construct->add_option("--mu", mu_s, "mu parameter (rational, != 0)");
    construct->add_option("--a", a_s, "comma-separated tower parameters");
    construct->add_option("--seed", seed, "sampling seed")->each([&](const std::string&) {
        seed_set = true;
    });
    construct->add_flag("--psi-poly", psi_poly, "compute the composite map as polynomials");
    construct->add_flag("--modular", modular, "flag heavy identity checks as probabilistic");
    construct->add_flag("--timings", timings, "include wall-clock timings (breaks determinism)");
    construct->add_option("--config", config_path, "key-value config file");
    construct->add_option("--out", out_path, "write the report to a file instead of stdout");

    auto* graph = app.add_subcommand("graph", "emit the dual graph in DOT");
    int graph_n = 0;
    graph->add_option("--n", graph_n, "family parameter")->required();

    auto* recheck = app.add_subcommand("recheck", "re-validate a report's certificates");
    std::string report_path;
    recheck->add_option("report", report_path, "report JSON path")->required();

    std::vector<const char*> argv;
    std::string prog = "cremona";
    argv.push_back(prog.c_str());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (construct->parsed()) {
            ConstructionConfig cfg = ConstructionConfig::defaults(n > 0 ? n : 2);
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
                std::stringstream ss;
                ss << in.rdbuf();
                cfg = parse_config_file(ss.str());
            }
            if (n > 0 && cfg.n != n) {
                cfg.n = n;
                cfg.a.assign(static_cast<std::size_t>(n), Rational(1));
            }
            if (!lambda_s.empty()) cfg.lambda = rational_from_string(lambda_s);
            if (!mu_s.empty()) cfg.mu = rational_from_string(mu_s);
            if (!a_s.empty()) {
                cfg.a.clear();
                std::istringstream as(a_s);
                std::string piece;
                while (std::getline(as, piece, ',')) cfg.a.push_back(rational_from_string(piece));
            }
            if (psi_poly) cfg.psi_poly = true;
            if (modular) cfg.modular = true;
            if (seed_set) cfg.seed = seed;
            cfg.validate();

            auto t0 = std::chrono::steady_clock::now();
            ConstructionResult result = run_construction(cfg);
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::string text = report_to_string(build_report(result, timings, elapsed));
            if (out_path.empty()) out << text;
            else {
                std::ofstream of(out_path);
                if (!of) throw Error("cannot write to '" + out_path + "'");
                of << text;
            }
            return 0;
        }
        if (graph->parsed()) {
            if (graph_n < 1) {
                err << "error: --n must be >= 1\n";
                return 2;
            }
            ChartTower t = build_tower(graph_n,
                                       std::vector<Rational>(graph_n, Rational(1)));
            out << dual_graph(strict_transform_classes(t)).to_dot();
            return 0;
        }
        if (recheck->parsed()) {
            std::ifstream in(report_path);
            if (!in) {
                err << "error: cannot open '" << report_path << "'\n";
                return 2;
            }
            nlohmann::json rep;
            try {
                in >> rep;
            } catch (const std::exception& e) {
                err << "error: malformed report: " << e.what() << "\n";
                return 2;
            }
            RecheckOutcome outcome = recheck_report(rep);
            for (const auto& [kind, ok] : outcome.checks)
                out << kind << ": " << (ok ? "ok" : "MISMATCH") << "\n";
            if (!outcome.ok) {
                for (const auto& [kind, ok] : outcome.checks)
                    if (!ok) err << "recheck failed: " << kind << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace cremona
