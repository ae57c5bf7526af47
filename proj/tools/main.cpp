#include "CLI11.hpp"
#include "json.hpp"
#include "sdphom/bounds.hpp"
#include "sdphom/gridscan.hpp"
#include "sdphom/ideal.hpp"
#include "sdphom/solver.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace sdphom;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

int env_workers() {
    const char* w = std::getenv("SDPHOM_WORKERS");
    if (!w || !*w) return 0;
    try {
        int v = std::stoi(w);
        return v < 0 ? 0 : v;
    } catch (...) {
        return 0;
    }
}

// Scale to integer coefficients with content 1 and a positive leading
// coefficient, the canonical shape for printing defining polynomials.
MPoly normalize_integer(const MPoly& p) {
    if (p.is_zero()) return p;
    BigInt den(1);
    for (const Term& t : p.terms()) den = lcm(den, t.c.den());
    BigInt num(0);
    for (const Term& t : p.terms()) num = gcd(num, BigInt(t.c.num() * den / t.c.den()));
    Rational scale{den, num};
    if (p.terms()[0].c * scale < Rational(0)) scale = Rational(0) - scale;
    return p * MPoly::constant(p.ctx(), scale);
}

UPoly upoly_from_string(const std::string& s) {
    auto ctx = make_ctx({"t"});
    return MPoly::parse(ctx, s).to_upoly(ctx->id("t"));
}

std::string value_string(const AlgebraicNumber& v) {
    if (v.exact()) return v.exact_value().str();
    return v.decimal(12);
}

std::string point_coord_string(const AlgebraicPoint& p, size_t i) {
    if (p.rational()) return p.rational_coords()[i].str();
    RatInterval box = p.coord_box(i, Rational(1, 1000000000000LL));
    return ((box.lo + box.hi) / Rational(2)).decimal(12);
}

std::string solve_text(const SolveReport& rep, int workers) {
    std::ostringstream out;
    out << "status: " << to_string(rep.status) << "\n";
    out << "exit code: " << exit_code(rep.status) << "\n";
    out << "workers: " << workers << "\n";
    out << "attempts: " << rep.attempts;
    if (rep.perturbation_seed != 0) out << " (last seed " << rep.perturbation_seed << ")";
    out << "\n";
    if (!rep.objective_shift.empty()) {
        out << "objective shift:";
        for (const Rational& d : rep.objective_shift) out << " " << d.str();
        out << "\n";
    }
    if (rep.minimizer) {
        const MinimizerCertificate& mc = *rep.minimizer;
        out << "minimizer:\n";
        for (size_t i = 0; i < mc.point.dim(); ++i)
            out << "  x" << (i + 1) << " = " << point_coord_string(mc.point, i) << "\n";
        out << "value: " << value_string(mc.value) << "\n";
        out << "rank at minimizer: " << mc.cert.rank << "\n";
        if (mc.vertex_shortcut) out << "found by: vertex shortcut\n";
    }
    if (!rep.note.empty()) out << "note: " << rep.note << "\n";
    if (!rep.audit.empty()) {
        out << "strata:\n";
        for (const StratumAudit& row : rep.audit) {
            out << "  r=" << row.r << " iota={";
            for (size_t i = 0; i < row.iota.size(); ++i)
                out << (i ? "," : "") << row.iota[i];
            out << "} degree=" << row.curve_degree << " bound=" << row.degree_bound.get_str()
                << (row.empty ? " empty" : "") << (row.timed_out ? " TIMED-OUT" : "")
                << " time=" << row.elapsed_ms << "ms\n";
        }
    }
    return out.str();
}

int cmd_solve(const std::string& instance_path, const std::string& perturbation_path,
              const SolveConfig& base_cfg, const std::string& output, bool text) {
    Instance inst = parse_instance(read_file(instance_path));
    SolveConfig cfg = base_cfg;
    if (!perturbation_path.empty())
        cfg.perturbation = parse_matrix_document(read_file(perturbation_path));
    SolveReport rep = degenerate_sdp(inst, cfg);
    write_output(output, text ? solve_text(rep, cfg.workers) : report_to_json(rep));
    return exit_code(rep.status);
}

struct ParsedPoint {
    std::vector<Rational> rational;
    std::optional<AlgebraicPoint> algebraic;
};

Rational rat_field(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    throw Error("point file: " + where + " must be an integer or a rational string");
}

ParsedPoint parse_point_document(const std::string& text, int n) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("point file is not valid JSON: ") + e.what());
    }
    ParsedPoint out;
    if (j.contains("q")) {
        AlgebraicPoint p;
        p.q = upoly_from_string(j.at("q").get<std::string>());
        p.q0 = j.contains("q0") ? upoly_from_string(j.at("q0").get<std::string>())
                                : p.q.derivative();
        for (const auto& qi : j.at("qi")) p.qi.push_back(upoly_from_string(qi.get<std::string>()));
        if (static_cast<int>(p.qi.size()) != n)
            throw Error("point file: expected " + std::to_string(n) + " coordinate polynomials");
        const nlohmann::json* iv = nullptr;
        if (j.contains("interval"))
            iv = &j.at("interval");
        else if (j.contains("alpha") && j.at("alpha").contains("interval"))
            iv = &j.at("alpha").at("interval");
        else
            throw Error("point file: parametrized point needs an isolating interval");
        Rational lo = rat_field(iv->at(0), "interval");
        Rational hi = rat_field(iv->at(1), "interval");
        p.alpha = lo == hi ? AlgebraicNumber::rational(lo)
                           : AlgebraicNumber::root_of(p.q, IsolatingInterval{lo, hi});
        out.algebraic = std::move(p);
        return out;
    }
    if (!j.contains("coordinates"))
        throw Error("point file needs either \"coordinates\" or a parametrized point");
    for (const auto& c : j.at("coordinates")) out.rational.push_back(rat_field(c, "coordinates"));
    if (static_cast<int>(out.rational.size()) != n)
        throw Error("point file: expected " + std::to_string(n) + " coordinates");
    return out;
}

int cmd_verify(const std::string& instance_path, const std::string& point_path, bool text) {
    Instance inst = parse_instance(read_file(instance_path));
    ParsedPoint pt = parse_point_document(read_file(point_path), inst.pencil.n);
    PSDCertificate cert;
    std::string value;
    if (pt.algebraic) {
        cert = psd_check(inst.pencil, *pt.algebraic);
        UPoly num;
        for (size_t i = 0; i < pt.algebraic->qi.size(); ++i)
            num = num + pt.algebraic->qi[i] * inst.objective.coeff[i];
        if (num.is_zero())
            value = "0";
        else
            value = value_string(algebraic_ratio(pt.algebraic->alpha, num, pt.algebraic->q0));
    } else {
        cert = psd_check(inst.pencil, pt.rational);
        value = inst.objective.at(pt.rational).str();
    }
    const char* verdict = cert.verdict == PsdVerdict::PD
                              ? "positive definite"
                              : cert.verdict == PsdVerdict::PSD ? "positive semidefinite"
                                                                : "not positive semidefinite";
    if (text) {
        std::cout << "verdict: " << verdict << "\n";
        std::cout << "rank: " << cert.rank << "\n";
        std::cout << "charpoly coefficient signs:";
        for (int s : cert.coeff_signs) std::cout << " " << s;
        std::cout << "\nfeasible: " << (cert.feasible() ? "yes" : "no") << "\n";
        std::cout << "objective value: " << value << "\n";
    } else {
        nlohmann::json j;
        j["verdict"] = verdict;
        j["rank"] = cert.rank;
        j["coeff_signs"] = cert.coeff_signs;
        j["feasible"] = cert.feasible();
        j["value"] = value;
        std::cout << j.dump(2) << "\n";
    }
    return cert.feasible() ? 0 : 2;
}

int cmd_oracle(const std::string& instance_path, double half_width, int points, int rounds,
               double tol, int workers, int growth_steps, bool text) {
    Instance inst = parse_instance(read_file(instance_path));
    if (inst.pencil.m > 4 || inst.pencil.n > 3)
        throw Error("oracle handles m <= 4 and n <= 3 only");
    GridScanOptions opt;
    opt.points_per_axis = points;
    opt.zoom_rounds = rounds;
    opt.psd_tolerance = tol;
    opt.workers = workers;
    GridScanResult res;
    double used = half_width;
    for (int k = 0; k <= growth_steps; ++k) {
        used = half_width * static_cast<double>(1 << k);
        opt.lo.assign(static_cast<size_t>(inst.pencil.n), -used);
        opt.hi.assign(static_cast<size_t>(inst.pencil.n), used);
        res = grid_scan(inst, opt);
        if (res.feasible_found && !res.on_boundary) break;
    }
    bool possibly_unbounded = res.feasible_found && res.on_boundary;
    if (text) {
        if (res.feasible_found) {
            std::cout << "estimate: " << res.value << "\n";
            std::cout << "at:";
            for (double x : res.argmin) std::cout << " " << x;
            std::cout << "\n";
        } else {
            std::cout << "no feasible grid node found; the set may be empty or "
                         "lower-dimensional\n";
        }
        if (possibly_unbounded) std::cout << "possibly unbounded\n";
        std::cout << "scanned half-width " << used << ", " << res.evaluated << " nodes, "
                  << res.feasible << " feasible (non-certified numeric estimate)\n";
    } else {
        nlohmann::json j;
        j["feasible_found"] = res.feasible_found;
        j["value"] = res.value;
        j["argmin"] = res.argmin;
        j["on_boundary"] = res.on_boundary;
        j["possibly_unbounded"] = possibly_unbounded;
        j["evaluated"] = res.evaluated;
        j["feasible"] = res.feasible;
        j["half_width"] = used;
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_bounds(int m_lo, int m_hi, int n_lo, int n_hi, bool text) {
    std::vector<StratumBounds> rows = bounds_table(m_lo, m_hi, n_lo, n_hi);
    if (text) {
        std::cout << "m  n  r  c   N   theta1          curve_bound     theta_hns       "
                     "comparison\n";
        for (const StratumBounds& b : rows) {
            std::ostringstream line;
            line << b.m << "  " << b.n << "  " << b.r << "  " << b.c << "   " << b.total_vars
                 << "   " << b.theta1.get_str() << "  " << b.curve_bound.get_str() << "  "
                 << b.theta_hns.get_str() << "  " << b.comparison_bound.get_str();
            std::cout << line.str() << "\n";
        }
        std::cout << "\noperation-count estimates (never timed against):\n";
        for (int m = m_lo; m <= m_hi; ++m)
            for (int n = n_lo; n <= n_hi; ++n)
                std::cout << "  m=" << m << " n=" << n << ": "
                          << complexity_estimate(m, n).get_str() << "\n";
    } else {
        nlohmann::json j;
        j["rows"] = nlohmann::json::array();
        for (const StratumBounds& b : rows) {
            nlohmann::json r;
            r["m"] = b.m;
            r["n"] = b.n;
            r["r"] = b.r;
            r["c"] = b.c;
            r["total_vars"] = b.total_vars;
            r["theta1"] = b.theta1.get_str();
            r["curve_bound"] = b.curve_bound.get_str();
            r["theta_hns"] = b.theta_hns.get_str();
            r["comparison_bound"] = b.comparison_bound.get_str();
            j["rows"].push_back(r);
        }
        j["complexity"] = nlohmann::json::array();
        for (int m = m_lo; m <= m_hi; ++m)
            for (int n = n_lo; n <= n_hi; ++n) {
                nlohmann::json c;
                c["m"] = m;
                c["n"] = n;
                c["estimate"] = complexity_estimate(m, n).get_str();
                j["complexity"].push_back(c);
            }
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

const char* kExampleInstance = R"({
  "m": 2,
  "n": 2,
  "matrices": [
    [["1", "-1"], ["-1", "-1"]],
    [["-1", "0"], ["0", "1"]],
    [["0", "1"], ["1", "0"]]
  ],
  "objective": ["88", "-94"]
})";

int cmd_example() {
    std::cout << "Built-in worked example: the spectrahedron of\n"
              << "  A(x) = [[1 - x1, x2 - 1], [x2 - 1, x1 - 1]]\n"
              << "is the single point (1, 1), where the pencil vanishes. Every step of\n"
              << "the solver can be written out by hand at this size.\n\n";
    Instance inst = parse_instance(kExampleInstance);
    std::cout << "instance:\n" << instance_to_json(inst) << "\n";

    std::cout << "rank-1 incidence systems (unperturbed):\n";
    for (int pin : {1, 2}) {
        IncidenceSystem inc = build_incidence(inst.pencil, std::nullopt, 1, {pin});
        std::cout << "  pinning row " << pin << ":\n";
        for (const MPoly& p : inc.polys) std::cout << "    " << p.str() << " = 0\n";
    }
    std::cout << "\n";

    std::cout << "regularity of the pinning-1 system perturbed by the identity:\n";
    IncidenceSystem inc_id = build_incidence(inst.pencil, QMatrix::identity(2), 1, {1});
    bool singular_only_at_zero = true;
    for (const Rational& e : {Rational(0), Rational(1), Rational(1, 2), Rational(1, 7)}) {
        RegularityReport rep = regularity_check(inc_id, e);
        std::cout << "  eps = " << e.str() << ": " << (rep.regular() ? "regular" : "singular")
                  << "\n";
        if ((e == Rational(0)) != !rep.regular()) singular_only_at_zero = false;
    }
    if (singular_only_at_zero) std::cout << "  singular iff eps = 0\n";
    std::cout << "\n";

    RegularityReport sing = regularity_check(inc_id, Rational(0));
    if (!sing.regular()) {
        std::cout << "singular locus of the unperturbed system:\n";
        for (const MPoly& g : sing.witness)
            std::cout << "  " << normalize_integer(g).str() << " = 0\n";
        const CtxPtr& ctx = sing.witness.front().ctx();
        std::string yname;
        for (const std::string& nm : ctx->names())
            if (nm[0] == 'y') yname = nm;
        MPoly x1 = MPoly::variable(ctx, "x1");
        MPoly x2 = MPoly::variable(ctx, "x2");
        MPoly y = MPoly::variable(ctx, yname);
        std::vector<MPoly> conj = {x1 - MPoly::constant(ctx, 1), x2 - MPoly::constant(ctx, 1),
                                   y * y + MPoly::constant(ctx, 1)};
        if (ideal_equal(sing.witness, conj))
            std::cout << "  = the conjugate pair (1, 1, +i), (1, 1, -i)\n";
        std::vector<VarId> drop;
        for (const std::string& nm : ctx->names())
            if (nm != "x1" && nm != "x2") drop.push_back(ctx->id(nm));
        std::vector<MPoly> proj = eliminate(sing.witness, drop);
        std::cout << "  x-projection:";
        for (const MPoly& g : proj) std::cout << " " << normalize_integer(g).str() << " = 0;";
        std::cout << "  the single point (1, 1)\n\n";
    }

    QMatrix b = QMatrix::from_rows({{Rational(80), Rational(-68)}, {Rational(-68), Rational(109)}});
    std::cout << "perturbation for the homotopy:\n  B = [[80, -68], [-68, 109]]\n\n";
    IncidenceSystem inc_b = build_incidence(inst.pencil, b, 1, {1});
    LagrangeSystem lag = build_lagrange(inc_b, inst.objective);
    StratumCurve curve = odp(inst.pencil, lag);
    std::cout << "homotopy curve for rank 1, pinning row 1 (eps kept):\n";
    for (const MPoly& g : curve.basis) std::cout << "  " << normalize_integer(g).str() << " = 0\n";
    std::vector<MPoly> shadow = eliminate(curve.basis, {curve.ctx->id("eps")});
    std::cout << "its x-shadow after eliminating eps:\n";
    for (const MPoly& g : shadow) std::cout << "  " << normalize_integer(g).str() << " = 0\n";
    std::cout << "\n";

    SolveConfig cfg;
    cfg.perturbation = b;
    cfg.disable_zero_shortcircuit = true;
    SolveReport rep = degenerate_sdp(inst, cfg);
    std::cout << "full homotopy solve: status " << to_string(rep.status);
    if (rep.minimizer) {
        std::cout << ", minimizer (";
        for (size_t i = 0; i < rep.minimizer->point.dim(); ++i)
            std::cout << (i ? ", " : "") << point_coord_string(rep.minimizer->point, i);
        std::cout << "), value " << value_string(rep.minimizer->value);
    }
    std::cout << "\n";
    SolveReport quick = degenerate_sdp(inst, SolveConfig{});
    std::cout << "default solve (vertex shortcut): status " << to_string(quick.status)
              << ", value " << value_string(quick.minimizer->value) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact semidefinite programming by rank-stratified perturbation homotopy"};
    app.require_subcommand(1);

    std::string instance_path, perturbation_path, output, point_path;
    bool text = false, json_flag = false;
    SolveConfig cfg;
    cfg.workers = env_workers();

    CLI::App* solve = app.add_subcommand("solve", "solve an instance exactly");
    solve->add_option("instance", instance_path, "instance JSON file")->required();
    solve->add_option("--perturbation-file", perturbation_path,
                      "JSON 2D array overriding the sampled perturbation");
    solve->add_option("--seed", cfg.seed, "perturbation sampling seed");
    solve->add_option("--reseeds", cfg.reseeds, "extra perturbation draws on genericity failure");
    solve->add_option("--timeout-ms", cfg.stratum_timeout_ms, "per-stratum time budget");
    solve->add_option("--workers", cfg.workers,
                      "stratum worker threads (0 = hardware, 1 = serial); also SDPHOM_WORKERS");
    solve->add_option("--max-rank", cfg.max_rank, "cap on the rank strata (-1 = all)");
    solve->add_flag("--no-zero-shortcut", cfg.disable_zero_shortcircuit,
                    "skip the pencil-zero vertex shortcut");
    solve->add_flag("--eager-saturation", cfg.eager_rank_saturation,
                    "apply the rank saturation before the first dimension probe");
    solve->add_flag("--perturb-objective", cfg.allow_objective_perturbation,
                    "nudge the objective by tiny rationals to restore genericity");
    solve->add_option("--output", output, "write the report here instead of stdout");
    solve->add_flag("--text", text, "human-readable output");
    solve->add_flag("--json", json_flag, "JSON output (default)");

    CLI::App* verify = app.add_subcommand("verify", "check feasibility of a point exactly");
    verify->add_option("instance", instance_path, "instance JSON file")->required();
    verify->add_option("point", point_path, "point JSON file")->required();
    verify->add_flag("--text", text, "human-readable output");
    verify->add_flag("--json", json_flag, "JSON output (default)");

    double half_width = 4.0, tol = 1e-9;
    int points = 121, rounds = 24, growth = 3, oracle_workers = env_workers();
    CLI::App* oracle = app.add_subcommand(
        "oracle", "floating-point grid estimate of the minimum (non-certified)");
    oracle->add_option("instance", instance_path, "instance JSON file")->required();
    oracle->add_option("--box", half_width, "initial box half-width");
    oracle->add_option("--points", points, "grid points per axis");
    oracle->add_option("--rounds", rounds, "zoom rounds per box");
    oracle->add_option("--tol", tol, "eigenvalue feasibility threshold");
    oracle->add_option("--growth", growth, "box doublings when the edge is hit");
    oracle->add_option("--workers", oracle_workers, "scan threads (0 = hardware)");
    oracle->add_flag("--text", text, "human-readable output");
    oracle->add_flag("--json", json_flag, "JSON output (default)");

    int m_lo = 2, m_hi = 5, n_lo = 1, n_hi = 6;
    CLI::App* bounds = app.add_subcommand("bounds", "degree and cost bound tables");
    bounds->add_option("--m-lo", m_lo, "smallest matrix size");
    bounds->add_option("--m-hi", m_hi, "largest matrix size");
    bounds->add_option("--n-lo", n_lo, "smallest variable count");
    bounds->add_option("--n-hi", n_hi, "largest variable count");
    bounds->add_flag("--text", text, "human-readable output");
    bounds->add_flag("--json", json_flag, "JSON output (default)");

    CLI::App* example = app.add_subcommand("example", "walk through the built-in worked example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            cfg.validate();
            return cmd_solve(instance_path, perturbation_path, cfg, output, text && !json_flag);
        }
        if (verify->parsed()) return cmd_verify(instance_path, point_path, text && !json_flag);
        if (oracle->parsed())
            return cmd_oracle(instance_path, half_width, points, rounds, tol, oracle_workers,
                              growth, text && !json_flag);
        if (bounds->parsed()) return cmd_bounds(m_lo, m_hi, n_lo, n_hi, text && !json_flag);
        if (example->parsed()) return cmd_example();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
