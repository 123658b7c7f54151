#pragma once

#include <dec/dec.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace dec::cli {

using ojson = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    std::string mesh;
    std::string rule = "auto";
    int k = 1;
    std::string kind = "whitney";
    int grid = 64;
    std::vector<double> P{2, 5, 10};
    int system = 1;
    std::string out;
    double tol = 1e-8;

    std::string problem;
    std::string formulation = "primal";
    std::string gauge = "pin";
    std::string load;
    std::string space = "primal";
    int compare = 0;
    int count = 6;
    int samples = 21;
    int generator = 0;
};

inline int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::parse: return 2;
    case ErrorKind::degenerate: return 3;
    case ErrorKind::incompatible: return 4;
    case ErrorKind::rank: return 5;
    case ErrorKind::invalid: return 6;
    }
    return 1;
}

namespace detail {

inline std::string one_line(std::string s)
{
    for (char& ch : s)
        if (ch == '\n' || ch == '\r') ch = ' ';
    return s;
}

/// Built-in meshes: two-tri, fig8:P, grid:NxM, tet-grid:NxMxL. Anything else is a file.
inline SimplicialComplex load_mesh(const std::string& spec)
{
    std::smatch m;
    if (spec == "two-tri") return generate_grid(1, 1);
    if (std::regex_match(spec, m, std::regex(R"(fig8:([0-9.eE+-]+))"))) return generate_fig8(std::stod(m[1]));
    if (std::regex_match(spec, m, std::regex(R"(grid:(\d+)x(\d+))"))) return generate_grid(std::stoi(m[1]), std::stoi(m[2]));
    if (std::regex_match(spec, m, std::regex(R"(tet-grid:(\d+)x(\d+)x(\d+))")))
        return generate_tet_grid(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
    if (spec.empty()) throw Error(ErrorKind::invalid, "--mesh is required");
    if (!std::filesystem::exists(spec)) throw Error(ErrorKind::parse, "mesh file not found: " + spec);
    return read_mesh(spec);
}

inline CenterRule resolve_rule(const RunConfig& cfg, HodgeKind kind)
{
    if (cfg.rule == "barycentric") return CenterRule::barycentric;
    if (cfg.rule == "circumcentric") return CenterRule::circumcentric;
    return kind == HodgeKind::diag ? CenterRule::circumcentric : CenterRule::barycentric;
}

inline std::filesystem::path out_path(const RunConfig& cfg, const std::string& name)
{
    std::filesystem::create_directories(cfg.out);
    return std::filesystem::path(cfg.out) / name;
}

inline ojson space_json(IndexSpace s)
{
    return ojson{{"space", s.space == Space::primal ? "primal" : "dual"}, {"degree", s.degree}};
}

inline ojson vector_json(const Eigen::VectorXd& v)
{
    ojson a = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline Eigen::VectorXd unit(Index n, Index i)
{
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = 1;
    return e;
}

/// A compatible load by construction: the derivative of a unit cochain on an
/// interior simplex, i.e. a unit source next to a unit sink.
inline Eigen::VectorXd default_load(const SimplicialComplex& c, Problem p, int system)
{
    const int n = c.dimension();
    auto interior = [&](int k) {
        for (Index i = 0; i < c.size(k); ++i)
            if (!c.is_boundary(k, i)) return i;
        return Index(0);
    };
    auto d = [&](int k) { return incidence_matrix(c, k).matrix; };
    if (p == Problem::darcy) {
        if (system <= 2) return d(n - 1) * unit(c.size(n - 1), interior(n - 1));
        return SparseMatrix(d(0).transpose()) * unit(c.size(1), interior(1));
    }
    if (system <= 2) return SparseMatrix(d(n - 2).transpose()) * unit(c.size(n - 1), interior(n - 1));
    return d(1) * unit(c.size(1), interior(1));
}

inline int hodge_degree(const SimplicialComplex& c, Problem p, int system)
{
    (void)p;
    return system <= 2 ? c.dimension() - 1 : 1;
}

struct SolveResult {
    MixedSystem system;
    SolveReport report;
    ConstraintResiduals constraints;
    Eigen::VectorXd load;
};

inline SolveResult solve_one(const SimplicialComplex& c, const RunConfig& cfg, Problem problem, int system)
{
    if (system < 1 || system > 4) throw Error(ErrorKind::invalid, "--system must be 1..4");
    HodgeKind kind = parse_hodge_kind(cfg.kind);
    DualMesh d = build_dual(c, resolve_rule(cfg, kind));
    QuadratureConfig q;
    q.grid = cfg.grid;
    HodgePair h = hodge_pair(c, d, hodge_degree(c, problem, system), kind, q);
    Eigen::VectorXd load = cfg.load.empty() ? default_load(c, problem, system) : read_cochain_csv(cfg.load);
    MixedSystem s = problem == Problem::darcy ? assemble_darcy(c, system, load, h)
                                              : assemble_magnetostatics(c, system, load, h);
    SolveReport r = solve(s, cfg.gauge == "augment" ? Gauge::augment : Gauge::pin);
    return {s, r, constraint_residuals(c, problem, system, load, r.pair), load};
}

} // namespace detail

inline void cmd_info(const RunConfig& cfg, std::ostream& out)
{
    SimplicialComplex c = detail::load_mesh(cfg.mesh);
    const int n = c.dimension();
    ojson counts = ojson::array(), boundary = ojson::array();
    long euler = 0;
    for (int k = 0; k <= n; ++k) {
        counts.push_back(c.size(k));
        Index b = 0;
        for (Index i = 0; i < c.size(k); ++i) b += c.is_boundary(k, i) ? 1 : 0;
        boundary.push_back(b);
        euler += (k % 2 ? -1 : 1) * static_cast<long>(c.size(k));
    }
    double worst = 0;
    for (Index t = 0; t < c.size(n); ++t) worst = std::max(worst, aspect_ratio(c, t));
    out << ojson{{"command", "info"}, {"dimension", n},        {"counts", counts},
                 {"boundary", boundary}, {"euler", euler}, {"volume", c.volume()}, {"worst_aspect", worst}}
                .dump()
        << '\n';
}

inline void cmd_dual(const RunConfig& cfg, std::ostream& out)
{
    SimplicialComplex c = detail::load_mesh(cfg.mesh);
    CenterRule rule = cfg.rule == "circumcentric" ? CenterRule::circumcentric : CenterRule::barycentric;
    DualMesh d = build_dual(c, rule);
    const int n = c.dimension();
    ojson degrees = ojson::array();
    std::ostringstream csv;
    csv << "degree,id,primal_measure,dual_measure\n";
    for (int k = 0; k <= n; ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo, total = 0;
        Index outside = 0;
        for (Index i = 0; i < c.size(k); ++i) {
            double m = d.measure(k, i);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
            total += m;
            outside += d.center_outside(k, i) ? 1 : 0;
            csv << k << ',' << i << ',' << format_double(c.measure(k, i)) << ',' << format_double(m) << '\n';
        }
        degrees.push_back(ojson{{"k", k}, {"dual_min", lo}, {"dual_max", hi}, {"total", total}, {"centers_outside", outside}});
    }
    ojson j{{"command", "dual"}, {"rule", to_string(rule)}, {"degrees", degrees}, {"diagnostics", d.diagnostics()}};
    if (!cfg.out.empty()) {
        auto p = detail::out_path(cfg, "dual_measures.csv");
        std::ofstream(p) << csv.str();
        j["file"] = p.string();
    }
    out << j.dump() << '\n';
}

inline HodgeOperator assemble_from(const SimplicialComplex& c, const RunConfig& cfg)
{
    HodgeKind kind = parse_hodge_kind(cfg.kind);
    DualMesh d = build_dual(c, detail::resolve_rule(cfg, kind));
    QuadratureConfig q;
    q.grid = cfg.grid;
    return assemble_hodge(c, d, cfg.k, kind, q);
}

inline void cmd_hodge(const RunConfig& cfg, std::ostream& out)
{
    SimplicialComplex c = detail::load_mesh(cfg.mesh);
    HodgeOperator h = assemble_from(c, cfg);
    Eigen::MatrixXd m(h.matrix);
    double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    ojson j{{"command", "hodge"},         {"k", h.degree},          {"kind", to_string(h.kind)},
            {"provenance", h.provenance}, {"rows", h.matrix.rows()}, {"nonzeros", h.matrix.nonZeros()},
            {"asymmetry", asym},          {"warnings", h.warnings}};
    if (!cfg.out.empty()) {
        auto p = detail::out_path(cfg, "hodge_k" + std::to_string(h.degree) + "_" + to_string(h.kind) + ".mtx");
        write_matrix_market(p.string(), h.matrix);
        j["file"] = p.string();
    }
    out << j.dump() << '\n';
}

inline void cmd_cond(const RunConfig& cfg, std::ostream& out)
{
    SimplicialComplex c = detail::load_mesh(cfg.mesh);
    HodgeOperator h = assemble_from(c, cfg);
    ConditionEstimate e = condition_estimate(Eigen::MatrixXd(h.matrix));
    out << ojson{{"command", "cond"},          {"k", h.degree},       {"kind", to_string(h.kind)},
                 {"lambda_min", e.lambda_min}, {"lambda_max", e.lambda_max}, {"ratio", e.singular ? -1.0 : e.ratio},
                 {"singular", e.singular}}
                .dump()
        << '\n';
}

inline void check_P(const std::vector<double>& Ps)
{
    if (Ps.empty()) throw Error(ErrorKind::invalid, "--P needs at least one value");
    for (double P : Ps)
        if (!(P > 0.5)) throw Error(ErrorKind::invalid, "P must exceed 1/2, got " + format_double(P));
}

inline void cmd_table1(const RunConfig& cfg, std::ostream& out)
{
    check_P(cfg.P);
    Table1Config t;
    t.grid = cfg.grid;
    auto rows = table1_experiment(cfg.P, t);
    std::string csv = table1_csv(rows);
    if (cfg.out.empty()) {
        out << csv;
        return;
    }
    auto p = detail::out_path(cfg, "table1.csv");
    std::ofstream(p) << csv;
    for (const auto& r : rows)
        out << ojson{{"command", "table1"},         {"P", r.P}, {"cond_diag", r.cond_diag},
                     {"cond_whitney", r.cond_whitney}, {"cond_dual_inverse", r.cond_dual_inverse}, {"file", p.string()}}
                   .dump()
            << '\n';
}

inline void cmd_solve(const RunConfig& cfg, std::ostream& out)
{
    SimplicialComplex c = detail::load_mesh(cfg.mesh);
    Problem problem = cfg.problem == "darcy" ? Problem::darcy : Problem::magnetostatics;
    auto a = detail::solve_one(c, cfg, problem, cfg.system);
    const auto& pr = a.report.pair;
    ojson j{{"command", "solve"},
            {"problem", cfg.problem},
            {"system", cfg.system},
            {"formulation", a.system.name},
            {"kind", cfg.kind},
            {"gauge", a.report.gauge},
            {"size", a.report.size},
            {"rank", a.report.rank},
            {"nullity", a.report.nullity},
            {"residual", a.report.residual},
            {"divergence_residual", a.constraints.divergence},
            {"source_residual", a.constraints.source},
            {pr.first_name, {{"cochain", detail::space_json(pr.first_space)}, {"values", detail::vector_json(pr.first)}}},
            {pr.second_name, {{"cochain", detail::space_json(pr.second_space)}, {"values", detail::vector_json(pr.second)}}}};
    if (cfg.compare) {
        auto b = detail::solve_one(c, cfg, problem, cfg.compare);
        const auto& qb = b.report.pair;
        if (!(qb.first_space == pr.first_space) || !(qb.second_space == pr.second_space))
            throw Error(ErrorKind::invalid, "systems " + std::to_string(cfg.system) + " and " +
                                                std::to_string(cfg.compare) + " recover pairs in different spaces");
        double d1 = (pr.first - qb.first).cwiseAbs().maxCoeff();
        double d2 = pr.second_is_potential ? (mean_free(pr.second) - mean_free(qb.second)).cwiseAbs().maxCoeff()
                                           : (pr.second - qb.second).cwiseAbs().maxCoeff();
        j["compare"] = {{"system", cfg.compare},
                        {"diff_" + pr.first_name, d1},
                        {"diff_" + pr.second_name, d2},
                        {"agree", std::max(d1, d2) <= cfg.tol}};
    }
    if (!cfg.out.empty()) {
        std::string stem = cfg.problem + "_" + std::to_string(cfg.system) + "_";
        write_cochain_csv(detail::out_path(cfg, stem + pr.first_name + ".csv").string(), pr.first);
        write_cochain_csv(detail::out_path(cfg, stem + pr.second_name + ".csv").string(), pr.second);
        write_matrix_market(detail::out_path(cfg, stem + "system.mtx").string(), a.system.matrix().sparseView());
    }
    out << j.dump() << '\n';
}

inline void cmd_wave(const RunConfig& cfg, std::ostream& out)
{
    SimplicialComplex c = detail::load_mesh(cfg.mesh);
    HodgeKind kind = parse_hodge_kind(cfg.kind);
    DualMesh d = build_dual(c, detail::resolve_rule(cfg, kind));
    QuadratureConfig q;
    q.grid = cfg.grid;
    WaveFormulation f = cfg.formulation == "dual" ? WaveFormulation::dual : WaveFormulation::primal;
    WaveSystem w = assemble_wave(c, f, hodge_pair(c, d, 1, kind, q), hodge_pair(c, d, 2, kind, q));
    w.solve();
    const double top = w.omega2.cwiseAbs().maxCoeff();
    int zeros = 0;
    ojson nonzero = ojson::array();
    for (Eigen::Index i = 0; i < w.omega2.size(); ++i) {
        if (std::abs(w.omega2(i)) <= 1e-9 * top)
            ++zeros;
        else if (static_cast<int>(nonzero.size()) < cfg.count)
            nonzero.push_back(w.omega2(i));
    }
    out << ojson{{"command", "wave"}, {"formulation", cfg.formulation}, {"kind", to_string(kind)},
                 {"size", w.omega2.size()}, {"zero_modes", zeros}, {"omega2", nonzero}}
                .dump()
        << '\n';
}

inline void cmd_sample_field(const RunConfig& cfg, std::ostream& out)
{
    SimplicialComplex c = detail::load_mesh(cfg.mesh);
    const int n = c.dimension();
    if (cfg.k < 0 || cfg.k > n) throw Error(ErrorKind::invalid, "--k out of range");
    const bool dual = cfg.space == "dual";
    const Index size = c.size(dual ? n - cfg.k : cfg.k);
    Eigen::VectorXd w;
    if (cfg.load.empty()) {
        if (cfg.generator < 0 || cfg.generator >= size) throw Error(ErrorKind::invalid, "--generator out of range");
        w = detail::unit(size, cfg.generator);
    } else {
        w = read_cochain_csv(cfg.load);
    }
    std::optional<DualMesh> d;
    std::optional<DualWhitneyBasis> basis;
    std::optional<DualInterpolant> di;
    std::optional<WhitneyInterpolant> pi;
    if (dual) {
        d.emplace(build_dual(c, CenterRule::barycentric));
        basis.emplace(c, *d);
        di.emplace(*basis, cfg.k, w);
    } else {
        pi.emplace(c, cfg.k, w);
    }
    Point lo = c.point(0), hi = c.point(0);
    for (Index v = 0; v < c.size(0); ++v) {
        lo = lo.cwiseMin(c.point(v));
        hi = hi.cwiseMax(c.point(v));
    }
    const int comps = (cfg.k == 0 || cfg.k == n) ? 1 : n;
    std::ostringstream csv;
    const char* axes[] = {"x", "y", "z"};
    for (int i = 0; i < n; ++i) csv << axes[i] << ',';
    for (int i = 0; i < comps; ++i) csv << "v" << i << (i + 1 < comps ? "," : "\n");
    const int s = cfg.samples;
    long written = 0;
    const int sz = n == 3 ? s : 1;
    for (int iz = 0; iz < sz; ++iz)
        for (int iy = 0; iy < s; ++iy)
            for (int ix = 0; ix < s; ++ix) {
                Point x = lo;
                Point f((ix + 0.5) / s, (iy + 0.5) / s, n == 3 ? (iz + 0.5) / s : 0.0);
                x += (hi - lo).cwiseProduct(f);
                if (!locate(c, x)) continue;
                Point v = dual ? di->at(x) : pi->at(x);
                for (int i = 0; i < n; ++i) csv << format_double(x(i)) << ',';
                for (int i = 0; i < comps; ++i) csv << format_double(v(i)) << (i + 1 < comps ? "," : "\n");
                ++written;
            }
    if (cfg.out.empty()) {
        out << csv.str();
        return;
    }
    auto p = detail::out_path(cfg, "field.csv");
    std::ofstream(p) << csv.str();
    out << ojson{{"command", "sample-field"}, {"space", cfg.space}, {"k", cfg.k}, {"samples", written}, {"file", p.string()}}
               .dump()
        << '\n';
}

inline void cmd_fig8(const RunConfig& cfg, std::ostream& out)
{
    check_P(cfg.P);
    for (double P : cfg.P) {
        SimplicialComplex c = generate_fig8(P);
        ojson j{{"command", "fig8"},
                {"P", P},
                {"vertices", c.size(0)},
                {"edges", c.size(1)},
                {"triangles", c.size(2)},
                {"diag_center", fig8::diag_center(P)},
                {"rho", fig8::rho(P)},
                {"alpha", fig8::alpha(P)},
                {"beta", fig8::beta(P)},
                {"gamma", fig8::gamma(P)},
                {"delta", fig8::delta(P)},
                {"cond_diag", fig8::diag_cond(P)},
                {"cond_whitney", fig8::whitney_cond(P)}};
        if (!cfg.out.empty()) {
            auto p = detail::out_path(cfg, "fig8_P" + format_double(P) + ".json");
            std::ofstream(p) << mesh_to_json(c).dump(1) << '\n';
            j["file"] = p.string();
        }
        out << j.dump() << '\n';
    }
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    RunConfig cfg;
    CLI::App app{"Discrete exterior calculus toolkit: meshes, duals, Hodge stars and mixed systems", "dec"};
    app.require_subcommand(1);

    auto mesh_opt = [&](CLI::App* s) { s->add_option("--mesh", cfg.mesh, "mesh JSON/OFF file, or two-tri, fig8:P, grid:NxM, tet-grid:NxMxL")->required(); };
    auto rule_opt = [&](CLI::App* s) {
        s->add_option("--rule", cfg.rule, "dual center rule")->check(CLI::IsMember({"auto", "barycentric", "circumcentric"}));
    };
    auto kind_opt = [&](CLI::App* s) {
        s->add_option("--kind", cfg.kind, "Hodge star: diag, whitney or dual_inverse")
            ->check(CLI::IsMember({"diag", "whitney", "dual_inverse", "dual-inverse"}));
    };
    auto grid_opt = [&](CLI::App* s) {
        s->add_option("--grid", cfg.grid, "quadrature samples per axis")->check(CLI::Range(16, 1 << 16));
    };
    auto out_opt = [&](CLI::App* s) { s->add_option("--out", cfg.out, "output directory for artifacts"); };

    auto* info = app.add_subcommand("info", "mesh counts and quality");
    mesh_opt(info);

    auto* dual = app.add_subcommand("dual", "dual mesh measures");
    mesh_opt(dual);
    rule_opt(dual);
    out_opt(dual);

    auto* hodge = app.add_subcommand("hodge", "assemble a Hodge star and export it as Matrix Market");
    for (auto* s : {hodge, app.add_subcommand("cond", "condition number of a Hodge star")}) {
        mesh_opt(s);
        rule_opt(s);
        kind_opt(s);
        grid_opt(s);
        s->add_option("--k", cfg.k, "form degree")->check(CLI::Range(0, 3));
        if (s == hodge) out_opt(s);
    }

    auto* table1 = app.add_subcommand("table1", "condition numbers of the three M1 stars on the eight-vertex mesh");
    table1->add_option("--P", cfg.P, "P values")->delimiter(',');
    table1->add_option("--grid", cfg.grid, "quadrature samples per axis")->check(CLI::Range(16, 1 << 16))->default_val(512);
    out_opt(table1);

    auto* solve = app.add_subcommand("solve", "solve a magnetostatics or Darcy mixed system");
    solve->add_option("problem", cfg.problem, "darcy or magneto")->required()->check(CLI::IsMember({"darcy", "magneto"}));
    mesh_opt(solve);
    rule_opt(solve);
    kind_opt(solve);
    grid_opt(solve);
    solve->add_option("--system", cfg.system, "system 1..4");
    solve->add_option("--compare", cfg.compare, "second system to compare against");
    solve->add_option("--load", cfg.load, "source cochain CSV (id,value)")->check(CLI::ExistingFile);
    solve->add_option("--gauge", cfg.gauge, "pin or augment")->check(CLI::IsMember({"pin", "augment"}));
    solve->add_option("--tol", cfg.tol, "agreement tolerance for --compare");
    out_opt(solve);

    auto* wave = app.add_subcommand("wave", "generalized eigenvalues of the wave systems");
    mesh_opt(wave);
    rule_opt(wave);
    kind_opt(wave);
    grid_opt(wave);
    wave->add_option("--formulation", cfg.formulation, "primal or dual")->check(CLI::IsMember({"primal", "dual"}));
    wave->add_option("--count", cfg.count, "number of nonzero eigenvalues to report")->check(CLI::PositiveNumber);

    auto* sample = app.add_subcommand("sample-field", "sample a primal or dual Whitney interpolant to CSV");
    mesh_opt(sample);
    sample->add_option("--space", cfg.space, "primal or dual")->check(CLI::IsMember({"primal", "dual"}));
    sample->add_option("--k", cfg.k, "form degree")->check(CLI::Range(0, 3));
    sample->add_option("--load", cfg.load, "cochain CSV (id,value)")->check(CLI::ExistingFile);
    sample->add_option("--generator", cfg.generator, "basis form to sample when no --load is given");
    sample->add_option("--samples", cfg.samples, "samples per axis")->check(CLI::Range(1, 4096));
    out_opt(sample);

    auto* fig8 = app.add_subcommand("fig8", "eight-vertex mesh and its closed-form Hodge entries");
    fig8->add_option("--P", cfg.P, "P values")->delimiter(',')->default_str("2");
    out_opt(fig8);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (cfg.command == "fig8" && fig8->count("--P") == 0) cfg.P = {2};
    try {
        if (cfg.command == "info") cmd_info(cfg, out);
        else if (cfg.command == "dual") cmd_dual(cfg, out);
        else if (cfg.command == "hodge") cmd_hodge(cfg, out);
        else if (cfg.command == "cond") cmd_cond(cfg, out);
        else if (cfg.command == "table1") cmd_table1(cfg, out);
        else if (cfg.command == "solve") cmd_solve(cfg, out);
        else if (cfg.command == "wave") cmd_wave(cfg, out);
        else if (cfg.command == "sample-field") cmd_sample_field(cfg, out);
        else if (cfg.command == "fig8") cmd_fig8(cfg, out);
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << detail::one_line(e.what()) << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return 1;
    }
    return 0;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"dec"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace dec::cli
