// Acceptance checks, one PASS/FAIL line per criterion. Usage: acceptance [1-5 ...]
#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

using namespace dec;

namespace {

// tolerances
constexpr double table_rel = 0.02;       // Diag and Whitney condition numbers
constexpr double table_abs_dual = 0.3;   // dual-inverse condition numbers
constexpr double table_seconds = 60;
constexpr double closed_form_diag = 1e-12;
constexpr double closed_form_whitney = 1e-10;
constexpr double duality_tol = 1e-10;
constexpr double exact_2d = 1e-10;
constexpr double sampled = 1e-3;
constexpr double nonneg = -1e-12;
constexpr double equivalence = 1e-8;
constexpr double conservation = 1e-10;

struct Verdict {
    bool ok = true;
    void check(bool c, const std::string& what)
    {
        if (!c) {
            ok = false;
            std::printf("  fail: %s\n", what.c_str());
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

bool criterion1()
{
    Verdict v;
    std::ostringstream out, err;
    auto t0 = std::chrono::steady_clock::now();
    int code = cli::run({"table1", "--P", "2,5,10", "--grid", "512"}, out, err);
    const double secs = seconds_since(t0);
    v.check(code == 0, "table1 exited with " + std::to_string(code) + " " + err.str());
    const double want_diag[] = {6.3, 17.2, 34.6}, want_whit[] = {3.2, 9.9, 21.6}, want_dual[] = {1.5, 1.3, 1.4};
    std::istringstream csv(out.str());
    std::string line;
    std::getline(csv, line);
    v.check(line == "P,cond_diag,cond_whitney,cond_dual_inverse", "header: " + line);
    for (int i = 0; i < 3; ++i) {
        double P = 0, d = 0, w = 0, m = 0;
        if (!std::getline(csv, line) || std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &P, &d, &w, &m) != 4) {
            v.check(false, "missing row " + std::to_string(i));
            continue;
        }
        const bool okd = std::abs(d - want_diag[i]) <= table_rel * want_diag[i];
        const bool okw = std::abs(w - want_whit[i]) <= table_rel * want_whit[i];
        const bool okm = std::abs(m - want_dual[i]) <= table_abs_dual;
        std::printf("  P=%g diag %.4f (want %.1f ±2%%) %s | whitney %.4f (want %.1f ±2%%) %s | dual %.4f (want %.1f ±0.3) %s\n",
                    P, d, want_diag[i], okd ? "ok" : "off", w, want_whit[i], okw ? "ok" : "off", m, want_dual[i],
                    okm ? "ok" : "off");
        v.check(okd, "cond_diag at P=" + format_double(P));
        v.check(okw, "cond_whitney at P=" + format_double(P));
        v.check(okm, "cond_dual_inverse at P=" + format_double(P));
        std::printf("  note: with the closed-form rho entry the diag ratio is %.4f\n", fig8::diag_cond(P));
    }
    std::printf("  runtime %.2f s (limit %.0f s)\n", secs, table_seconds);
    v.check(secs <= table_seconds, "runtime");
    return v.ok;
}

// ---------------------------------------------------------------------------

bool criterion2()
{
    Verdict v;
    for (double P : {2.0, 5.0, 10.0}) {
        auto c = generate_fig8(P);
        auto d = build_dual(c, CenterRule::circumcentric);
        Eigen::MatrixXd m(assemble_diag(c, d, 1).matrix);
        const double centre = m(0, 0), want_c = (4 * P * P - 1) / (4 * P);
        std::printf("  P=%g diag(s12) %.15g vs %.15g\n", P, centre, want_c);
        v.check(std::abs(centre - want_c) <= closed_form_diag * want_c, "diag centre entry at P=" + format_double(P));
        for (int e = 1; e <= 4; ++e) {
            const double got = m(e, e), rho = fig8::rho(P);
            if (e == 1) std::printf("  P=%g diag(s13) %.15g vs rho %.15g\n", P, got, rho);
            v.check(std::abs(got - rho) <= closed_form_diag * rho,
                    "diag entry " + std::to_string(e) + " vs rho at P=" + format_double(P));
        }
        Eigen::MatrixXd w(assemble_whitney(c, 1).matrix);
        Eigen::MatrixXd got = fig8::gauge_block(w.topLeftCorner(5, 5));
        Eigen::MatrixXd want = fig8::gauge_block(fig8::whitney_block(P));
        const double err = (got - want).cwiseAbs().maxCoeff();
        std::printf("  P=%g Whitney block max deviation %.3g\n", P, err);
        v.check(err <= closed_form_whitney, "Whitney block at P=" + format_double(P));
    }
    return v.ok;
}

// ---------------------------------------------------------------------------

SimplicialComplex random_mesh(std::mt19937& rng, int i)
{
    std::uniform_int_distribution<int> size(1, 6), size3(1, 3);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    SimplicialComplex c = i % 3 == 2 ? generate_tet_grid(size3(rng), size3(rng), size3(rng))
                                     : generate_grid(size(rng), size(rng), 0, 0, 1, 1, rng() % 2 == 1);
    const int n = c.dimension();
    // move interior vertices by up to a fifth of the smallest spacing
    double h = 1;
    for (Index e = 0; e < c.size(1); ++e) h = std::min(h, c.measure(1, e));
    std::vector<Point> pts = c.points();
    for (Index p = 0; p < c.size(0); ++p) {
        if (c.is_boundary(0, p)) continue;
        for (int a = 0; a < n; ++a) pts[p](a) += h * jitter(rng) / std::sqrt(2.0);
    }
    return with_points(c, pts);
}

// ∫ over primal simplex j of the Whitney form of simplex i; Whitney forms are
// affine on each element, so midpoint rules are exact
double whitney_trace(const SimplicialComplex& c, int k, const WhitneyInterpolant& f, Index j)
{
    const int n = c.dimension();
    Index t = j;
    for (int d = k; d < n; ++d) t = c.cofaces(d, t)[0];
    auto v = c.simplex(k, j);
    Point mid = Point::Zero();
    for (Index p : v) mid += c.point(p);
    mid /= static_cast<double>(v.size());
    if (k == 0) return f(c.point(v[0]), t).x();
    if (k == n) return f(mid, t).x() * c.measure(n, t);
    if (k == 1) return f(mid, t).dot(c.point(v[1]) - c.point(v[0]));
    Point area = 0.5 * (c.point(v[1]) - c.point(v[0])).cross(c.point(v[2]) - c.point(v[0]));
    return f(mid, t).dot(area);
}

PolyCell random_convex_polygon(std::mt19937& rng)
{
    std::uniform_int_distribution<int> count(3, 9);
    std::uniform_real_distribution<double> u(0, 2 * M_PI), s(0.5, 2), c(-1, 1);
    for (;;) {
        std::vector<double> angles(static_cast<std::size_t>(count(rng)));
        for (auto& a : angles) a = u(rng);
        std::sort(angles.begin(), angles.end());
        const double r = s(rng), cx = c(rng), cy = c(rng);
        std::vector<Vec2> loop;
        for (double a : angles) loop.emplace_back(cx + r * std::cos(a), cy + r * std::sin(a));
        if (std::abs(signed_area(loop)) > 1e-2 * r * r) return polygon_cell(loop);
    }
}

Point random_inside(const Sibson& s, std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    for (;;) {
        Point x = s.lower() + (s.upper() - s.lower()).cwiseProduct(Point(u(rng), u(rng), s.dimension() == 3 ? u(rng) : 0));
        if (s.locate(x) == Location::inside && s.boundary_distance_of(x) > 1e-6 * s.diameter()) return x;
    }
}

PolyCell cube()
{
    PolyCell c;
    c.dimension = 3;
    for (int i = 0; i < 8; ++i) c.vertices.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
    c.faces = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    c.apex = Point(0.5, 0.5, 0.5);
    return c;
}

PolyCell octahedron()
{
    PolyCell c;
    c.dimension = 3;
    for (int a = 0; a < 3; ++a)
        for (double s : {1.0, -1.0}) {
            Point p = Point::Zero();
            p(a) = s;
            c.vertices.push_back(p);
        }
    // vertex of axis a with sign s is 2a + (s < 0)
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy)
            for (int sz = 0; sz < 2; ++sz) {
                std::vector<Index> f{static_cast<Index>(sx), static_cast<Index>(2 + sy), static_cast<Index>(4 + sz)};
                if ((sx + sy + sz) % 2) std::swap(f[1], f[2]);
                c.faces.push_back(f);
            }
    c.apex = Point::Zero();
    return c;
}

struct SibsonTally {
    double b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0;
    int points = 0;
};

void tally_point(const Sibson& s, const Point& x, std::mt19937& rng, SibsonTally& t)
{
    const std::size_t m = s.size();
    std::vector<double> lam(m);
    s.coordinates(x, lam);
    std::normal_distribution<double> g;
    const Point a(g(rng), g(rng), s.dimension() == 3 ? g(rng) : 0);
    const double b = g(rng);
    double sum = 0, lin = 0;
    Point r = Point::Zero();
    for (std::size_t i = 0; i < m; ++i) {
        t.b1 = std::min(t.b1, lam[i]);
        sum += lam[i];
        r += lam[i] * s.cell().vertices[i];
        lin += lam[i] * (a.dot(s.cell().vertices[i]) + b);
    }
    const double scale = s.diameter();
    t.b2 = std::max(t.b2, std::abs(lin - (a.dot(x) + b)) / (a.norm() * scale + std::abs(b)));
    t.b3 = std::max(t.b3, std::abs(sum - 1));
    t.b4 = std::max(t.b4, (r - x).norm() / scale);
    ++t.points;
}

void tally_vertices(const Sibson& s, SibsonTally& t)
{
    std::vector<double> lam(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        s.coordinates(s.cell().vertices[j], lam);
        for (std::size_t i = 0; i < s.size(); ++i) t.b5 = std::max(t.b5, std::abs(lam[i] - (i == j ? 1.0 : 0.0)));
    }
}

SibsonTally sibson_2d(bool restrict_to_cell)
{
    std::mt19937 rng(2718);
    SibsonConfig cfg;
    cfg.restrict_to_cell = restrict_to_cell;
    SibsonTally t;
    for (int p = 0; p < 50; ++p) {
        Sibson s(random_convex_polygon(rng), cfg);
        tally_vertices(s, t);
        for (int q = 0; q < 20; ++q) tally_point(s, random_inside(s, rng), rng, t);
    }
    return t;
}

SibsonTally sibson_3d(bool restrict_to_cell)
{
    std::mt19937 rng(314);
    SibsonConfig cfg;
    cfg.restrict_to_cell = restrict_to_cell;
    SibsonTally t;
    for (const auto& cell : {cube(), octahedron()}) {
        Sibson s(cell, cfg);
        tally_vertices(s, t);
        for (int q = 0; q < 100; ++q) tally_point(s, random_inside(s, rng), rng, t);
    }
    return t;
}

bool criterion3()
{
    Verdict v;
    std::mt19937 rng(1234);
    std::vector<SimplicialComplex> meshes;
    for (int i = 0; i < 50; ++i) meshes.push_back(random_mesh(rng, i));

    long products = 0;
    for (const auto& c : meshes)
        for (int k = 0; k + 1 < c.dimension(); ++k) {
            SparseMatrix dd = incidence_matrix(c, k + 1).matrix * incidence_matrix(c, k).matrix;
            dd.prune(0.0);
            ++products;
            v.check(dd.nonZeros() == 0, "D D != 0");
        }
    std::printf("  DD = 0: %ld products on %zu random meshes\n", products, meshes.size());

    double worst = 0;
    std::vector<SimplicialComplex> dual_meshes{generate_fig8(2), meshes[0], meshes[1], meshes[2], meshes[5]};
    for (const auto& c : dual_meshes)
        for (int k = 0; k <= c.dimension(); ++k)
            for (Index i = 0; i < c.size(k); ++i) {
                Eigen::VectorXd e = Eigen::VectorXd::Zero(c.size(k));
                e(i) = 1;
                WhitneyInterpolant f(c, k, e);
                for (Index j = 0; j < c.size(k); ++j)
                    worst = std::max(worst, std::abs(whitney_trace(c, k, f, j) - (i == j ? 1.0 : 0.0)));
            }
    std::printf("  Whitney duality: max |<W_i, s_j> - delta_ij| = %.3g\n", worst);
    v.check(worst <= duality_tol, "Whitney cochain duality");

    auto report = [&](const char* label, const SibsonTally& t, double tol, bool verdict) {
        std::printf("  %s (%d points): B1 min %.3g, B2 %.3g, B3 %.3g, B4 %.3g, B5 %.3g (tol %.0e)\n", label, t.points,
                    t.b1, t.b2, t.b3, t.b4, t.b5, tol);
        if (!verdict) return;
        v.check(t.b1 >= nonneg, std::string(label) + " B1 non-negativity");
        v.check(t.b2 <= tol, std::string(label) + " B2 linear completeness");
        v.check(t.b3 <= tol, std::string(label) + " B3 partition of unity");
        v.check(t.b4 <= tol, std::string(label) + " B4 linear precision");
        v.check(t.b5 <= tol, std::string(label) + " B5 interpolation");
    };
    report("Sibson 2D", sibson_2d(true), exact_2d, true);
    report("Sibson 3D sampled", sibson_3d(true), sampled, true);
    report("diagnostic, natural-neighbour 2D", sibson_2d(false), exact_2d, false);
    report("diagnostic, natural-neighbour 3D", sibson_3d(false), sampled, false);

    int audited = 0;
    auto audit = [&](const HodgeOperator& h, const SimplicialComplex& c, const DualMesh& d) {
        auto a = sparsity_audit(h, c, &d);
        ++audited;
        for (const auto& s : a.violations) std::printf("  %s\n", s.c_str());
        v.check(a.bound_ok && a.lemma_ok,
                std::string(to_string(h.kind)) + " k=" + std::to_string(h.degree) + " sparsity");
    };
    QuadratureConfig q;
    q.grid = 32;
    for (const auto& c : {generate_fig8(2), generate_equilateral(4, 3), meshes[0], meshes[3]}) {
        auto bary = build_dual(c, CenterRule::barycentric);
        for (int k = 0; k <= 2; ++k) {
            audit(assemble_whitney(c, k), c, bary);
            audit(assemble_dual_inverse(c, bary, k, q), c, bary);
        }
    }
    for (const auto& c : {meshes[2], generate_tet_grid(2, 2, 1)}) {
        auto bary = build_dual(c, CenterRule::barycentric);
        for (int k = 0; k <= 3; ++k) audit(assemble_whitney(c, k), c, bary);
        audit(assemble_dual_inverse(c, bary, 3, q), c, bary);
        audit(assemble_dual_inverse(c, bary, 1, q), c, bary);
    }
    {
        auto c = generate_equilateral(4, 3);
        auto circ = build_dual(c, CenterRule::circumcentric);
        for (int k = 0; k <= 2; ++k) audit(assemble_diag(c, circ, k), c, circ);
    }
    std::printf("  sparsity: %d operators audited against both lemmas and the row bound\n", audited);
    return v.ok;
}

// ---------------------------------------------------------------------------

bool criterion4()
{
    Verdict v;
    const std::vector<std::pair<std::string, SimplicialComplex>> meshes{
        {"two-triangle", generate_grid(1, 1)}, {"eight-vertex P=2", generate_fig8(2)}, {"4x4 grid", generate_grid(4, 4)}};
    double worst_eq = 0, worst_cons = 0;
    for (const auto& [name, c] : meshes) {
        auto bary = build_dual(c, CenterRule::barycentric);
        for (HodgeKind kind : {HodgeKind::whitney, HodgeKind::dual_inverse}) {
            for (Problem p : {Problem::magnetostatics, Problem::darcy}) {
                for (auto [a, b] : {std::pair{1, 2}, std::pair{3, 4}}) {
                    const char* pname = p == Problem::darcy ? "darcy" : "magnetostatics";
                    try {
                        HodgePair h = hodge_pair(c, bary, cli::detail::hodge_degree(c, p, a), kind);
                        auto load = cli::detail::default_load(c, p, a);
                        auto cv = cross_validate(c, p, {a, b}, {load, load}, {h, h});
                        const double diff = std::max(cv.diff_first(0, 1), cv.diff_second(0, 1));
                        worst_eq = std::max(worst_eq, diff);
                        double cons = 0;
                        for (std::size_t i = 0; i < 2; ++i) {
                            auto r = constraint_residuals(c, p, cv.systems[i], load, cv.reports[i].pair);
                            cons = std::max({cons, r.divergence, r.source});
                        }
                        worst_cons = std::max(worst_cons, cons);
                        std::printf("  %-17s %-12s %-14s %d/%d: diff %.3g, conservation %.3g\n", name.c_str(),
                                    to_string(kind), pname, a, b, diff, cons);
                        v.check(diff <= equivalence, name + " " + pname + " pair agreement");
                        v.check(cons <= conservation, name + " " + pname + " conservation");
                    } catch (const Error& e) {
                        v.check(false, name + " " + pname + ": " + e.what());
                    }
                }
            }
        }
    }
    std::printf("  worst pair difference %.3g (tol %.0e), worst conservation residual %.3g (tol %.0e)\n", worst_eq,
                equivalence, worst_cons, conservation);
    return v.ok;
}

// ---------------------------------------------------------------------------

bool criterion5()
{
    Verdict v;
    auto c = generate_grid(10, 10);
    auto bary = build_dual(c, CenterRule::barycentric);
    std::printf("  mesh: %ld triangles\n", static_cast<long>(c.size(2)));
    for (int k = 0; k <= 2; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        HodgeOperator h = assemble_dual_inverse(c, bary, k);
        auto a = sparsity_audit(h, c, &bary);
        // A(σ) counts the triangles touching at least one vertex of σ
        long amax = 0;
        for (Index i = 0; i < c.size(k); ++i) amax = std::max(amax, static_cast<long>(c.incident_top_count(k, i)));
        const long bound = binomial(3, k + 1) * amax;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(h.matrix)};
        const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
        std::printf("  k=%d: max nonzeros per row %d, bound C(3,%d)*max A = %ld; eigenvalues in [%.4g, %.4g]; %.2f s\n",
                    k, a.max_nonzeros, k + 1, bound, lmin, lmax, seconds_since(t0));
        v.check(a.max_nonzeros <= bound, "row bound at k=" + std::to_string(k));
        v.check(a.bound_ok && a.lemma_ok, "per-row bound and adjacency at k=" + std::to_string(k));
        v.check(lmin > 0, "positive definite at k=" + std::to_string(k));
    }
    return v.ok;
}

} // namespace

int main(int argc, char** argv)
{
    const char* names[] = {"",
                           "condition-number table",
                           "closed-form Hodge entries",
                           "structural suite",
                           "equivalent formulations",
                           "sparse dual-inverse star"};
    bool (*checks[])() = {nullptr, criterion1, criterion2, criterion3, criterion4, criterion5};
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty()) which = {1, 2, 3, 4, 5};
    bool all = true;
    for (int w : which) {
        if (w < 1 || w > 5) {
            std::fprintf(stderr, "unknown criterion %d\n", w);
            return 2;
        }
        bool ok = false;
        try {
            ok = checks[w]();
        } catch (const std::exception& e) {
            std::printf("  exception: %s\n", e.what());
        }
        std::printf("%s criterion %d (%s)\n", ok ? "PASS" : "FAIL", w, names[w]);
        std::fflush(stdout);
        all = all && ok;
    }
    return all ? 0 : 1;
}
