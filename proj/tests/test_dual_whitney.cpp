#include "catch_amalgamated.hpp"

#include <dec/dec.hpp>

#include <random>

using namespace dec;
using Catch::Approx;

namespace {

// one interior vertex with five triangles around it
SimplicialComplex pentagon_fan()
{
    std::vector<Point> pts{Point::Zero()};
    for (int i = 0; i < 5; ++i) pts.emplace_back(std::cos(2 * M_PI * i / 5 + 0.3), std::sin(2 * M_PI * i / 5 + 0.3), 0);
    std::vector<std::vector<Index>> tris;
    for (Index i = 0; i < 5; ++i) tris.push_back({0, 1 + i, 1 + (i + 1) % 5});
    return build_complex(2, pts, tris);
}

// Gauss-Legendre on [0, 1], 5 points
constexpr std::array<double, 5> gx{0.04691007703066800, 0.23076534494715845, 0.5, 0.76923465505284155,
                                   0.95308992296933200};
constexpr std::array<double, 5> gw{0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
                                   0.23931433524968324, 0.11846344252809454};

template <class F>
double line_integral(const Point& a, const Point& b, F&& field)
{
    double s = 0;
    for (std::size_t q = 0; q < 5; ++q) s += gw[q] * field(a + gx[q] * (b - a)).dot(b - a);
    return s;
}

} // namespace

TEST_CASE("dual Whitney basis needs the barycentric dual")
{
    auto c = pentagon_fan();
    auto d = build_dual(c, CenterRule::circumcentric);
    CHECK_THROWS_AS(DualWhitneyBasis(c, d), Error);
}

TEST_CASE("dual n-forms are the normalized indicator of the vertex cell")
{
    auto c = generate_grid(3, 3);
    auto d = build_dual(c, CenterRule::barycentric);
    DualWhitneyBasis basis(c, d);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int q = 0; q < 200; ++q) {
        Point x(u(rng), u(rng), 0);
        auto p = basis.locate(x);
        REQUIRE(p);
        const Index v = basis.pieces()[*p].vertex;
        auto f = basis.form(2, v);
        CHECK(basis.eval(f, x)(0) == Approx(1 / d.measure(0, v)).epsilon(1e-14));
        auto other = basis.form(2, (v + 1) % c.size(0));
        CHECK(basis.eval(other, x)(0) == 0);
    }
}

TEST_CASE("dual 0-forms interpolate at dual vertices and sum to one in interior cells")
{
    auto c = pentagon_fan();
    auto d = build_dual(c, CenterRule::barycentric);
    DualWhitneyBasis basis(c, d);
    REQUIRE(basis.pieces_of_vertex(0).size() == 1);
    const std::size_t p = basis.pieces_of_vertex(0)[0];
    for (Index t = 0; t < c.size(2); ++t) {
        const Point& ct = d.vertex({2, t});
        for (Index s = 0; s < c.size(2); ++s)
            CHECK(basis.eval_in_piece(basis.form(0, s), p, ct)(0) == Approx(s == t ? 1.0 : 0.0).margin(1e-12));
    }
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int q = 0; q < 100; ++q) {
        Point x(u(rng), u(rng), 0);
        if (basis.pieces()[p].sibson->locate(x) != Location::inside) continue;
        double sum = 0;
        for (Index t = 0; t < c.size(2); ++t) sum += basis.eval_in_piece(basis.form(0, t), p, x)(0);
        CHECK(sum == Approx(1).epsilon(1e-12));
        // agrees with plain Sibson coordinates of the barycenter polygon
        auto e = sibson(*basis.pieces()[p].sibson, x);
        for (std::size_t i = 0; i < basis.pieces()[p].sites.size(); ++i) {
            auto ref = basis.pieces()[p].sites[i];
            CHECK(basis.eval_in_piece(basis.form(0, ref.id), p, x)(0) ==
                  Approx(e.lambda(static_cast<Eigen::Index>(i))).margin(1e-14));
        }
    }
}

// The clipped coordinates jump at the cell boundary, so the trace property
// is checked with natural-neighbour coordinates.
SibsonConfig natural()
{
    SibsonConfig cfg;
    cfg.restrict_to_cell = false;
    return cfg;
}

TEST_CASE("dual 1-forms have unit circulation on their own dual edge")
{
    auto c = pentagon_fan();
    auto d = build_dual(c, CenterRule::barycentric);
    DualWhitneyBasis basis(c, d, natural());
    const std::size_t p = basis.pieces_of_vertex(0)[0];
    const auto& edges = basis.edges_in_piece(p);
    REQUIRE(edges.size() == 5);
    for (const auto& ei : edges) {
        auto form = basis.form(1, ei.facet);
        for (const auto& ej : edges) {
            const auto& seg = d.cell(1, ej.facet).vertices;
            double v = line_integral(d.vertex(seg[0]), d.vertex(seg[1]),
                                     [&](const Point& x) { return basis.eval_in_piece(form, p, x); });
            CHECK(v == Approx(ei.facet == ej.facet ? 1.0 : 0.0).margin(1e-2));
        }
    }
    // swapping endpoints flips the sign
    auto f = basis.form(1, edges[0].facet);
    auto g = f;
    std::swap(g.from, g.to);
    Point x = 0.2 * d.vertex(f.from) + 0.3 * d.vertex(f.to);
    CHECK((basis.eval_in_piece(f, p, x) + basis.eval_in_piece(g, p, x)).norm() < 1e-14);
}

TEST_CASE("dual interpolant of a 1-cochain reproduces its circulations")
{
    auto c = pentagon_fan();
    auto d = build_dual(c, CenterRule::barycentric);
    DualWhitneyBasis basis(c, d, natural());
    const std::size_t p = basis.pieces_of_vertex(0)[0];
    Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(c.size(1), -1, 2);
    auto in = dual_interpolate(basis, 1, w);
    for (const auto& e : basis.edges_in_piece(p)) {
        const auto& seg = d.cell(1, e.facet).vertices;
        double v = line_integral(d.vertex(seg[0]), d.vertex(seg[1]), [&](const Point& x) { return in.in_piece(p, x); });
        CHECK(v == Approx(w(e.facet)).margin(1e-2));
    }

    auto zero = dual_interpolate(basis, 1, Eigen::VectorXd::Zero(c.size(1)));
    CHECK(zero.at(Point(0.1, 0.05, 0)).norm() == 0);
    CHECK_THROWS_AS(dual_interpolate(basis, 1, Eigen::VectorXd::Zero(3)), Error);
    CHECK_THROWS_AS(in.at(Point(5, 5, 0)), Error);
}

TEST_CASE("pieces tile a grid with boundary splits")
{
    auto c = generate_grid(4, 3);
    auto d = build_dual(c, CenterRule::barycentric);
    DualWhitneyBasis basis(c, d);
    double total = 0;
    for (const auto& piece : basis.pieces()) total += piece.sibson->measure();
    CHECK(total == Approx(1.0).epsilon(1e-12));
    for (Index v = 0; v < c.size(0); ++v) {
        double m = 0;
        for (auto p : basis.pieces_of_vertex(v)) m += basis.pieces()[p].sibson->measure();
        CHECK(m == Approx(d.measure(0, v)).epsilon(1e-12));
    }
}

TEST_CASE("3D dual 2-forms: fan weights and unit flux")
{
    auto c = generate_tet_grid(1, 1, 1);
    auto d = build_dual(c, CenterRule::barycentric);
    DualWhitneyBasis basis(c, d);
    for (Index e = 0; e < c.size(1); ++e) {
        auto form = basis.form(2, e);
        double sum = 0;
        for (double w : form.weights) sum += w;
        CHECK(sum == Approx(1).epsilon(1e-14));

        // flux through the fan, seen from each endpoint's cell
        std::vector<double> flux;
        for (Index v : c.simplex(1, e)) {
            for (auto p : basis.pieces_of_vertex(v)) {
                const Point apex = c.point(v);
                double f = 0;
                for (const auto& tri : form.triangles) {
                    Point n = 0.5 * (tri[1] - tri[0]).cross(tri[2] - tri[0]);
                    Point g = (tri[0] + tri[1] + tri[2]) / 3;
                    f += basis.eval_in_piece(form, p, g + 1e-9 * (apex - g)).dot(n);
                }
                flux.push_back(f);
            }
        }
        REQUIRE(flux.size() == 2);
        CHECK(std::abs(flux[0]) == Approx(1).epsilon(1e-6));
        CHECK(flux[0] == Approx(flux[1]).epsilon(1e-6));
    }
}
