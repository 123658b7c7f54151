#include "catch_amalgamated.hpp"

#include <dec/dec.hpp>

#include <random>

using namespace dec;
using Catch::Approx;

namespace {

PolyCell unit_square() { return polygon_cell({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

PolyCell regular_polygon(int m, double r = 1)
{
    std::vector<Vec2> loop;
    for (int i = 0; i < m; ++i) loop.emplace_back(r * std::cos(2 * M_PI * i / m), r * std::sin(2 * M_PI * i / m));
    return polygon_cell(loop);
}

PolyCell random_convex_polygon(std::mt19937& rng)
{
    std::uniform_int_distribution<int> count(3, 9);
    std::uniform_real_distribution<double> u(0, 2 * M_PI), s(0.5, 2), c(-1, 1);
    std::vector<double> angles(static_cast<std::size_t>(count(rng)));
    for (auto& a : angles) a = u(rng);
    std::sort(angles.begin(), angles.end());
    const double r = s(rng), cx = c(rng), cy = c(rng);
    std::vector<Vec2> loop;
    for (double a : angles) loop.emplace_back(cx + r * std::cos(a), cy + r * std::sin(a));
    if (std::abs(signed_area(loop)) < 1e-3 * r * r) return random_convex_polygon(rng);
    return polygon_cell(loop);
}

Point interior_point(const Sibson& s, std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    for (;;) {
        Point x = s.lower() + (s.upper() - s.lower()).cwiseProduct(Point(u(rng), u(rng), s.dimension() == 3 ? u(rng) : 0));
        if (s.locate(x) == Location::inside && s.boundary_distance_of(x) > 1e-6 * s.diameter()) return x;
    }
}

PolyCell unit_cube()
{
    PolyCell c;
    c.dimension = 3;
    for (int i = 0; i < 8; ++i) c.vertices.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
    c.faces = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    c.apex = Point(0.5, 0.5, 0.5);
    return c;
}

} // namespace

TEST_CASE("clipped Voronoi measures on the unit square")
{
    auto m = clipped_voronoi_measures(unit_square());
    for (int i = 0; i < 4; ++i) CHECK(m.voronoi(i) == Approx(0.25).epsilon(1e-15));

    auto mx = clipped_voronoi_measures(unit_square(), Point(0.5, 0.5, 0));
    REQUIRE(mx.intersection);
    for (int i = 1; i < 4; ++i) CHECK((*mx.intersection)(i) == Approx((*mx.intersection)(0)).epsilon(1e-14));

    CHECK_THROWS_AS(clipped_voronoi_measures(unit_square(), Point(1, 1, 0)), Error);
    CHECK_THROWS_AS(clipped_voronoi_measures(unit_square(), Point(0.5, 0, 0)), Error);
}

TEST_CASE("regular hexagon against a pixel oracle")
{
    Sibson s(regular_polygon(6));
    const Point x = Point::Zero();
    auto m = clipped_voronoi_measures(s, x);
    REQUIRE(m.intersection);
    const auto& inter = *m.intersection;
    for (int i = 1; i < 6; ++i) CHECK(inter(i) == Approx(inter(0)).epsilon(1e-13));

    // count pixels of the hexagon closer to x than to every vertex, by owner
    const int R = 2000;
    const auto& v = s.cell().vertices;
    std::vector<double> count(6, 0.0);
    const double h = 2.0 / R;
    Polygon2 poly;
    for (const auto& p : v) poly.push_back(p.head<2>());
    for (int iy = 0; iy < R; ++iy)
        for (int ix = 0; ix < R; ++ix) {
            Vec2 y(-1 + (ix + 0.5) * h, -1 + (iy + 0.5) * h);
            if (!point_in_polygon(poly, y)) continue;
            int best = 0;
            double bd = 1e300;
            for (int i = 0; i < 6; ++i) {
                double d = (y - v[i].head<2>()).squaredNorm();
                if (d < bd) {
                    bd = d;
                    best = i;
                }
            }
            if (y.squaredNorm() < bd) count[best] += h * h;
        }
    for (int i = 0; i < 6; ++i) CHECK(inter(i) == Approx(count[i]).epsilon(5e-3));
    // the stolen region is the hexagon of apothem 1/2, area 2√3 a²
    CHECK(*m.stolen == Approx(2 * std::sqrt(3.0) * 0.25).epsilon(1e-13));
}

TEST_CASE("Sibson coordinates basic properties")
{
    Sibson s(unit_square());
    auto e = sibson(s, Point(0.5, 0.5, 0));
    for (int i = 0; i < 4; ++i) CHECK(e.lambda(i) == Approx(0.25).epsilon(1e-14));

    // interpolation at the vertices (boundary restriction)
    for (int j = 0; j < 4; ++j) {
        auto ev = sibson(s, s.cell().vertices[j]);
        for (int i = 0; i < 4; ++i) CHECK(ev.lambda(i) == Approx(i == j ? 1.0 : 0.0).margin(1e-14));
    }
    // on an edge only the edge's endpoints contribute, linearly
    auto ev = sibson(s, Point(0.3, 0, 0));
    CHECK(ev.on_boundary);
    CHECK(ev.lambda(0) == Approx(0.7).epsilon(1e-14));
    CHECK(ev.lambda(1) == Approx(0.3).epsilon(1e-14));
    CHECK(ev.lambda(2) == 0);
    CHECK(ev.lambda(3) == 0);

    CHECK_THROWS_AS(sibson(s, Point(2, 0.5, 0)), Error);
}

TEST_CASE("non-negativity, partition of unity and quotient agreement on random convex polygons")
{
    std::mt19937 rng(2024);
    for (int p = 0; p < 50; ++p) {
        Sibson s(random_convex_polygon(rng));
        for (int q = 0; q < 20; ++q) {
            Point x = interior_point(s, rng);
            auto e = sibson(s, x);
            CHECK(e.lambda.minCoeff() >= -1e-12);
            CHECK(std::abs(e.lambda.sum() - 1) < 1e-10);
            // λ_i = |D ∩ C_i| / |D| with |D| measured on its own
            for (Eigen::Index i = 0; i < e.lambda.size(); ++i)
                CHECK(e.lambda(i) == Approx(e.intersection(i) / e.stolen).margin(1e-12));
        }
    }
}

TEST_CASE("natural-neighbour variant is linearly precise")
{
    std::mt19937 rng(99);
    SibsonConfig cfg;
    cfg.restrict_to_cell = false;
    for (int p = 0; p < 30; ++p) {
        Sibson s(random_convex_polygon(rng), cfg);
        for (int q = 0; q < 20; ++q) {
            Point x = interior_point(s, rng);
            auto e = sibson(s, x);
            Point r = Point::Zero();
            for (Eigen::Index i = 0; i < e.lambda.size(); ++i) r += e.lambda(i) * s.cell().vertices[static_cast<std::size_t>(i)];
            CHECK((r - x).norm() < 1e-10 * s.diameter());
            CHECK(std::abs(e.lambda.sum() - 1) < 1e-12);
        }
    }
    Sibson cube(unit_cube(), cfg);
    for (int q = 0; q < 50; ++q) {
        Point x = interior_point(cube, rng);
        std::vector<double> lam(8);
        cube.coordinates(x, lam);
        Point r = Point::Zero();
        for (int i = 0; i < 8; ++i) r += lam[static_cast<std::size_t>(i)] * cube.cell().vertices[static_cast<std::size_t>(i)];
        CHECK((r - x).norm() < 1e-10);
    }
}

TEST_CASE("Sibson gradients")
{
    Sibson s(unit_square());
    const double h = 1e-4;
    auto g = sibson_gradient(s, Point(0.5, 0.5, 0), h);
    Point sum = Point::Zero();
    for (const auto& v : g) sum += v;
    CHECK(sum.norm() < 10 * h);
    CHECK((g[0] + g[2]).norm() < 1e-8);
    CHECK((g[1] + g[3]).norm() < 1e-8);

    SibsonConfig cfg;
    cfg.restrict_to_cell = false;
    std::mt19937 rng(4);
    Sibson nat(regular_polygon(5), cfg);
    for (int q = 0; q < 20; ++q) {
        Point x = interior_point(nat, rng);
        if (nat.boundary_distance_of(x) < 1e-2) continue;
        auto gn = sibson_gradient(nat, x);
        Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
        for (std::size_t i = 0; i < gn.size(); ++i) J += nat.cell().vertices[i].head<2>() * gn[i].head<2>().transpose();
        CHECK((J - Eigen::Matrix2d::Identity()).norm() < 1e-5);
    }

    CHECK_THROWS_AS(sibson_gradient(s, Point(0.5, 0.5e-5, 0), 1e-4), Error);
}

TEST_CASE("sampled 3D coordinates")
{
    Sibson cube(unit_cube());
    CHECK(cube.measure() == Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 8; ++i) CHECK(cube.voronoi_measures()(i) == Approx(0.125).epsilon(1e-3));
    std::mt19937 rng(8);
    for (int q = 0; q < 50; ++q) {
        Point x = interior_point(cube, rng);
        auto e = sibson(cube, x);
        CHECK(e.lambda.minCoeff() >= 0);
        CHECK(std::abs(e.lambda.sum() - 1) < 1e-12);
    }
    auto centre = sibson(cube, Point(0.5, 0.5, 0.5));
    for (int i = 0; i < 8; ++i) CHECK(centre.lambda(i) == Approx(0.125).epsilon(1e-3));
    // on a facet only the facet's vertices contribute
    auto f = sibson(cube, Point(0.25, 0.5, 0));
    CHECK(f.on_boundary);
    for (int i = 4; i < 8; ++i) CHECK(f.lambda(i) == 0);
}

TEST_CASE("limits at an edge: natural coordinates are continuous, clipped ones jump")
{
    Sibson clipped(regular_polygon(5));
    SibsonConfig cfg;
    cfg.restrict_to_cell = false;
    Sibson nat(regular_polygon(5), cfg);
    const Point a = clipped.cell().vertices[0], b = clipped.cell().vertices[1];
    const Point m = 0.7 * a + 0.3 * b;
    const Point x = m - 1e-7 * m.normalized();
    std::vector<double> lc(5), ln(5);
    clipped.coordinates(x, lc);
    nat.coordinates(x, ln);
    CHECK(ln[0] == Approx(0.7).margin(1e-5));
    CHECK(ln[1] == Approx(0.3).margin(1e-5));
    CHECK(std::abs(lc[0] - 0.7) > 1e-2);
    // on the edge itself both use the linear restriction
    clipped.coordinates(m, lc);
    CHECK(lc[0] == Approx(0.7).epsilon(1e-14));
}
