#pragma once

#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace dec {

/// A dual vertex is the center of some primal simplex: of an n-simplex in the
/// interior, or of a boundary simplex (including a boundary vertex itself)
/// where dual cells are clipped to the domain.
struct DualVertexRef {
    int k = 0;
    Index id = 0;
    auto operator<=>(const DualVertexRef&) const = default;
};

/// Dual (n-k)-cell of a primal k-simplex.
///
/// Layout of `vertices` by dual dimension:
///  - 0: the single point;
///  - 1: start and end, in the cell's orientation;
///  - 2: the boundary loop, in the cell's orientation;
///  - 3: every distinct vertex, sorted; the boundary is given by `faces`.
struct DualCell {
    int primal_degree = 0;
    Index generator = 0;
    int dimension = 0;
    double measure = 0;  // signed; nonpositive means inverted
    int orientation = 1;
    std::vector<DualVertexRef> vertices;
    /// Polyhedra only: the dual faces (generator edge ids) bounding the cell.
    std::vector<Index> face_generators;
    /// Polyhedra only: boundary patches lying in primal boundary faces.
    std::vector<std::vector<DualVertexRef>> boundary_patches;
};

class DualMesh {
public:
    CenterRule rule() const { return rule_; }
    int dimension() const { return n_; }

    const DualCell& cell(int k, Index id) const { return cells_.at(static_cast<std::size_t>(k)).at(id); }
    Index size(int k) const { return static_cast<Index>(cells_.at(static_cast<std::size_t>(k)).size()); }
    double measure(int k, Index id) const { return cell(k, id).measure; }

    const Point& vertex(DualVertexRef r) const { return centers_.at(static_cast<std::size_t>(r.k)).at(r.id); }
    bool center_outside(int k, Index id) const { return outside_.at(static_cast<std::size_t>(k)).at(id) != 0; }

    /// Human-readable notes on inverted cells and outside circumcenters.
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

    friend DualMesh build_dual(const SimplicialComplex&, CenterRule);

private:
    CenterRule rule_ = CenterRule::barycentric;
    int n_ = 0;
    std::array<std::vector<Point>, 4> centers_;
    std::array<std::vector<char>, 4> outside_;
    std::array<std::vector<DualCell>, 4> cells_;
    std::vector<std::string> diagnostics_;
};

namespace detail {

/// Incidence sign of face `f` (degree k) in coface `t` (degree k+1).
inline int incidence_sign(const SimplicialComplex& c, int k, Index t, Index f)
{
    for (int i = 0; i <= k + 1; ++i)
        if (c.face(k + 1, t, i) == f) return ((i % 2) ? -1 : 1) * c.orientation(k + 1, t) * c.orientation(k, f);
    throw Error(ErrorKind::invalid, "not a face");
}

/// Vertex of top simplex t not in its facet f.
inline Index opposite_vertex(const SimplicialComplex& c, Index t, Index f)
{
    const int n = c.dimension();
    auto fs = c.simplex(n - 1, f);
    for (Index v : c.simplex(n, t))
        if (std::find(fs.begin(), fs.end(), v) == fs.end()) return v;
    throw Error(ErrorKind::invalid, "not a facet");
}

/// Unit normal of facet f of an n-complex (n = 2: edge normal in the plane).
inline Point facet_normal(const SimplicialComplex& c, Index f)
{
    auto s = c.simplex(c.dimension() - 1, f);
    if (c.dimension() == 2) {
        Point t = c.point(s[1]) - c.point(s[0]);
        return Point(-t.y(), t.x(), 0).normalized();
    }
    return (c.point(s[1]) - c.point(s[0])).cross(c.point(s[2]) - c.point(s[0])).normalized();
}

inline double polygon_signed_area_xy(const std::vector<Point>& p)
{
    double a = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point& u = p[i];
        const Point& w = p[(i + 1) % p.size()];
        a += u.x() * w.y() - w.x() * u.y();
    }
    return 0.5 * a;
}

} // namespace detail

inline DualMesh build_dual(const SimplicialComplex& c, CenterRule rule)
{
    DualMesh d;
    d.rule_ = rule;
    d.n_ = c.dimension();
    const int n = c.dimension();

    for (int k = 0; k <= n; ++k) {
        d.centers_[k].resize(c.size(k));
        d.outside_[k].assign(c.size(k), 0);
        for (Index i = 0; i < c.size(k); ++i) {
            // interior lower simplices never appear as dual vertices; compute anyway
            auto r = center(c, k, i, rule);
            d.centers_[k][i] = r.point;
            d.outside_[k][i] = r.outside ? 1 : 0;
            if (r.outside && k == n)
                d.diagnostics_.push_back("circumcenter of " + std::to_string(k) + "-simplex " + std::to_string(i) +
                                         " lies outside it");
        }
    }
    auto P = [&](DualVertexRef r) -> const Point& { return d.centers_[r.k][r.id]; };

    // k = n: points
    for (Index t = 0; t < c.size(n); ++t) {
        DualCell cell;
        cell.primal_degree = n;
        cell.generator = t;
        cell.dimension = 0;
        cell.measure = 1.0;
        cell.vertices = {{n, t}};
        d.cells_[n].push_back(cell);
    }

    // k = n-1: segments from the T- side to the T+ side
    for (Index f = 0; f < c.size(n - 1); ++f) {
        DualCell cell;
        cell.primal_degree = n - 1;
        cell.generator = f;
        cell.dimension = 1;
        auto co = c.cofaces(n - 1, f);
        Point nu = detail::facet_normal(c, f);
        Point fc = c.point(c.simplex(n - 1, f)[0]);
        // orient nu toward the T+ side
        Index t0 = co[0];
        int s0 = detail::incidence_sign(c, n - 1, t0, f);
        double side = nu.dot(c.point(detail::opposite_vertex(c, t0, f)) - fc);
        if ((side > 0) != (s0 > 0)) nu = -nu;
        if (co.size() == 2) {
            Index tp = s0 > 0 ? co[0] : co[1];
            Index tm = s0 > 0 ? co[1] : co[0];
            cell.vertices = {{n, tm}, {n, tp}};
        } else if (s0 > 0) {
            cell.vertices = {{n - 1, f}, {n, t0}};
        } else {
            cell.vertices = {{n, t0}, {n - 1, f}};
        }
        Point seg = P(cell.vertices[1]) - P(cell.vertices[0]);
        double proj = seg.dot(nu);
        cell.measure = (proj > 0 ? 1.0 : (proj < 0 ? -1.0 : 0.0)) * seg.norm();
        d.cells_[n - 1].push_back(cell);
    }

    // Oriented dual segments by their endpoints, for loop orientation checks.
    auto segment_sign = [&](DualVertexRef a, DualVertexRef b, Index& facet) -> int {
        // a->b matches some dual segment: +1 same direction, -1 reversed, 0 none
        auto probe = [&](DualVertexRef r) -> std::vector<Index> {
            if (r.k == n - 1) return {r.id};
            if (r.k == n) {
                std::vector<Index> fs;
                for (int i = 0; i <= n; ++i) fs.push_back(c.face(n, r.id, i));
                return fs;
            }
            return {};
        };
        for (Index f : probe(a)) {
            const auto& v = d.cells_[n - 1][f].vertices;
            if (v[0] == a && v[1] == b) {
                facet = f;
                return 1;
            }
            if (v[0] == b && v[1] == a) {
                facet = f;
                return -1;
            }
        }
        return 0;
    };

    if (n == 2) {
        // vertex cells: polygons
        for (Index v = 0; v < c.size(0); ++v) {
            auto star = c.vertex_star(v);
            // for each triangle, (a, b) with (v, a, b) counterclockwise
            std::vector<std::pair<Index, Index>> ab;
            for (Index t : star) {
                auto s = c.simplex(2, t);
                int pos = 0;
                for (int i = 0; i < 3; ++i)
                    if (s[i] == v) pos = i;
                // sorted (s0,s1,s2) has sign orientation; cyclic rotation from v
                Index a = s[(pos + 1) % 3], b = s[(pos + 2) % 3];
                if (c.orientation(2, t) < 0) std::swap(a, b);
                ab.emplace_back(a, b);
            }
            std::size_t start = 0;
            bool boundary = c.is_boundary(0, v);
            if (boundary) {
                bool found = false;
                for (std::size_t i = 0; i < ab.size() && !found; ++i) {
                    bool entered = false;
                    for (std::size_t j = 0; j < ab.size(); ++j)
                        if (ab[j].second == ab[i].first) entered = true;
                    if (!entered) {
                        start = i;
                        found = true;
                    }
                }
            }
            std::vector<std::size_t> order{start};
            std::vector<char> used(ab.size(), 0);
            used[start] = 1;
            while (order.size() < ab.size()) {
                Index nextA = ab[order.back()].second;
                std::size_t nxt = ab.size();
                for (std::size_t j = 0; j < ab.size(); ++j)
                    if (!used[j] && ab[j].first == nextA) nxt = j;
                if (nxt == ab.size()) break;
                used[nxt] = 1;
                order.push_back(nxt);
            }
            if (order.size() != ab.size())
                throw Error(ErrorKind::invalid, "non-manifold mesh at vertex " + std::to_string(v));

            DualCell cell;
            cell.primal_degree = 0;
            cell.generator = v;
            cell.dimension = 2;
            std::array<Index, 2> e{};
            if (boundary) {
                e = {std::min(v, ab[order.front()].first), std::max(v, ab[order.front()].first)};
                cell.vertices.push_back({1, *c.find(1, e)});
            }
            for (std::size_t i : order) cell.vertices.push_back({2, star[i]});
            if (boundary) {
                e = {std::min(v, ab[order.back()].second), std::max(v, ab[order.back()].second)};
                cell.vertices.push_back({1, *c.find(1, e)});
                cell.vertices.push_back({0, v});
            }
            std::vector<Point> pts;
            for (auto r : cell.vertices) pts.push_back(P(r));
            cell.measure = detail::polygon_signed_area_xy(pts);
            // loop is counterclockwise; relate it to the D_0^T pairing
            cell.orientation = 0;
            for (std::size_t i = 0; i < cell.vertices.size() && cell.orientation == 0; ++i) {
                Index e1 = -1;
                int sg = segment_sign(cell.vertices[i], cell.vertices[(i + 1) % cell.vertices.size()], e1);
                if (sg != 0) cell.orientation = sg * detail::incidence_sign(c, 0, e1, v);
            }
            if (cell.orientation == 0) cell.orientation = -1;
            d.cells_[0].push_back(cell);
        }
    } else {
        // edges: dual faces around each edge
        for (Index e = 0; e < c.size(1); ++e) {
            auto faces = c.cofaces(1, e);
            // tet -> faces around e
            std::vector<Index> tets;
            for (Index f : faces)
                for (Index t : c.cofaces(2, f)) tets.push_back(t);
            std::sort(tets.begin(), tets.end());
            tets.erase(std::unique(tets.begin(), tets.end()), tets.end());
            auto faces_of = [&](Index t) {
                std::vector<Index> r;
                for (Index f : faces)
                    for (Index u : c.cofaces(2, f))
                        if (u == t) r.push_back(f);
                return r;
            };
            bool boundary = c.is_boundary(1, e);
            Index start_face = faces[0];
            if (boundary)
                for (Index f : faces)
                    if (c.cofaces(2, f).size() == 1) {
                        start_face = f;
                        break;
                    }
            std::vector<DualVertexRef> loop;
            if (boundary) loop.push_back({2, start_face});
            Index cur_face = start_face;
            Index cur_tet = c.cofaces(2, start_face)[0];
            std::vector<char> seen(tets.size(), 0);
            for (std::size_t step = 0; step < tets.size(); ++step) {
                auto it = std::lower_bound(tets.begin(), tets.end(), cur_tet);
                if (seen[it - tets.begin()]) break;
                seen[it - tets.begin()] = 1;
                loop.push_back({3, cur_tet});
                auto fs = faces_of(cur_tet);
                Index nf = fs[0] == cur_face ? fs[1] : fs[0];
                cur_face = nf;
                auto co = c.cofaces(2, nf);
                if (co.size() == 1) break;
                cur_tet = co[0] == cur_tet ? co[1] : co[0];
            }
            if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(tets.size()))
                throw Error(ErrorKind::invalid, "non-manifold mesh at edge " + std::to_string(e));
            if (boundary) {
                loop.push_back({2, cur_face});
                loop.push_back({1, e});
            }
            // orient the loop so that traversal agrees with D_1^T
            int agree = 0;
            for (std::size_t i = 0; i < loop.size() && agree == 0; ++i) {
                Index f = -1;
                int sg = segment_sign(loop[i], loop[(i + 1) % loop.size()], f);
                if (sg != 0) agree = sg * detail::incidence_sign(c, 1, f, e);
            }
            if (agree < 0) {
                if (boundary) {
                    // keep the edge center last
                    std::reverse(loop.begin(), loop.end() - 1);
                } else {
                    std::reverse(loop.begin(), loop.end());
                }
            }
            DualCell cell;
            cell.primal_degree = 1;
            cell.generator = e;
            cell.dimension = 2;
            cell.vertices = loop;
            cell.orientation = 1;
            Point cbar = Point::Zero();
            for (auto r : loop) cbar += P(r);
            cbar /= static_cast<double>(loop.size());
            auto es = c.simplex(1, e);
            Point te = (c.point(es[1]) - c.point(es[0])).normalized();
            double projected = 0, fan = 0;
            for (std::size_t i = 0; i < loop.size(); ++i) {
                Point cr = 0.5 * (P(loop[i]) - cbar).cross(P(loop[(i + 1) % loop.size()]) - cbar);
                projected += cr.dot(te);
                fan += cr.norm();
            }
            // Measure is the fan area. Loops consistent with D_1^T turn clockwise
            // about the edge direction; the other sense marks an inverted cell.
            cell.measure = projected < 0 ? fan : -fan;
            d.cells_[1].push_back(cell);
        }
        // vertex cells: polyhedra
        for (Index v = 0; v < c.size(0); ++v) {
            DualCell cell;
            cell.primal_degree = 0;
            cell.generator = v;
            cell.dimension = 3;
            cell.orientation = 1;
            double vol = 0;
            const Point& pv = c.point(v);
            for (Index e : c.cofaces(0, v)) {
                cell.face_generators.push_back(e);
                const auto& loop = d.cells_[1][e].vertices;
                Point cbar = Point::Zero();
                for (auto r : loop) cbar += P(r);
                cbar /= static_cast<double>(loop.size());
                double s = 0;
                for (std::size_t i = 0; i < loop.size(); ++i) {
                    const Point& a = P(loop[i]);
                    const Point& b = P(loop[(i + 1) % loop.size()]);
                    s += (cbar - pv).dot((a - pv).cross(b - pv)) / 6.0;
                }
                vol += detail::incidence_sign(c, 0, e, v) * s;
                cell.vertices.insert(cell.vertices.end(), loop.begin(), loop.end());
            }
            for (Index e : c.cofaces(0, v))
                for (Index f : c.cofaces(1, e)) {
                    if (c.cofaces(2, f).size() != 1) continue;
                    auto fs = c.simplex(2, f);
                    // boundary patch: v, center(v,a), center(f), center(v,b)
                    std::vector<Index> others;
                    for (Index x : fs)
                        if (x != v) others.push_back(x);
                    if (std::find(fs.begin(), fs.end(), v) == fs.end()) continue;
                    // add each boundary face once (from its lower edge id through v)
                    std::array<Index, 2> ea{std::min(v, others[0]), std::max(v, others[0])};
                    if (*c.find(1, ea) != e) continue;
                    std::array<Index, 2> eb{std::min(v, others[1]), std::max(v, others[1])};
                    cell.boundary_patches.push_back({{0, v}, {1, e}, {2, f}, {1, *c.find(1, eb)}});
                }
            for (const auto& patch : cell.boundary_patches)
                cell.vertices.insert(cell.vertices.end(), patch.begin(), patch.end());
            std::sort(cell.vertices.begin(), cell.vertices.end());
            cell.vertices.erase(std::unique(cell.vertices.begin(), cell.vertices.end()), cell.vertices.end());
            cell.measure = vol;
            d.cells_[0].push_back(cell);
        }
    }

    for (int k = 0; k < n; ++k)
        for (const auto& cell : d.cells_[k])
            if (!(cell.measure > 0))
                d.diagnostics_.push_back("dual cell of " + std::to_string(k) + "-simplex " +
                                         std::to_string(cell.generator) + " has nonpositive measure " +
                                         std::to_string(cell.measure));
    return d;
}

struct QualityReport {
    struct Degree {
        double primal_min = 0, primal_max = 0;
        double dual_min = 0, dual_max = 0;
        double ratio_min = 0, ratio_max = 0;
        double primal_gradation = 0, dual_gradation = 0;
    };
    std::vector<Degree> degrees;  // indexed by primal degree k
    double worst_aspect = 0;      // circumradius / (n * inradius); 1 for regular simplices
};

inline double aspect_ratio(const SimplicialComplex& c, Index t)
{
    const int n = c.dimension();
    double facets = 0;
    for (int i = 0; i <= n; ++i) facets += c.measure(n - 1, c.face(n, t, i));
    double inradius = n * c.measure(n, t) / facets;
    Point cc = center(c, n, t, CenterRule::circumcentric).point;
    double R = (cc - c.point(c.simplex(n, t)[0])).norm();
    return R / (n * inradius);
}

inline QualityReport quality_report(const SimplicialComplex& c, const DualMesh& d)
{
    QualityReport q;
    const int n = c.dimension();
    const double inf = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n; ++k) {
        QualityReport::Degree g{inf, -inf, inf, -inf, inf, -inf, 0, 0};
        for (Index i = 0; i < c.size(k); ++i) {
            double p = c.measure(k, i), s = d.measure(k, i);
            g.primal_min = std::min(g.primal_min, p);
            g.primal_max = std::max(g.primal_max, p);
            g.dual_min = std::min(g.dual_min, s);
            g.dual_max = std::max(g.dual_max, s);
            g.ratio_min = std::min(g.ratio_min, s / p);
            g.ratio_max = std::max(g.ratio_max, s / p);
        }
        g.primal_gradation = g.primal_max / g.primal_min;
        g.dual_gradation = g.dual_max / g.dual_min;
        q.degrees.push_back(g);
    }
    for (Index t = 0; t < c.size(n); ++t) q.worst_aspect = std::max(q.worst_aspect, aspect_ratio(c, t));
    return q;
}

} // namespace dec
