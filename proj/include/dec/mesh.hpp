#pragma once

#include "common.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

namespace dec {

using SimplexKey = std::array<Index, 4>;

/// Extra ordering constraints for build_complex. Simplices listed here come
/// first (in the given order) in their degree's enumeration; the rest follow
/// lexicographically.
struct BuildOptions {
    std::array<std::vector<std::vector<Index>>, 4> leading;
};

/// Oriented simplicial complex of dimension 2 or 3. Immutable once built.
class SimplicialComplex {
public:
    int dimension() const { return n_; }
    Index size(int k) const
    {
        check_degree(k);
        return static_cast<Index>(orient_[k].size());
    }
    Index num_vertices() const { return size(0); }

    const Point& point(Index v) const { return points_[v]; }
    const std::vector<Point>& points() const { return points_; }

    /// Sorted vertex tuple of simplex `id` of degree k.
    std::span<const Index> simplex(int k, Index id) const
    {
        check_id(k, id);
        return {verts_[k].data() + static_cast<std::size_t>(id) * (k + 1), static_cast<std::size_t>(k + 1)};
    }

    /// Orientation relative to the sorted tuple. Only top simplices can carry -1
    /// (their sign is the sign of the geometric volume).
    int orientation(int k, Index id) const
    {
        check_id(k, id);
        return orient_[k][id];
    }

    double measure(int k, Index id) const
    {
        check_id(k, id);
        return measure_[k][id];
    }

    std::optional<Index> find(int k, std::span<const Index> sorted) const
    {
        if (k < 0 || k > n_ || sorted.size() != static_cast<std::size_t>(k + 1)) return std::nullopt;
        auto it = lookup_[k].find(make_key(sorted));
        if (it == lookup_[k].end()) return std::nullopt;
        return it->second;
    }

    /// (k+1)-simplices having simplex (k, id) as a face, ascending ids.
    std::span<const Index> cofaces(int k, Index id) const
    {
        check_id(k, id);
        if (k == n_) return {};
        const auto& off = coface_offset_[k];
        return {coface_[k].data() + off[id], static_cast<std::size_t>(off[id + 1] - off[id])};
    }

    /// n-simplices containing vertex v, ascending ids.
    std::span<const Index> vertex_star(Index v) const
    {
        check_id(0, v);
        return {star_.data() + star_offset_[v], static_cast<std::size_t>(star_offset_[v + 1] - star_offset_[v])};
    }

    /// Id of face i of simplex (k, id): the (k-1)-simplex without its i-th vertex.
    Index face(int k, Index id, int i) const
    {
        auto s = simplex(k, id);
        std::array<Index, 4> f{};
        int m = 0;
        for (int j = 0; j <= k; ++j)
            if (j != i) f[m++] = s[j];
        return *find(k - 1, std::span<const Index>(f.data(), static_cast<std::size_t>(k)));
    }

    /// Bounding-box diagonal of the vertex set.
    double scale() const { return scale_; }

    double volume() const
    {
        double v = 0;
        for (double m : measure_[n_]) v += m;
        return v;
    }

    /// A(sigma): number of n-simplices incident on at least one vertex of sigma.
    Index incident_top_count(int k, Index id) const
    {
        std::vector<Index> all;
        for (Index v : simplex(k, id)) {
            auto st = vertex_star(v);
            all.insert(all.end(), st.begin(), st.end());
        }
        std::sort(all.begin(), all.end());
        return static_cast<Index>(std::unique(all.begin(), all.end()) - all.begin());
    }

    bool is_boundary(int k, Index id) const
    {
        check_id(k, id);
        if (k >= n_) return false;
        return boundary_[k][id] != 0;
    }

    friend SimplicialComplex build_complex(int, std::vector<Point>, const std::vector<std::vector<Index>>&,
                                           const BuildOptions&);

private:
    static SimplexKey make_key(std::span<const Index> s)
    {
        SimplexKey key{-1, -1, -1, -1};
        std::copy(s.begin(), s.end(), key.begin());
        return key;
    }
    void check_degree(int k) const
    {
        if (k < 0 || k > n_) throw Error(ErrorKind::invalid, "simplex degree " + std::to_string(k) + " out of range");
    }
    void check_id(int k, Index id) const
    {
        check_degree(k);
        if (id < 0 || id >= static_cast<Index>(orient_[k].size()))
            throw Error(ErrorKind::invalid, "simplex id " + std::to_string(id) + " out of range for degree " +
                                                std::to_string(k));
    }

    int n_ = 0;
    double scale_ = 1;
    std::vector<Point> points_;
    std::array<std::vector<Index>, 4> verts_;
    std::array<std::vector<int>, 4> orient_;
    std::array<std::vector<double>, 4> measure_;
    std::array<std::map<SimplexKey, Index>, 4> lookup_;
    std::array<std::vector<Index>, 4> coface_;
    std::array<std::vector<Index>, 4> coface_offset_;
    std::array<std::vector<char>, 4> boundary_;
    std::vector<Index> star_;
    std::vector<Index> star_offset_;
};

namespace detail {

inline Eigen::MatrixXd edge_matrix(const std::vector<Point>& pts, std::span<const Index> s)
{
    Eigen::MatrixXd e(3, static_cast<Eigen::Index>(s.size()) - 1);
    for (std::size_t i = 1; i < s.size(); ++i) e.col(static_cast<Eigen::Index>(i) - 1) = pts[s[i]] - pts[s[0]];
    return e;
}

inline double simplex_measure(const std::vector<Point>& pts, std::span<const Index> s)
{
    if (s.size() == 1) return 1.0;
    Eigen::MatrixXd e = edge_matrix(pts, s);
    Eigen::MatrixXd g = e.transpose() * e;
    double det = g.determinant();
    return std::sqrt(std::max(det, 0.0)) / static_cast<double>(factorial(static_cast<int>(s.size()) - 1));
}

/// Signed n-volume times n! of a top simplex, using the first n coordinates.
inline double signed_top_det(int n, const std::vector<Point>& pts, std::span<const Index> s)
{
    Eigen::MatrixXd e = edge_matrix(pts, s).topRows(n);
    return e.determinant();
}

inline std::string tuple_string(std::span<const Index> s)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ']';
    return os.str();
}

} // namespace detail

/// Builds the complex generated by the given n-cells. Vertices are 3-vectors;
/// 2D meshes must have z = 0.
inline SimplicialComplex build_complex(int dimension, std::vector<Point> vertices,
                                       const std::vector<std::vector<Index>>& cells,
                                       const BuildOptions& options = {})
{
    if (dimension != 2 && dimension != 3)
        throw Error(ErrorKind::invalid, "dimension must be 2 or 3, got " + std::to_string(dimension));
    if (cells.empty()) throw Error(ErrorKind::invalid, "mesh has no cells");
    const int n = dimension;
    const Index nv = static_cast<Index>(vertices.size());
    for (Index v = 0; v < nv; ++v) {
        if (!vertices[v].allFinite()) throw Error(ErrorKind::invalid, "vertex " + std::to_string(v) + " is not finite");
        if (n == 2 && vertices[v].z() != 0.0)
            throw Error(ErrorKind::invalid, "vertex " + std::to_string(v) + " has nonzero z in a 2D mesh");
    }

    SimplicialComplex c;
    c.n_ = n;
    c.points_ = std::move(vertices);
    {
        Eigen::Vector3d lo = c.points_.front(), hi = c.points_.front();
        for (const auto& p : c.points_) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        c.scale_ = std::max((hi - lo).norm(), 1e-300);
    }

    // Validate cells and collect every sub-simplex.
    std::array<std::vector<SimplexKey>, 4> all;
    std::vector<SimplexKey> top;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& cell = cells[ci];
        if (cell.size() != static_cast<std::size_t>(n + 1))
            throw Error(ErrorKind::invalid, "cell " + std::to_string(ci) + " has " + std::to_string(cell.size()) +
                                                " vertices, expected " + std::to_string(n + 1));
        for (Index v : cell)
            if (v < 0 || v >= nv)
                throw Error(ErrorKind::invalid,
                            "cell " + std::to_string(ci) + " references vertex " + std::to_string(v) + " out of range");
        std::vector<Index> s(cell.begin(), cell.end());
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(ErrorKind::degenerate, "cell " + std::to_string(ci) + " " + detail::tuple_string(cell) +
                                                   " repeats a vertex");
        double det = detail::signed_top_det(n, c.points_, s);
        if (std::abs(det) <= 1e-12 * std::pow(c.scale_, n))
            throw Error(ErrorKind::degenerate,
                        "cell " + std::to_string(ci) + " " + detail::tuple_string(cell) + " has zero measure");
        top.push_back(SimplicialComplex::make_key(s));
        // all subsets
        const int m = n + 1;
        for (int mask = 1; mask < (1 << m); ++mask) {
            std::vector<Index> sub;
            for (int j = 0; j < m; ++j)
                if (mask & (1 << j)) sub.push_back(s[j]);
            all[sub.size() - 1].push_back(SimplicialComplex::make_key(sub));
        }
    }
    {
        auto sorted = top;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) {
            std::vector<Index> s(dup->begin(), dup->begin() + n + 1);
            throw Error(ErrorKind::invalid, "duplicate cell " + detail::tuple_string(s));
        }
    }

    for (int k = 0; k <= n; ++k) {
        auto& list = all[k];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        std::vector<SimplexKey> ordered;
        for (const auto& lead : options.leading[k]) {
            std::vector<Index> s(lead);
            std::sort(s.begin(), s.end());
            if (s.size() != static_cast<std::size_t>(k + 1))
                throw Error(ErrorKind::invalid, "leading simplex has wrong size");
            auto key = SimplicialComplex::make_key(s);
            if (!std::binary_search(list.begin(), list.end(), key))
                throw Error(ErrorKind::invalid, "leading simplex " + detail::tuple_string(s) + " not in the mesh");
            if (std::find(ordered.begin(), ordered.end(), key) != ordered.end())
                throw Error(ErrorKind::invalid, "leading simplex " + detail::tuple_string(s) + " listed twice");
            ordered.push_back(key);
        }
        for (const auto& key : list)
            if (std::find(ordered.begin(), ordered.end(), key) == ordered.end()) ordered.push_back(key);
        if (k == 0 && static_cast<Index>(ordered.size()) != nv) {
            // unreferenced vertices are not part of the complex
            throw Error(ErrorKind::invalid, "mesh has vertices not referenced by any cell");
        }
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            const auto& key = ordered[i];
            std::span<const Index> s(key.data(), static_cast<std::size_t>(k + 1));
            c.verts_[k].insert(c.verts_[k].end(), s.begin(), s.end());
            c.lookup_[k].emplace(key, static_cast<Index>(i));
            int o = 1;
            if (k == n) o = detail::signed_top_det(n, c.points_, s) > 0 ? 1 : -1;
            c.orient_[k].push_back(o);
            c.measure_[k].push_back(detail::simplex_measure(c.points_, s));
        }
    }

    // cofaces
    for (int k = 0; k < n; ++k) {
        std::vector<std::vector<Index>> co(c.orient_[k].size());
        for (Index t = 0; t < c.size(k + 1); ++t)
            for (int i = 0; i <= k + 1; ++i) co[c.face(k + 1, t, i)].push_back(t);
        c.coface_offset_[k].assign(co.size() + 1, 0);
        for (std::size_t i = 0; i < co.size(); ++i) {
            std::sort(co[i].begin(), co[i].end());
            c.coface_offset_[k][i + 1] = c.coface_offset_[k][i] + static_cast<Index>(co[i].size());
            c.coface_[k].insert(c.coface_[k].end(), co[i].begin(), co[i].end());
        }
    }
    // boundary flags: (n-1)-simplices with a single coface, and their faces
    for (int k = 0; k < n; ++k) c.boundary_[k].assign(c.orient_[k].size(), 0);
    for (Index f = 0; f < c.size(n - 1); ++f) {
        auto co = c.cofaces(n - 1, f);
        if (co.size() > 2)
            throw Error(ErrorKind::invalid, "non-manifold mesh: face " +
                                                detail::tuple_string(c.simplex(n - 1, f)) + " has " +
                                                std::to_string(co.size()) + " cofaces");
        if (co.size() == 1) {
            c.boundary_[n - 1][f] = 1;
            auto s = c.simplex(n - 1, f);
            const int m = n;
            for (int mask = 1; mask < (1 << m) - 1; ++mask) {
                std::vector<Index> sub;
                for (int j = 0; j < m; ++j)
                    if (mask & (1 << j)) sub.push_back(s[j]);
                c.boundary_[sub.size() - 1][*c.find(static_cast<int>(sub.size()) - 1, sub)] = 1;
            }
        }
    }
    // vertex stars
    {
        std::vector<std::vector<Index>> st(nv);
        for (Index t = 0; t < c.size(n); ++t)
            for (Index v : c.simplex(n, t)) st[v].push_back(t);
        c.star_offset_.assign(nv + 1, 0);
        for (Index v = 0; v < nv; ++v) {
            c.star_offset_[v + 1] = c.star_offset_[v] + static_cast<Index>(st[v].size());
            c.star_.insert(c.star_.end(), st[v].begin(), st[v].end());
        }
    }
    return c;
}

inline double measure(const SimplicialComplex& c, int k, Index id) { return c.measure(k, id); }

/// D_k: rows are (k+1)-simplices, columns k-simplices.
inline SparseOperator incidence_matrix(const SimplicialComplex& c, int k)
{
    if (k < 0 || k >= c.dimension())
        throw Error(ErrorKind::invalid, "incidence degree " + std::to_string(k) + " out of range");
    std::vector<Triplet> trip;
    for (Index t = 0; t < c.size(k + 1); ++t) {
        int o = c.orientation(k + 1, t);
        for (int i = 0; i <= k + 1; ++i) {
            Index f = c.face(k + 1, t, i);
            double sign = ((i % 2) ? -1.0 : 1.0) * o * c.orientation(k, f);
            trip.emplace_back(t, f, sign);
        }
    }
    SparseOperator op;
    op.matrix.resize(c.size(k + 1), c.size(k));
    op.matrix.setFromTriplets(trip.begin(), trip.end());
    op.rows = {Space::primal, k + 1};
    op.cols = {Space::primal, k};
    return op;
}

enum class CenterRule { barycentric, circumcentric };

inline const char* to_string(CenterRule r) { return r == CenterRule::barycentric ? "barycentric" : "circumcentric"; }

struct CenterResult {
    Point point;
    bool outside = false;  // circumcenter not in the closed simplex
};

/// Center of the simplex spanned by `pts`. `scale` sets the degeneracy threshold.
inline CenterResult center(std::span<const Point> pts, CenterRule rule, double scale)
{
    CenterResult r;
    const int k = static_cast<int>(pts.size()) - 1;
    if (rule == CenterRule::barycentric || k == 0) {
        Point s = Point::Zero();
        for (const auto& p : pts) s += p;
        r.point = s / static_cast<double>(pts.size());
        return r;
    }
    Eigen::MatrixXd e(3, k);
    Eigen::VectorXd b(k);
    for (int i = 0; i < k; ++i) {
        e.col(i) = pts[i + 1] - pts[0];
        b(i) = 0.5 * e.col(i).squaredNorm();
    }
    Eigen::MatrixXd g = e.transpose() * e;
    double vol = std::sqrt(std::max(g.determinant(), 0.0));
    if (vol <= 1e-12 * std::pow(scale, k))
        throw Error(ErrorKind::degenerate, "circumcenter of a degenerate simplex");
    Eigen::VectorXd a = g.ldlt().solve(b);
    r.point = pts[0] + e * a;
    r.outside = (1.0 - a.sum()) < -1e-12 || a.minCoeff() < -1e-12;
    return r;
}

inline CenterResult center(const SimplicialComplex& c, int k, Index id, CenterRule rule)
{
    std::array<Point, 4> pts;
    auto s = c.simplex(k, id);
    for (int i = 0; i <= k; ++i) pts[i] = c.point(s[i]);
    return center(std::span<const Point>(pts.data(), static_cast<std::size_t>(k + 1)), rule, c.scale());
}

/// Barycentric coordinates of x in top simplex t (first n coordinates).
inline Eigen::Vector4d barycentric(const SimplicialComplex& c, Index t, const Point& x)
{
    const int n = c.dimension();
    auto s = c.simplex(n, t);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) a.col(i) = (c.point(s[i + 1]) - c.point(s[0])).head(n);
    Eigen::VectorXd l = a.partialPivLu().solve((x - c.point(s[0])).head(n));
    Eigen::Vector4d out = Eigen::Vector4d::Zero();
    out(0) = 1.0 - l.sum();
    for (int i = 0; i < n; ++i) out(i + 1) = l(i);
    return out;
}

/// Walk-based point location among top simplices, starting from `hint`.
/// Falls back to a linear scan when the walk leaves the mesh.
inline std::optional<Index> locate(const SimplicialComplex& c, const Point& x, Index hint = 0, double tol = 1e-12)
{
    const int n = c.dimension();
    Index t = std::clamp<Index>(hint, 0, c.size(n) - 1);
    for (Index step = 0; step < c.size(n) + 4; ++step) {
        Eigen::Vector4d l = barycentric(c, t, x);
        int worst = 0;
        for (int i = 1; i <= n; ++i)
            if (l(i) < l(worst)) worst = i;
        if (l(worst) >= -tol) return t;
        Index f = c.face(n, t, worst);
        auto co = c.cofaces(n - 1, f);
        if (co.size() < 2) break;
        t = co[0] == t ? co[1] : co[0];
    }
    for (Index u = 0; u < c.size(n); ++u) {
        Eigen::Vector4d l = barycentric(c, u, x);
        if (l.head(n + 1).minCoeff() >= -tol) return u;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generators

/// The eight-vertex mesh of the condition-number study. Vertices 0..3 are
/// v1..v4; 4..7 are the apexes of the equilateral triangles on
/// [v1,v3], [v2,v3], [v1,v4], [v2,v4]. The first edges are
/// [v1,v2], [v1,v3], [v1,v4], [v2,v3], [v2,v4].
inline SimplicialComplex generate_fig8(double P)
{
    if (!(P > 0.5)) throw Error(ErrorKind::invalid, "fig8 requires P > 1/2");
    std::vector<Point> v{{0, 0, 0}, {0, 1, 0}, {P, 0.5, 0}, {-P, 0.5, 0}};
    auto apex = [](const Point& a, const Point& b, const Point& away) {
        Point m = 0.5 * (a + b);
        Point d = b - a;
        Point nrm(-d.y(), d.x(), 0);
        nrm.normalize();
        if (nrm.dot(away - m) > 0) nrm = -nrm;
        return Point(m + nrm * (std::sqrt(3.0) / 2.0) * d.norm());
    };
    v.push_back(apex(v[0], v[2], v[1]));
    v.push_back(apex(v[1], v[2], v[0]));
    v.push_back(apex(v[0], v[3], v[1]));
    v.push_back(apex(v[1], v[3], v[0]));
    std::vector<std::vector<Index>> cells{{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {0, 3, 6}, {1, 3, 7}};
    BuildOptions opt;
    opt.leading[1] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    return build_complex(2, std::move(v), cells, opt);
}

/// nx-by-ny grid on [x0,x1]x[y0,y1], each square split along a diagonal.
/// `alternate` flips the diagonal in a checkerboard pattern.
inline SimplicialComplex generate_grid(int nx, int ny, double x0 = 0, double y0 = 0, double x1 = 1, double y1 = 1,
                                       bool alternate = false)
{
    if (nx < 1 || ny < 1) throw Error(ErrorKind::invalid, "grid needs at least one cell per direction");
    std::vector<Point> v;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            v.emplace_back(x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny, 0);
    auto id = [nx](int i, int j) { return static_cast<Index>(j * (nx + 1) + i); };
    std::vector<std::vector<Index>> cells;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            Index a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            if (alternate && (i + j) % 2) {
                cells.push_back({a, b, d});
                cells.push_back({b, c, d});
            } else {
                cells.push_back({a, b, c});
                cells.push_back({a, c, d});
            }
        }
    return build_complex(2, std::move(v), cells);
}

/// Patch of the equilateral triangular lattice with unit edges: `rows` strips
/// of 2*`cols` triangles.
inline SimplicialComplex generate_equilateral(int cols, int rows)
{
    if (cols < 1 || rows < 1) throw Error(ErrorKind::invalid, "lattice needs at least one cell per direction");
    const double h = std::sqrt(3.0) / 2.0;
    std::vector<Point> v;
    for (int j = 0; j <= rows; ++j)
        for (int i = 0; i <= cols; ++i) v.emplace_back(i + 0.5 * (j % 2), j * h, 0);
    auto id = [cols](int i, int j) { return static_cast<Index>(j * (cols + 1) + i); };
    std::vector<std::vector<Index>> cells;
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            if (j % 2 == 0) {
                cells.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                cells.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            } else {
                cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            }
        }
    return build_complex(2, std::move(v), cells);
}

/// nx*ny*nz cubes on the unit box, each split into six tetrahedra around the
/// main diagonal.
inline SimplicialComplex generate_tet_grid(int nx, int ny, int nz)
{
    if (nx < 1 || ny < 1 || nz < 1) throw Error(ErrorKind::invalid, "grid needs at least one cell per direction");
    std::vector<Point> v;
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i) v.emplace_back(double(i) / nx, double(j) / ny, double(k) / nz);
    auto id = [&](int i, int j, int k) { return static_cast<Index>((k * (ny + 1) + j) * (nx + 1) + i); };
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<std::vector<Index>> cells;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                for (const auto& p : perms) {
                    int c[3] = {i, j, k};
                    std::vector<Index> tet{id(c[0], c[1], c[2])};
                    for (int s = 0; s < 3; ++s) {
                        c[p[s]] += 1;
                        tet.push_back(id(c[0], c[1], c[2]));
                    }
                    cells.push_back(tet);
                }
    return build_complex(3, std::move(v), cells);
}

/// Same connectivity as `c` with vertices replaced.
inline SimplicialComplex with_points(const SimplicialComplex& c, std::vector<Point> pts)
{
    std::vector<std::vector<Index>> cells;
    for (Index t = 0; t < c.size(c.dimension()); ++t) {
        auto s = c.simplex(c.dimension(), t);
        cells.emplace_back(s.begin(), s.end());
    }
    return build_complex(c.dimension(), std::move(pts), cells);
}

/// Cells of the complex as vertex tuples (orientation restored from the sign).
inline std::vector<std::vector<Index>> cells_of(const SimplicialComplex& c)
{
    std::vector<std::vector<Index>> cells;
    const int n = c.dimension();
    for (Index t = 0; t < c.size(n); ++t) {
        auto s = c.simplex(n, t);
        std::vector<Index> cell(s.begin(), s.end());
        if (c.orientation(n, t) < 0) std::swap(cell[0], cell[1]);
        cells.push_back(cell);
    }
    return cells;
}

} // namespace dec
