#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace dec {

using Vec2 = Eigen::Vector2d;
using Polygon2 = std::vector<Vec2>;

inline double signed_area(const Polygon2& p)
{
    double a = 0;
    const std::size_t m = p.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& u = p[i];
        const Vec2& w = p[(i + 1) % m];
        a += u.x() * w.y() - w.x() * u.y();
    }
    return 0.5 * a;
}

/// Sutherland–Hodgman clip of `in` against the half-plane a·y <= b. The subject
/// may be nonconvex; the result then can contain zero-width bridges but its
/// signed area is exact.
inline void clip_halfplane(const Polygon2& in, const Vec2& a, double b, Polygon2& out)
{
    out.clear();
    const std::size_t m = in.size();
    if (m == 0) return;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& p = in[i];
        const Vec2& q = in[(i + 1) % m];
        double fp = a.dot(p) - b;
        double fq = a.dot(q) - b;
        bool ip = fp <= 0, iq = fq <= 0;
        if (ip) out.push_back(p);
        if (ip != iq) {
            double t = fp / (fp - fq);
            out.push_back(p + t * (q - p));
        }
    }
    if (out.size() < 3) out.clear();
}

/// Crossing-number point-in-polygon test.
inline bool point_in_polygon(const Polygon2& p, const Vec2& x)
{
    bool in = false;
    const std::size_t m = p.size();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Vec2& a = p[i];
        const Vec2& b = p[j];
        if ((a.y() > x.y()) != (b.y() > x.y())) {
            double xc = a.x() + (x.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (x.x() < xc) in = !in;
        }
    }
    return in;
}

/// Distance from x to segment [a, b] and the clamped parameter of the foot point.
inline double segment_distance(const Vec2& a, const Vec2& b, const Vec2& x, double* t_out = nullptr)
{
    Vec2 d = b - a;
    double l2 = d.squaredNorm();
    double t = l2 > 0 ? std::clamp((x - a).dot(d) / l2, 0.0, 1.0) : 0.0;
    if (t_out) *t_out = t;
    return (a + t * d - x).norm();
}

inline double boundary_distance(const Polygon2& p, const Vec2& x)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) best = std::min(best, segment_distance(p[i], p[(i + 1) % p.size()], x));
    return best;
}

/// True when no two non-adjacent edges intersect.
inline bool is_simple(const Polygon2& p)
{
    const std::size_t m = p.size();
    auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) {
        return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (j == i + 1 || (i == 0 && j == m - 1)) continue;
            const Vec2 &a = p[i], &b = p[(i + 1) % m], &c = p[j], &d = p[(j + 1) % m];
            double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
            if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return false;
        }
    return true;
}

/// Convex polyhedron as a list of planar faces, each a loop of points.
struct ConvexPolyhedron {
    std::vector<std::vector<Eigen::Vector3d>> faces;
    /// Tag of the plane each face lies in (-1 for the initial box).
    std::vector<int> tags;
};

inline ConvexPolyhedron box_polyhedron(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi)
{
    auto P = [&](int i) { return Eigen::Vector3d(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(), i & 4 ? hi.z() : lo.z()); };
    ConvexPolyhedron b;
    const int loops[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    for (const auto& l : loops) {
        b.faces.push_back({P(l[0]), P(l[1]), P(l[2]), P(l[3])});
        b.tags.push_back(-1);
    }
    return b;
}

/// Clip against a·y <= c; the cap face gets `tag`. Vertices within a relative
/// 1e-12 of the plane count as on it, so cuts through existing vertices and
/// faces lying in the plane stay consistent.
inline void clip_halfspace(const ConvexPolyhedron& in, const Eigen::Vector3d& a, double c, int tag, ConvexPolyhedron& out)
{
    out.faces.clear();
    out.tags.clear();
    double scale = 0;
    for (const auto& loop : in.faces)
        for (const auto& p : loop) scale = std::max(scale, p.norm());
    const double eps = 1e-12 * a.norm() * std::max(scale, std::abs(c) / std::max(a.norm(), 1e-300));
    std::vector<Eigen::Vector3d> cap;
    std::vector<double> f;
    for (std::size_t fi = 0; fi < in.faces.size(); ++fi) {
        const auto& loop = in.faces[fi];
        const std::size_t m = loop.size();
        f.resize(m);
        bool any_out = false, all_on = true;
        for (std::size_t i = 0; i < m; ++i) {
            f[i] = a.dot(loop[i]) - c;
            if (f[i] > eps) any_out = true;
            if (std::abs(f[i]) > eps) all_on = false;
        }
        if (all_on) continue;
        if (!any_out) {
            for (std::size_t i = 0; i < m; ++i)
                if (std::abs(f[i]) <= eps) cap.push_back(loop[i]);
            out.faces.push_back(loop);
            out.tags.push_back(in.tags[fi]);
            continue;
        }
        std::vector<Eigen::Vector3d> kept;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = (i + 1) % m;
            if (f[i] <= eps) kept.push_back(loop[i]);
            if (std::abs(f[i]) <= eps) cap.push_back(loop[i]);
            if ((f[i] < -eps && f[j] > eps) || (f[i] > eps && f[j] < -eps)) {
                Eigen::Vector3d r = loop[i] + (f[i] / (f[i] - f[j])) * (loop[j] - loop[i]);
                kept.push_back(r);
                cap.push_back(r);
            }
        }
        if (kept.size() >= 3) {
            out.faces.push_back(std::move(kept));
            out.tags.push_back(in.tags[fi]);
        }
    }
    if (out.faces.empty()) return;
    std::vector<Eigen::Vector3d> uniq;
    const double tol = 1e-10 * std::max(scale, 1e-300);
    for (const auto& p : cap) {
        bool dup = false;
        for (const auto& q : uniq)
            if ((p - q).norm() <= tol) dup = true;
        if (!dup) uniq.push_back(p);
    }
    if (uniq.size() < 3) return;
    // order the cap around its centroid, outward normal = a
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    for (const auto& p : uniq) g += p;
    g /= static_cast<double>(uniq.size());
    Eigen::Vector3d u = a.unitOrthogonal(), w = a.normalized().cross(u);
    std::sort(uniq.begin(), uniq.end(), [&](const Eigen::Vector3d& p, const Eigen::Vector3d& q) {
        return std::atan2((p - g).dot(w), (p - g).dot(u)) < std::atan2((q - g).dot(w), (q - g).dot(u));
    });
    out.faces.push_back(std::move(uniq));
    out.tags.push_back(tag);
}

inline double volume(const ConvexPolyhedron& p)
{
    if (p.faces.empty()) return 0;
    const Eigen::Vector3d o = p.faces.front().front();
    double v = 0;
    for (const auto& loop : p.faces)
        for (std::size_t i = 1; i + 1 < loop.size(); ++i)
            v += (loop[0] - o).dot((loop[i] - o).cross(loop[i + 1] - o));
    return v / 6.0;
}

} // namespace dec
