#pragma once

#include "mesh.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace dec {

/// Barycentric coordinates of a top simplex: λ_i(x) = [i == 0] + ∇λ_i · (x - v_0),
/// indexed by position in the sorted vertex tuple.
struct BarycentricFrame {
    Index simplex = 0;
    int n = 0;
    Point origin = Point::Zero();
    std::array<Point, 4> grad{};

    double lambda(int i, const Point& x) const { return (i == 0 ? 1.0 : 0.0) + grad[i].dot(x - origin); }
    Eigen::Vector4d lambdas(const Point& x) const
    {
        Eigen::Vector4d l = Eigen::Vector4d::Zero();
        for (int i = 0; i <= n; ++i) l(i) = lambda(i, x);
        return l;
    }
};

inline BarycentricFrame barycentric_frame(const SimplicialComplex& c, Index t)
{
    const int n = c.dimension();
    auto s = c.simplex(n, t);
    BarycentricFrame f;
    f.simplex = t;
    f.n = n;
    f.origin = c.point(s[0]);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) a.col(i) = (c.point(s[i + 1]) - f.origin).head(n);
    Eigen::MatrixXd inv = a.inverse();
    Point sum = Point::Zero();
    for (int i = 1; i <= n; ++i) {
        Point g = Point::Zero();
        g.head(n) = inv.row(i - 1).transpose();
        f.grad[i] = g;
        sum += g;
    }
    f.grad[0] = -sum;
    return f;
}

/// Exact ∫_T λ_i λ_j over top simplex t.
inline double integral_lambda_pair(const SimplicialComplex& c, Index t, int i, int j)
{
    const int n = c.dimension();
    return c.measure(n, t) * (i == j ? 2.0 : 1.0) / ((n + 1) * (n + 2));
}

namespace detail {

/// Local positions (within the sorted top simplex) of the vertices of a face.
inline std::array<int, 4> local_positions(std::span<const Index> top, std::span<const Index> face)
{
    std::array<int, 4> pos{};
    for (std::size_t a = 0; a < face.size(); ++a)
        for (std::size_t b = 0; b < top.size(); ++b)
            if (top[b] == face[a]) pos[a] = static_cast<int>(b);
    return pos;
}

/// Vector proxy of dλ_{p_0} ∧ ... ∧ dλ_{p_{m-1}} for m = 0, 1, 2.
inline Point wedge_proxy(const BarycentricFrame& f, const int* p, int m)
{
    if (m == 1) return f.grad[p[0]];
    return f.grad[p[0]].cross(f.grad[p[1]]);
}

/// det of the Gram matrix between two lists of m gradients.
inline double wedge_inner(const BarycentricFrame& f, const int* p, const int* q, int m)
{
    if (m == 0) return 1.0;
    if (m == 1) return f.grad[p[0]].dot(f.grad[q[0]]);
    if (m == 2) {
        return f.grad[p[0]].dot(f.grad[q[0]]) * f.grad[p[1]].dot(f.grad[q[1]]) -
               f.grad[p[0]].dot(f.grad[q[1]]) * f.grad[p[1]].dot(f.grad[q[0]]);
    }
    Eigen::Matrix3d g;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) g(a, b) = f.grad[p[a]].dot(f.grad[q[b]]);
    return g.topLeftCorner(m, m).determinant();
}

} // namespace detail

/// Value of W_σ for σ = (k, sigma) at x inside top simplex t. Scalar-valued
/// forms (k = 0 and k = n) return their value in the first component; σ not a
/// face of t gives zero.
inline Point eval_whitney(const SimplicialComplex& c, int k, Index sigma, const Point& x, Index t,
                          const BarycentricFrame* frame = nullptr)
{
    const int n = c.dimension();
    if (k < 0 || k > n) throw Error(ErrorKind::invalid, "form degree out of range");
    BarycentricFrame local;
    if (!frame) {
        local = barycentric_frame(c, t);
        frame = &local;
    }
    Eigen::Vector4d l = frame->lambdas(x);
    if (l.head(n + 1).minCoeff() < -1e-9) throw Error(ErrorKind::invalid, "point outside the stated element");
    auto top = c.simplex(n, t);
    auto s = c.simplex(k, sigma);
    for (Index v : s)
        if (std::find(top.begin(), top.end(), v) == top.end()) return Point::Zero();
    if (k == n) return Point(1.0 / c.measure(n, t), 0, 0);
    auto pos = detail::local_positions(top, s);
    if (k == 0) return Point(l(pos[0]), 0, 0);
    Point w = Point::Zero();
    for (int i = 0; i <= k; ++i) {
        int rest[3];
        int m = 0;
        for (int j = 0; j <= k; ++j)
            if (j != i) rest[m++] = pos[j];
        w += ((i % 2) ? -1.0 : 1.0) * l(pos[i]) * detail::wedge_proxy(*frame, rest, k);
    }
    return static_cast<double>(factorial(k)) * w;
}

/// Element Gram matrix of Whitney k-forms on top simplex t; `faces` receives the
/// global ids of its k-faces in the order of the rows.
inline Eigen::MatrixXd element_whitney_gram(const SimplicialComplex& c, int k, Index t, std::vector<Index>& faces)
{
    const int n = c.dimension();
    auto top = c.simplex(n, t);
    faces.clear();
    std::vector<std::array<int, 4>> local;
    for (int mask = 0; mask < (1 << (n + 1)); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != k + 1) continue;
        std::array<int, 4> p{};
        std::array<Index, 4> g{};
        int m = 0;
        for (int j = 0; j <= n; ++j)
            if (mask & (1 << j)) {
                p[m] = j;
                g[m] = top[j];
                ++m;
            }
        local.push_back(p);
        faces.push_back(*c.find(k, std::span<const Index>(g.data(), static_cast<std::size_t>(k + 1))));
    }
    const auto nf = static_cast<Eigen::Index>(faces.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nf, nf);
    if (k == n) {
        g(0, 0) = 1.0 / c.measure(n, t);
        return g;
    }
    BarycentricFrame fr = barycentric_frame(c, t);
    const double kf = static_cast<double>(factorial(k));
    for (Eigen::Index a = 0; a < nf; ++a)
        for (Eigen::Index b = a; b < nf; ++b) {
            const auto& p = local[a];
            const auto& q = local[b];
            double sum = 0;
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j) {
                    int pr[3], qr[3];
                    int m = 0;
                    for (int x = 0; x <= k; ++x)
                        if (x != i) pr[m++] = p[x];
                    m = 0;
                    for (int x = 0; x <= k; ++x)
                        if (x != j) qr[m++] = q[x];
                    double sign = ((i + j) % 2) ? -1.0 : 1.0;
                    sum += sign * integral_lambda_pair(c, t, p[i], q[j]) * detail::wedge_inner(fr, pr, qr, k);
                }
            g(a, b) = g(b, a) = kf * kf * sum;
        }
    return g;
}

/// ∫_K W_{σ_i} · W_{σ_j} in closed form.
inline double whitney_inner_product(const SimplicialComplex& c, int k, Index i, Index j)
{
    const int n = c.dimension();
    auto si = c.simplex(k, i);
    auto sj = c.simplex(k, j);
    double total = 0;
    std::vector<Index> faces;
    for (Index t : c.vertex_star(si[0])) {
        auto top = c.simplex(n, t);
        auto has = [&](std::span<const Index> s) {
            for (Index v : s)
                if (std::find(top.begin(), top.end(), v) == top.end()) return false;
            return true;
        };
        if (!has(si) || !has(sj)) continue;
        Eigen::MatrixXd g = element_whitney_gram(c, k, t, faces);
        auto a = std::find(faces.begin(), faces.end(), i) - faces.begin();
        auto b = std::find(faces.begin(), faces.end(), j) - faces.begin();
        total += g(a, b);
    }
    return total;
}

/// x ↦ Σ w(σ) W_σ(x) for a primal k-cochain w.
class WhitneyInterpolant {
public:
    WhitneyInterpolant(const SimplicialComplex& c, int k, Eigen::VectorXd w) : c_(&c), k_(k), w_(std::move(w))
    {
        if (k < 0 || k > c.dimension()) throw Error(ErrorKind::invalid, "form degree out of range");
        if (w_.size() != c.size(k))
            throw Error(ErrorKind::invalid, "cochain has " + std::to_string(w_.size()) + " entries, expected " +
                                                std::to_string(c.size(k)) + " for degree " + std::to_string(k));
    }

    int degree() const { return k_; }

    /// Value at x inside top simplex t.
    Point operator()(const Point& x, Index t) const
    {
        const int n = c_->dimension();
        BarycentricFrame fr = barycentric_frame(*c_, t);
        auto top = c_->simplex(n, t);
        Point v = Point::Zero();
        for (int mask = 0; mask < (1 << (n + 1)); ++mask) {
            if (__builtin_popcount(static_cast<unsigned>(mask)) != k_ + 1) continue;
            std::array<Index, 4> g{};
            int m = 0;
            for (int j = 0; j <= n; ++j)
                if (mask & (1 << j)) g[m++] = top[j];
            Index id = *c_->find(k_, std::span<const Index>(g.data(), static_cast<std::size_t>(k_ + 1)));
            v += w_(id) * eval_whitney(*c_, k_, id, x, t, &fr);
        }
        return v;
    }

    /// Value at x, locating the element first.
    Point at(const Point& x) const
    {
        auto t = locate(*c_, x, hint_);
        if (!t) throw Error(ErrorKind::invalid, "point outside the mesh");
        hint_ = *t;
        return (*this)(x, *t);
    }

private:
    const SimplicialComplex* c_;
    int k_;
    Eigen::VectorXd w_;
    mutable Index hint_ = 0;
};

inline WhitneyInterpolant interpolate(const SimplicialComplex& c, int k, const Eigen::VectorXd& w)
{
    return WhitneyInterpolant(c, k, w);
}

} // namespace dec
