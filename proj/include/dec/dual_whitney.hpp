#pragma once

#include "dual.hpp"
#include "sibson.hpp"
#include "whitney.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace dec {

/// Region on which Sibson coordinates are evaluated. Pieces tile the domain.
///
/// A dual cell of an interior vertex is a single piece. In 2D the clipped dual
/// cell of a boundary vertex with at least three incident triangles is split
/// along the chord joining its first and last triangle barycenters: the core
/// piece has only barycenters as vertices, the layer piece holds the boundary
/// midpoints and the vertex itself. At a reflex corner the vertex lies inside
/// the core, which then overhangs the domain; the two boundary dual edges get
/// a triangle piece each instead of a layer.
struct InterpolationPiece {
    Index vertex = 0;
    std::vector<DualVertexRef> sites;
    std::shared_ptr<const Sibson> sibson;

    int site_index(DualVertexRef r) const
    {
        for (std::size_t i = 0; i < sites.size(); ++i)
            if (sites[i] == r) return static_cast<int>(i);
        return -1;
    }
};

/// Dual Whitney form attached to the dual cell of primal simplex
/// (n - degree, generator).
struct DualWhitneyForm {
    int degree = 0;
    Index generator = 0;
    // dual edges
    DualVertexRef from, to;
    // dual faces: canonical fan around the vertex centroid
    Point centroid = Point::Zero();
    std::vector<std::array<Point, 3>> triangles;
    std::vector<double> weights;
    // dual cells
    double measure = 0;
};

struct DualEdgeInPiece {
    Index facet;  // primal (n-1)-simplex
    int from, to;  // site indices
};

/// Tetrahedron (apex, c̄, w_i, w_{i+1}) of a 3D dual-face fan inside a vertex cell.
struct FanTet {
    Index edge;
    double weight;
    BarycentricFrame frame;  // vertices ordered c̄, w_i, w_{i+1}, apex
    Eigen::Matrix3d inv;
    Point origin;
};

class DualWhitneyBasis {
public:
    DualWhitneyBasis(const SimplicialComplex& c, const DualMesh& d, SibsonConfig cfg = {}, bool split_boundary = true)
        : c_(&c), d_(&d), cfg_(cfg)
    {
        if (d.rule() != CenterRule::barycentric)
            throw Error(ErrorKind::invalid, "dual Whitney forms need the barycentric dual");
        const int n = c.dimension();
        pieces_of_vertex_.resize(c.size(0));
        for (Index v = 0; v < c.size(0); ++v) {
            const DualCell& cell = d.cell(0, v);
            if (n == 2)
                build_pieces_2d(v, cell, split_boundary);
            else
                build_piece_3d(v, cell);
        }
        for (std::size_t p = 0; p < pieces_.size(); ++p) {
            const auto& piece = pieces_[p];
            std::vector<DualEdgeInPiece> edges;
            for (Index f = 0; f < c.size(n - 1); ++f) {
                const auto& seg = d.cell(n - 1, f).vertices;
                int a = piece.site_index(seg[0]), b = piece.site_index(seg[1]);
                if (a >= 0 && b >= 0) edges.push_back({f, a, b});
            }
            piece_edges_.push_back(std::move(edges));
        }
        if (n == 3) build_fans();
    }

    const SimplicialComplex& complex() const { return *c_; }
    const DualMesh& dual() const { return *d_; }
    const std::vector<InterpolationPiece>& pieces() const { return pieces_; }
    const std::vector<std::size_t>& pieces_of_vertex(Index v) const { return pieces_of_vertex_.at(v); }
    const std::vector<DualEdgeInPiece>& edges_in_piece(std::size_t p) const { return piece_edges_.at(p); }
    const std::vector<FanTet>& fan_tets(std::size_t p) const { return fans_.at(p); }

    /// Piece containing x (closed), if any.
    std::optional<std::size_t> locate(const Point& x) const
    {
        auto t = dec::locate(*c_, x, hint_, 1e-9);
        if (t) {
            hint_ = *t;
            for (Index v : c_->simplex(c_->dimension(), *t))
                for (std::size_t p : pieces_of_vertex_[v])
                    if (pieces_[p].sibson->locate(x) != Location::outside) return p;
        }
        for (std::size_t p = 0; p < pieces_.size(); ++p)
            if (pieces_[p].sibson->locate(x) != Location::outside) return p;
        return std::nullopt;
    }

    /// Form of dual degree k for primal simplex (n - k, generator).
    DualWhitneyForm form(int k, Index generator) const
    {
        const int n = c_->dimension();
        if (k < 0 || k > n) throw Error(ErrorKind::invalid, "dual form degree out of range");
        DualWhitneyForm f;
        f.degree = k;
        f.generator = generator;
        const DualCell& cell = d_->cell(n - k, generator);
        if (k == 1) {
            f.from = cell.vertices[0];
            f.to = cell.vertices[1];
        } else if (k == n) {
            f.measure = cell.measure;
        } else if (k == 2) {
            // 3D dual face
            Point cbar = Point::Zero();
            for (auto r : cell.vertices) cbar += d_->vertex(r);
            cbar /= static_cast<double>(cell.vertices.size());
            f.centroid = cbar;
            double total = 0;
            for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
                const Point& a = d_->vertex(cell.vertices[i]);
                const Point& b = d_->vertex(cell.vertices[(i + 1) % cell.vertices.size()]);
                f.triangles.push_back({cbar, a, b});
                double area = 0.5 * (a - cbar).cross(b - cbar).norm();
                f.weights.push_back(area);
                total += area;
            }
            for (double& w : f.weights) w /= total;
        }
        return f;
    }

    /// Value of the form at x; zero outside its support. Scalar forms use the
    /// first component.
    Point eval(const DualWhitneyForm& form, const Point& x) const
    {
        auto p = locate(x);
        if (!p) return Point::Zero();
        return eval_in_piece(form, *p, x);
    }

    Point eval_in_piece(const DualWhitneyForm& form, std::size_t p, const Point& x) const
    {
        const int n = c_->dimension();
        const auto& piece = pieces_[p];
        if (form.degree == n)
            return piece.vertex == form.generator ? Point(1.0 / form.measure, 0, 0) : Point::Zero();
        if (form.degree == 0) {
            int i = piece.site_index({n, form.generator});
            if (i < 0) return Point::Zero();
            std::vector<double> lam(piece.sites.size());
            piece.sibson->coordinates(x, lam);
            return Point(lam[static_cast<std::size_t>(i)], 0, 0);
        }
        if (form.degree == 1) {
            int i = piece.site_index(form.from), j = piece.site_index(form.to);
            if (i < 0 || j < 0) return Point::Zero();
            std::vector<double> lam(piece.sites.size());
            std::vector<Point> grad(piece.sites.size());
            piece.sibson->coordinates(x, lam);
            piece.sibson->gradient(x, 1e-4 * piece.sibson->diameter(), grad, false);
            auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
            return lam[ui] * grad[uj] - lam[uj] * grad[ui];
        }
        // 3D dual face
        for (const auto& ft : fans_[p]) {
            if (ft.edge != form.generator) continue;
            Eigen::Vector3d l = ft.inv * (x - ft.origin);
            if (l.minCoeff() < -1e-12 || l.sum() > 1 + 1e-12) continue;
            return ft.weight * fan_whitney(ft, x);
        }
        return Point::Zero();
    }

    /// Whitney 2-form of face (c̄, w_i, w_{i+1}) in a fan tetrahedron.
    static Point fan_whitney(const FanTet& ft, const Point& x)
    {
        const auto& fr = ft.frame;
        Eigen::Vector4d l = fr.lambdas(x);
        return 2.0 * (l(0) * fr.grad[1].cross(fr.grad[2]) + l(1) * fr.grad[2].cross(fr.grad[0]) +
                      l(2) * fr.grad[0].cross(fr.grad[1]));
    }

private:
    void add_piece(Index v, std::vector<DualVertexRef> sites)
    {
        InterpolationPiece piece;
        piece.vertex = v;
        PolyCell pc;
        pc.dimension = 2;
        for (auto r : sites) pc.vertices.push_back(d_->vertex(r));
        piece.sites = std::move(sites);
        piece.sibson = std::make_shared<const Sibson>(std::move(pc), cfg_);
        pieces_of_vertex_[v].push_back(pieces_.size());
        pieces_.push_back(std::move(piece));
    }

    void build_pieces_2d(Index v, const DualCell& cell, bool split)
    {
        const auto& loop = cell.vertices;
        std::vector<DualVertexRef> core;
        for (auto r : loop)
            if (r.k == 2) core.push_back(r);
        if (!split || !c_->is_boundary(0, v) || core.size() < 3) {
            add_piece(v, loop);
            return;
        }
        // loop = [m_start, c(T_1) .. c(T_k), m_end, v]
        const DualVertexRef ms = loop.front(), me = loop[loop.size() - 2], a = loop.back();
        auto poly = [&](const std::vector<DualVertexRef>& rs) {
            Polygon2 p;
            for (auto r : rs) p.push_back(d_->vertex(r).head<2>());
            return p;
        };
        auto valid = [&](const Polygon2& p) { return signed_area(p) > 0 && is_simple(p); };
        const Polygon2 pc = poly(core);
        if (!valid(pc)) {
            add_piece(v, loop);
            return;
        }
        const Vec2 va = d_->vertex(a).head<2>();
        if (!point_in_polygon(pc, va)) {
            std::vector<DualVertexRef> layer{core.back(), me, a, ms, core.front()};
            if (!valid(poly(layer))) {
                add_piece(v, loop);
                return;
            }
            add_piece(v, core);
            add_piece(v, layer);
            return;
        }
        // reflex corner: the core reaches past the vertex into the exterior
        // notch; the boundary dual edges get a triangle each
        std::vector<DualVertexRef> first{ms, core.front(), a}, last{core.back(), me, a};
        if (!valid(poly(first)) || !valid(poly(last))) {
            add_piece(v, loop);
            return;
        }
        add_piece(v, core);
        add_piece(v, first);
        add_piece(v, last);
    }

    void build_piece_3d(Index v, const DualCell& cell)
    {
        InterpolationPiece piece;
        piece.vertex = v;
        piece.sites = cell.vertices;
        PolyCell pc;
        pc.dimension = 3;
        pc.apex = c_->point(v);
        for (auto r : piece.sites) pc.vertices.push_back(d_->vertex(r));
        auto to_loop = [&](const std::vector<DualVertexRef>& rs) {
            std::vector<int> l;
            for (auto r : rs) l.push_back(piece.site_index(r));
            return l;
        };
        for (Index e : cell.face_generators) pc.faces.push_back(to_loop(d_->cell(1, e).vertices));
        for (const auto& patch : cell.boundary_patches) pc.faces.push_back(to_loop(patch));
        piece.sibson = std::make_shared<const Sibson>(std::move(pc), cfg_);
        pieces_of_vertex_[v].push_back(pieces_.size());
        pieces_.push_back(std::move(piece));
    }

    void build_fans()
    {
        fans_.resize(pieces_.size());
        for (std::size_t p = 0; p < pieces_.size(); ++p) {
            Index v = pieces_[p].vertex;
            const Point& apex = c_->point(v);
            for (Index e : d_->cell(0, v).face_generators) {
                DualWhitneyForm f = form(2, e);
                for (std::size_t i = 0; i < f.triangles.size(); ++i) {
                    const auto& tri = f.triangles[i];
                    Eigen::Matrix3d m;
                    m.col(0) = tri[1] - tri[0];
                    m.col(1) = tri[2] - tri[0];
                    m.col(2) = apex - tri[0];
                    if (std::abs(m.determinant()) <= 1e-14 * std::pow(c_->scale(), 3)) continue;
                    FanTet ft;
                    ft.edge = e;
                    ft.weight = f.weights[i];
                    ft.origin = tri[0];
                    ft.inv = m.inverse();
                    ft.frame.n = 3;
                    ft.frame.origin = tri[0];
                    Point sum = Point::Zero();
                    for (int q = 0; q < 3; ++q) {
                        ft.frame.grad[q + 1] = ft.inv.row(q).transpose();
                        sum += ft.frame.grad[q + 1];
                    }
                    ft.frame.grad[0] = -sum;
                    // frame ordering: c̄, w_i, w_{i+1}, apex
                    fans_[p].push_back(ft);
                }
            }
        }
    }

    const SimplicialComplex* c_;
    const DualMesh* d_;
    SibsonConfig cfg_;
    std::vector<InterpolationPiece> pieces_;
    std::vector<std::vector<std::size_t>> pieces_of_vertex_;
    std::vector<std::vector<DualEdgeInPiece>> piece_edges_;
    std::vector<std::vector<FanTet>> fans_;
    mutable Index hint_ = 0;
};

inline Point eval_dual_whitney(const DualWhitneyBasis& basis, const DualWhitneyForm& form, const Point& x)
{
    return basis.eval(form, x);
}

/// x ↦ Σ w(⋆σ) W̄_⋆σ(x) for a dual k-cochain w (indexed by primal (n-k)-simplices).
class DualInterpolant {
public:
    DualInterpolant(const DualWhitneyBasis& basis, int k, Eigen::VectorXd w) : basis_(&basis), k_(k), w_(std::move(w))
    {
        const auto& c = basis.complex();
        const int n = c.dimension();
        if (k < 0 || k > n) throw Error(ErrorKind::invalid, "dual form degree out of range");
        if (w_.size() != c.size(n - k))
            throw Error(ErrorKind::invalid, "dual cochain has " + std::to_string(w_.size()) + " entries, expected " +
                                                std::to_string(c.size(n - k)) + " for dual degree " +
                                                std::to_string(k));
    }

    Point at(const Point& x) const
    {
        auto p = basis_->locate(x);
        if (!p) throw Error(ErrorKind::invalid, "point outside the mesh");
        return in_piece(*p, x);
    }

    Point in_piece(std::size_t p, const Point& x) const
    {
        const auto& c = basis_->complex();
        const int n = c.dimension();
        const auto& piece = basis_->pieces()[p];
        if (k_ == n) return Point(w_(piece.vertex) / basis_->dual().measure(0, piece.vertex), 0, 0);
        const std::size_t m = piece.sites.size();
        std::vector<double> lam(m);
        piece.sibson->coordinates(x, lam);
        if (k_ == 0) {
            double s = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (piece.sites[i].k == n) s += w_(piece.sites[i].id) * lam[i];
            return Point(s, 0, 0);
        }
        if (k_ == 1) {
            std::vector<Point> grad(m);
            piece.sibson->gradient(x, 1e-4 * piece.sibson->diameter(), grad, false);
            Point s = Point::Zero();
            for (const auto& e : basis_->edges_in_piece(p)) {
                auto i = static_cast<std::size_t>(e.from), j = static_cast<std::size_t>(e.to);
                s += w_(e.facet) * (lam[i] * grad[j] - lam[j] * grad[i]);
            }
            return s;
        }
        for (const auto& ft : basis_->fan_tets(p)) {
            Eigen::Vector3d l = ft.inv * (x - ft.origin);
            if (l.minCoeff() < -1e-12 || l.sum() > 1 + 1e-12) continue;
            return w_(ft.edge) * ft.weight * DualWhitneyBasis::fan_whitney(ft, x);
        }
        return Point::Zero();
    }

private:
    const DualWhitneyBasis* basis_;
    int k_;
    Eigen::VectorXd w_;
};

inline DualInterpolant dual_interpolate(const DualWhitneyBasis& basis, int k, const Eigen::VectorXd& w)
{
    return DualInterpolant(basis, k, w);
}

} // namespace dec
