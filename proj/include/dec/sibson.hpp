#pragma once

#include "common.hpp"
#include "polygon.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace dec {

/// Polygon (2D) or star-shaped polyhedron (3D) whose vertices are the Sibson
/// sites. In 2D the vertices are the boundary loop, counterclockwise. In 3D
/// `faces` are boundary loops of vertex indices, each split into a fan around
/// its vertex centroid, and `apex` is a point the cell is star-shaped from.
struct PolyCell {
    int dimension = 2;
    std::vector<Point> vertices;
    std::vector<std::vector<int>> faces;
    Point apex = Point::Zero();
};

struct SibsonConfig {
    /// 3D only: sample lines per bounding-box axis (lengths along the third
    /// axis are exact).
    int grid3d = 64;
    /// Boundary dispatch threshold, relative to the cell diameter.
    double boundary_tol = 1e-12;
    /// Measure D(x) and the C_i inside the cell only, as in the definition.
    /// This variant is not linearly precise: wherever the Voronoi region of x
    /// pokes out of the cell the clipped part is lost. Turning it off gives the
    /// classical natural-neighbour coordinates (exact in 2D and 3D, linearly
    /// precise since x always lies in the hull of the sites).
    bool restrict_to_cell = true;
};

struct SibsonEvaluation {
    Point x = Point::Zero();
    Eigen::VectorXd lambda;
    Eigen::VectorXd voronoi;       // C_i
    Eigen::VectorXd intersection;  // |D(x) ∩ C_i|
    double stolen = 0;             // |D(x)|, measured on its own
    bool on_boundary = false;
    std::vector<Point> gradients;  // filled by sibson_gradient
};

enum class Location { inside, boundary, outside };

/// Sibson coordinates on a fixed cell, with the per-cell Voronoi
/// precomputation cached.
class Sibson {
public:
    explicit Sibson(PolyCell cell, SibsonConfig cfg = {}) : cell_(std::move(cell)), cfg_(cfg)
    {
        if (cell_.dimension != 2 && cell_.dimension != 3) throw Error(ErrorKind::invalid, "cell dimension must be 2 or 3");
        if (cell_.vertices.size() < static_cast<std::size_t>(cell_.dimension + 1))
            throw Error(ErrorKind::invalid, "cell has too few vertices");
        lo_ = hi_ = cell_.vertices.front();
        for (const auto& p : cell_.vertices) {
            lo_ = lo_.cwiseMin(p);
            hi_ = hi_.cwiseMax(p);
        }
        diameter_ = 0;
        for (const auto& p : cell_.vertices)
            for (const auto& q : cell_.vertices) diameter_ = std::max(diameter_, (p - q).norm());
        if (cell_.dimension == 2)
            setup2d();
        else
            setup3d();
    }

    const PolyCell& cell() const { return cell_; }
    int dimension() const { return cell_.dimension; }
    std::size_t size() const { return cell_.vertices.size(); }
    double diameter() const { return diameter_; }
    double measure() const { return measure_; }
    const Point& lower() const { return lo_; }
    const Point& upper() const { return hi_; }
    const Eigen::VectorXd& voronoi_measures() const { return voronoi_; }

    Location locate(const Point& x) const
    {
        if ((x.array() < lo_.array() - tol()).any() || (x.array() > hi_.array() + tol()).any())
            return Location::outside;
        if (cell_.dimension == 2) {
            Vec2 y = x.head<2>();
            if (boundary_distance(poly_, y) <= tol()) return Location::boundary;
            return point_in_polygon(poly_, y) ? Location::inside : Location::outside;
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : fan_) best = std::min(best, triangle_distance(f, x));
        if (best <= tol()) return Location::boundary;
        return inside_tets(x) ? Location::inside : Location::outside;
    }

    /// Distance from x to the cell boundary.
    double boundary_distance_of(const Point& x) const
    {
        if (cell_.dimension == 2) return boundary_distance(poly_, x.head<2>());
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : fan_) best = std::min(best, triangle_distance(f, x));
        return best;
    }

    /// Coordinates at x. Boundary points use the restriction to the edge
    /// (2D) or facet (3D); outside points are rejected.
    void coordinates(const Point& x, std::span<double> out) const
    {
        Location loc = locate(x);
        if (loc == Location::outside) throw Error(ErrorKind::invalid, "point outside the cell");
        if (loc == Location::boundary) {
            boundary_coordinates(x, out);
            return;
        }
        interior_coordinates(x, out, nullptr);
    }

    /// Interior evaluation without the location test. `inter` (optional)
    /// receives |D(x) ∩ C_i|.
    void interior_coordinates(const Point& x, std::span<double> out, Eigen::VectorXd* inter) const
    {
        if (!cfg_.restrict_to_cell) {
            natural_coordinates(x, out, inter, nullptr);
            return;
        }
        const std::size_t m = size();
        double total = 0;
        thread_local Polygon2 scratch;
        thread_local std::vector<double> shift;
        if (cell_.dimension == 2) {
            const Vec2 y = x.head<2>();
            for (std::size_t i = 0; i < m; ++i) {
                const Vec2 v = cell_.vertices[i].head<2>();
                clip_halfplane(voronoi_poly_[i], 2.0 * (v - y), v.squaredNorm() - y.squaredNorm(), scratch);
                out[i] = std::max(signed_area(scratch), 0.0);
                total += out[i];
            }
        } else {
            std::fill(out.begin(), out.end(), 0.0);
            const double x2 = x.squaredNorm();
            shift.resize(m);
            for (std::size_t i = 0; i < m; ++i) shift[i] = cell_.vertices[i].squaredNorm() - x2;
            for (const auto& s : segments_) {
                const Point& v = cell_.vertices[s.owner];
                const Line& L = lines_[s.line];
                double A = 2.0 * (v.z() - x.z());
                double B = shift[s.owner] - 2.0 * (L.x * (v.x() - x.x()) + L.y * (v.y() - x.y()));
                double z0 = s.z0, z1 = s.z1;
                if (A > 0)
                    z1 = std::min(z1, B / A);
                else if (A < 0)
                    z0 = std::max(z0, B / A);
                else if (B <= 0)
                    continue;
                if (z1 > z0) out[s.owner] += z1 - z0;
            }
            for (std::size_t i = 0; i < m; ++i) {
                out[i] *= cell_area_;
                total += out[i];
            }
        }
        if (inter) *inter = Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(m));
        if (total <= 0) {
            // x so close to a site that no sample sees it
            std::size_t best = 0;
            for (std::size_t i = 1; i < m; ++i)
                if ((cell_.vertices[i] - x).norm() < (cell_.vertices[best] - x).norm()) best = i;
            std::fill(out.begin(), out.end(), 0.0);
            out[best] = 1;
            return;
        }
        for (std::size_t i = 0; i < m; ++i) out[i] /= total;
    }

    /// |D(x)| computed directly from the bisectors of x. In the clipped 3D
    /// variant it is the sum of the per-site measures.
    double stolen_measure(const Point& x) const
    {
        if (!cfg_.restrict_to_cell) {
            std::vector<double> tmp(size());
            double d = 0;
            natural_coordinates(x, tmp, nullptr, &d);
            return d;
        }
        if (cell_.dimension == 3) {
            std::vector<double> tmp(size());
            Eigen::VectorXd inter;
            interior_coordinates(x, tmp, &inter);
            return inter.sum();
        }
        const Vec2 y = x.head<2>();
        Polygon2 cur = poly_, next;
        for (const auto& p : cell_.vertices) {
            const Vec2 v = p.head<2>();
            clip_halfplane(cur, 2.0 * (v - y), v.squaredNorm() - y.squaredNorm(), next);
            std::swap(cur, next);
        }
        return std::max(signed_area(cur), 0.0);
    }

    /// Central-difference gradients with step h. When `strict`, a stencil point
    /// leaving the cell is an error; otherwise the step shrinks to fit.
    void gradient(const Point& x, double h, std::span<Point> out, bool strict = true) const
    {
        const int n = cell_.dimension;
        const std::size_t m = size();
        double step = h;
        Point y = x;
        if (!strict && boundary_distance_of(x) < h) {
            // slide the stencil centre toward the vertex average until it fits
            Point mid = Point::Zero();
            for (const auto& p : cell_.vertices) mid += p;
            mid /= static_cast<double>(m);
            const double len = (mid - x).norm();
            for (double t = std::min(1.0, h / len); t <= 1.0; t = std::min(1.0, 2 * t)) {
                y = x + t * (mid - x);
                if (boundary_distance_of(y) >= h || t == 1.0) break;
            }
            step = std::min(h, 0.5 * boundary_distance_of(y));
        }
        std::vector<double> plus(m), minus(m);
        for (std::size_t i = 0; i < m; ++i) out[i] = Point::Zero();
        for (int d = 0; d < n; ++d) {
            Point xp = y, xm = y;
            xp(d) += step;
            xm(d) -= step;
            if (strict && (locate(xp) != Location::inside || locate(xm) != Location::inside))
                throw Error(ErrorKind::invalid, "gradient stencil leaves the cell (margin smaller than h)");
            interior_coordinates(xp, plus, nullptr);
            interior_coordinates(xm, minus, nullptr);
            for (std::size_t i = 0; i < m; ++i) out[i](d) = (plus[i] - minus[i]) / (2 * step);
        }
    }

    double tol() const { return cfg_.boundary_tol * diameter_; }

private:
    struct Line {
        double x, y;
    };
    struct Segment {
        int line;
        int owner;
        double z0, z1;
    };
    struct FanTriangle {
        Point a, b, c;
        int face;
        int ia, ib;  // vertex indices of b and c; a is the face centroid
    };

    static double triangle_distance(const FanTriangle& t, const Point& p)
    {
        // closest point on triangle (Ericson)
        const Point& a = t.a;
        const Point& b = t.b;
        const Point& c = t.c;
        Point ab = b - a, ac = c - a, ap = p - a;
        double d1 = ab.dot(ap), d2 = ac.dot(ap);
        if (d1 <= 0 && d2 <= 0) return (p - a).norm();
        Point bp = p - b;
        double d3 = ab.dot(bp), d4 = ac.dot(bp);
        if (d3 >= 0 && d4 <= d3) return (p - b).norm();
        double vc = d1 * d4 - d3 * d2;
        if (vc <= 0 && d1 >= 0 && d3 <= 0) return (p - (a + ab * (d1 / (d1 - d3)))).norm();
        Point cp = p - c;
        double d5 = ab.dot(cp), d6 = ac.dot(cp);
        if (d6 >= 0 && d5 <= d6) return (p - c).norm();
        double vb = d5 * d2 - d1 * d6;
        if (vb <= 0 && d2 >= 0 && d6 <= 0) return (p - (a + ac * (d2 / (d2 - d6)))).norm();
        double va = d3 * d6 - d5 * d4;
        if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
            return (p - (b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6))))).norm();
        double denom = 1.0 / (va + vb + vc);
        return (p - (a + ab * (vb * denom) + ac * (vc * denom))).norm();
    }

    /// Unclipped natural-neighbour measures, computed exactly by convex
    /// clipping in coordinates relative to x.
    void natural_coordinates(const Point& x, std::span<double> out, Eigen::VectorXd* inter, double* stolen) const
    {
        const std::size_t m = size();
        const int n = cell_.dimension;
        thread_local std::vector<Point> rel;
        thread_local std::vector<char> natural;
        rel.resize(m);
        std::size_t nearest = 0;
        for (std::size_t i = 0; i < m; ++i) {
            rel[i] = cell_.vertices[i] - x;
            if (n == 2) rel[i].z() = 0;
            if (rel[i].norm() < rel[nearest].norm()) nearest = i;
        }
        std::fill(out.begin(), out.end(), 0.0);
        if (inter) inter->setZero(static_cast<Eigen::Index>(m));
        if (stolen) *stolen = 0;
        if (rel[nearest].norm() <= tol()) {
            out[nearest] = 1;
            return;
        }
        natural.assign(m, 0);
        double total = 0;
        if (n == 2) {
            thread_local Polygon2 cur, next;
            for (double R = 2 * diameter_;; R *= 4) {
                cur = {Vec2(-R, -R), Vec2(R, -R), Vec2(R, R), Vec2(-R, R)};
                for (std::size_t i = 0; i < m && !cur.empty(); ++i) {
                    clip_halfplane(cur, 2.0 * rel[i].head<2>(), rel[i].squaredNorm(), next);
                    std::swap(cur, next);
                }
                bool bounded = true;
                for (const auto& p : cur)
                    if (p.cwiseAbs().maxCoeff() >= R * (1 - 1e-9)) bounded = false;
                if (bounded || R > 1e12 * diameter_) break;
            }
            if (stolen) *stolen = std::max(signed_area(cur), 0.0);
            double extent = 0;
            for (const auto& p : cur) extent = std::max(extent, p.norm());
            for (std::size_t i = 0; i < m; ++i) {
                double f = -std::numeric_limits<double>::infinity();
                for (const auto& p : cur) f = std::max(f, 2.0 * rel[i].head<2>().dot(p) - rel[i].squaredNorm());
                natural[i] = f >= -1e-10 * rel[i].norm() * std::max(extent, diameter_);
            }
            Polygon2 piece;
            for (std::size_t i = 0; i < m; ++i) {
                if (!natural[i]) continue;
                piece = cur;
                for (std::size_t j = 0; j < m && !piece.empty(); ++j) {
                    if (j == i || !natural[j]) continue;
                    const Vec2 a = 2.0 * (rel[j] - rel[i]).head<2>();
                    clip_halfplane(piece, a, rel[j].squaredNorm() - rel[i].squaredNorm(), next);
                    std::swap(piece, next);
                }
                out[i] = std::max(signed_area(piece), 0.0);
                total += out[i];
            }
        } else {
            thread_local ConvexPolyhedron cur, next;
            for (double R = 2 * diameter_;; R *= 4) {
                cur = box_polyhedron(Point::Constant(-R), Point::Constant(R));
                for (std::size_t i = 0; i < m && !cur.faces.empty(); ++i) {
                    clip_halfspace(cur, 2.0 * rel[i], rel[i].squaredNorm(), static_cast<int>(i), next);
                    std::swap(cur, next);
                }
                bool bounded = true;
                for (int t : cur.tags)
                    if (t < 0) bounded = false;
                if (bounded || R > 1e12 * diameter_) break;
            }
            if (stolen) *stolen = std::max(volume(cur), 0.0);
            for (int t : cur.tags)
                if (t >= 0) natural[static_cast<std::size_t>(t)] = 1;
            ConvexPolyhedron piece;
            for (std::size_t i = 0; i < m; ++i) {
                if (!natural[i]) continue;
                piece = cur;
                for (std::size_t j = 0; j < m && !piece.faces.empty(); ++j) {
                    if (j == i || !natural[j]) continue;
                    clip_halfspace(piece, 2.0 * (rel[j] - rel[i]), rel[j].squaredNorm() - rel[i].squaredNorm(), -2,
                                   next);
                    std::swap(piece, next);
                }
                out[i] = std::max(volume(piece), 0.0);
                total += out[i];
            }
        }
        if (inter) *inter = Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(m));
        if (total <= 0) {
            std::fill(out.begin(), out.end(), 0.0);
            out[nearest] = 1;
            return;
        }
        for (std::size_t i = 0; i < m; ++i) out[i] /= total;
    }

    void setup2d()
    {
        for (const auto& p : cell_.vertices) poly_.push_back(p.head<2>());
        measure_ = signed_area(poly_);
        if (measure_ <= 0) throw Error(ErrorKind::degenerate, "polygon cell is not counterclockwise with positive area");
        const std::size_t m = size();
        voronoi_.resize(static_cast<Eigen::Index>(m));
        Polygon2 next;
        for (std::size_t i = 0; i < m; ++i) {
            Polygon2 cur = poly_;
            const Vec2 vi = poly_[i];
            for (std::size_t j = 0; j < m && !cur.empty(); ++j) {
                if (j == i) continue;
                const Vec2 vj = poly_[j];
                clip_halfplane(cur, 2.0 * (vj - vi), vj.squaredNorm() - vi.squaredNorm(), next);
                std::swap(cur, next);
            }
            voronoi_(static_cast<Eigen::Index>(i)) = std::max(signed_area(cur), 0.0);
            voronoi_poly_.push_back(cur);
        }
    }

    bool inside_tets(const Point& x) const
    {
        for (const auto& t : tets_) {
            Eigen::Vector3d l = t.inv * (x - t.o);
            if (l.minCoeff() >= -1e-12 && l.sum() <= 1 + 1e-12) return true;
        }
        return false;
    }

    void setup3d()
    {
        const auto& V = cell_.vertices;
        // fan triangles and apex tetrahedra
        for (std::size_t fi = 0; fi < cell_.faces.size(); ++fi) {
            const auto& loop = cell_.faces[fi];
            Point cbar = Point::Zero();
            for (int i : loop) cbar += V[i];
            cbar /= static_cast<double>(loop.size());
            face_centroid_.push_back(cbar);
            for (std::size_t i = 0; i < loop.size(); ++i) {
                int a = loop[i], b = loop[(i + 1) % loop.size()];
                fan_.push_back({cbar, V[a], V[b], static_cast<int>(fi), a, b});
                Eigen::Matrix3d e;
                e.col(0) = cbar - cell_.apex;
                e.col(1) = V[a] - cell_.apex;
                e.col(2) = V[b] - cell_.apex;
                double det = e.determinant();
                if (std::abs(det) <= 1e-12 * std::pow(diameter_, 3)) continue;
                measure_ += std::abs(det) / 6.0;
                tets_.push_back({cell_.apex, e.inverse()});
            }
        }
        if (tets_.empty()) throw Error(ErrorKind::degenerate, "polyhedral cell has zero volume");

        const int R = std::max(cfg_.grid3d, 2);
        const double dx = (hi_.x() - lo_.x()) / R, dy = (hi_.y() - lo_.y()) / R;
        cell_area_ = dx * dy;
        const std::size_t m = V.size();
        voronoi_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        std::vector<std::pair<double, double>> iv;
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < R; ++j) {
                Line L{lo_.x() + (i + 0.5) * dx, lo_.y() + (j + 0.5) * dy};
                iv.clear();
                for (const auto& t : tets_) {
                    // barycentric coordinates along the vertical line are affine in z
                    Eigen::Vector3d base = t.inv * (Point(L.x, L.y, 0) - t.o);
                    Eigen::Vector3d slope = t.inv.col(2);
                    double z0 = -std::numeric_limits<double>::infinity(), z1 = -z0;
                    auto clamp_ge0 = [&](double b, double s) {
                        // b + s z >= 0
                        if (s > 0)
                            z0 = std::max(z0, -b / s);
                        else if (s < 0)
                            z1 = std::min(z1, -b / s);
                        else if (b < 0)
                            z1 = z0 - 1;
                    };
                    for (int q = 0; q < 3; ++q) clamp_ge0(base(q), slope(q));
                    clamp_ge0(1 - base.sum(), -slope.sum());
                    if (z1 > z0) iv.emplace_back(z0, z1);
                }
                if (iv.empty()) continue;
                std::sort(iv.begin(), iv.end());
                std::vector<std::pair<double, double>> merged{iv.front()};
                for (std::size_t q = 1; q < iv.size(); ++q) {
                    if (iv[q].first <= merged.back().second + 1e-12 * diameter_)
                        merged.back().second = std::max(merged.back().second, iv[q].second);
                    else
                        merged.push_back(iv[q]);
                }
                int line = static_cast<int>(lines_.size());
                lines_.push_back(L);
                for (std::size_t s = 0; s < m; ++s) {
                    // owner region of site s along the line: |y - v_s| <= |y - v_t| for all t
                    double z0 = -std::numeric_limits<double>::infinity(), z1 = -z0;
                    const Point& vs = V[s];
                    for (std::size_t t = 0; t < m && z1 > z0; ++t) {
                        if (t == s) continue;
                        const Point& vt = V[t];
                        // 2 y·(v_t - v_s) <= |v_t|^2 - |v_s|^2
                        double A = 2.0 * (vt.z() - vs.z());
                        double B = vt.squaredNorm() - vs.squaredNorm() -
                                   2.0 * (L.x * (vt.x() - vs.x()) + L.y * (vt.y() - vs.y()));
                        if (A > 0)
                            z1 = std::min(z1, B / A);
                        else if (A < 0)
                            z0 = std::max(z0, B / A);
                        else if (B < 0)
                            z1 = z0 - 1;
                    }
                    if (!(z1 > z0)) continue;
                    for (const auto& mv : merged) {
                        double a = std::max(z0, mv.first), b = std::min(z1, mv.second);
                        if (b > a) {
                            segments_.push_back({line, static_cast<int>(s), a, b});
                            voronoi_(static_cast<Eigen::Index>(s)) += (b - a) * cell_area_;
                        }
                    }
                }
            }
    }

    void boundary_coordinates(const Point& x, std::span<double> out) const
    {
        std::fill(out.begin(), out.end(), 0.0);
        const std::size_t m = size();
        if (cell_.dimension == 2) {
            const Vec2 y = x.head<2>();
            std::size_t best = 0;
            double bt = 0, bd = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                double t;
                double d = segment_distance(poly_[i], poly_[(i + 1) % m], y, &t);
                if (d < bd) {
                    bd = d;
                    best = i;
                    bt = t;
                }
            }
            out[best] += 1 - bt;
            out[(best + 1) % m] += bt;
            return;
        }
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < fan_.size(); ++i) {
            double d = triangle_distance(fan_[i], x);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        const auto& t = fan_[best];
        // barycentric coordinates in the fan triangle; the centroid's share is
        // spread evenly over the face loop, which keeps linear precision
        Eigen::Matrix<double, 3, 2> e;
        e.col(0) = t.b - t.a;
        e.col(1) = t.c - t.a;
        Eigen::Vector2d uv = (e.transpose() * e).ldlt().solve(e.transpose() * (x - t.a));
        uv = uv.cwiseMax(0.0);
        if (uv.sum() > 1) uv /= uv.sum();
        double wc = 1 - uv.sum();
        const auto& loop = cell_.faces[static_cast<std::size_t>(t.face)];
        for (int i : loop) out[static_cast<std::size_t>(i)] += wc / static_cast<double>(loop.size());
        out[static_cast<std::size_t>(t.ia)] += uv(0);
        out[static_cast<std::size_t>(t.ib)] += uv(1);
    }

    struct Tet {
        Point o;
        Eigen::Matrix3d inv;
    };

    PolyCell cell_;
    SibsonConfig cfg_;
    Point lo_, hi_;
    double diameter_ = 0;
    double measure_ = 0;
    Eigen::VectorXd voronoi_;
    // 2D
    Polygon2 poly_;
    std::vector<Polygon2> voronoi_poly_;
    // 3D
    std::vector<Point> face_centroid_;
    std::vector<FanTriangle> fan_;
    std::vector<Tet> tets_;
    std::vector<Line> lines_;
    std::vector<Segment> segments_;
    double cell_area_ = 0;
};

struct VoronoiMeasures {
    Eigen::VectorXd voronoi;                     // C_i
    std::optional<Eigen::VectorXd> intersection;  // |D(x) ∩ C_i| when x was given
    std::optional<double> stolen;                 // |D(x)|
};

/// C_i = |T ∩ Vor(v_i)|, and with x the stolen measures |D(x) ∩ C_i|.
inline VoronoiMeasures clipped_voronoi_measures(const Sibson& s, std::optional<Point> x = std::nullopt)
{
    VoronoiMeasures r;
    r.voronoi = s.voronoi_measures();
    if (x) {
        if (s.locate(*x) != Location::inside)
            throw Error(ErrorKind::invalid, "extra site must lie strictly inside the cell");
        std::vector<double> lam(s.size());
        Eigen::VectorXd inter;
        s.interior_coordinates(*x, lam, &inter);
        r.intersection = inter;
        r.stolen = s.stolen_measure(*x);
    }
    return r;
}

inline VoronoiMeasures clipped_voronoi_measures(const PolyCell& cell, std::optional<Point> x = std::nullopt,
                                                SibsonConfig cfg = {})
{
    return clipped_voronoi_measures(Sibson(cell, cfg), x);
}

inline SibsonEvaluation sibson(const Sibson& s, const Point& x)
{
    SibsonEvaluation ev;
    ev.x = x;
    ev.voronoi = s.voronoi_measures();
    ev.lambda.resize(static_cast<Eigen::Index>(s.size()));
    Location loc = s.locate(x);
    if (loc == Location::outside) throw Error(ErrorKind::invalid, "point outside the cell");
    if (loc == Location::boundary) {
        ev.on_boundary = true;
        s.coordinates(x, std::span<double>(ev.lambda.data(), s.size()));
        return ev;
    }
    s.interior_coordinates(x, std::span<double>(ev.lambda.data(), s.size()), &ev.intersection);
    ev.stolen = s.stolen_measure(x);
    return ev;
}

inline SibsonEvaluation sibson(const PolyCell& cell, const Point& x, SibsonConfig cfg = {})
{
    return sibson(Sibson(cell, cfg), x);
}

/// Central-difference gradients; h <= 0 selects 1e-4 times the cell diameter.
inline std::vector<Point> sibson_gradient(const Sibson& s, const Point& x, double h = 0)
{
    if (h <= 0) h = 1e-4 * s.diameter();
    std::vector<Point> g(s.size());
    s.gradient(x, h, g, true);
    return g;
}

inline std::vector<Point> sibson_gradient(const PolyCell& cell, const Point& x, double h = 0, SibsonConfig cfg = {})
{
    return sibson_gradient(Sibson(cell, cfg), x, h);
}

inline PolyCell polygon_cell(const std::vector<Vec2>& loop)
{
    PolyCell c;
    c.dimension = 2;
    for (const auto& p : loop) c.vertices.emplace_back(p.x(), p.y(), 0);
    return c;
}

} // namespace dec
