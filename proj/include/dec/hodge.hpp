#pragma once

#include "dual.hpp"
#include "dual_whitney.hpp"
#include "whitney.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace dec {

enum class HodgeKind { diag, whitney, dual_inverse };

inline const char* to_string(HodgeKind k)
{
    switch (k) {
    case HodgeKind::diag: return "diag";
    case HodgeKind::whitney: return "whitney";
    case HodgeKind::dual_inverse: return "dual_inverse";
    }
    return "?";
}

inline HodgeKind parse_hodge_kind(const std::string& s)
{
    if (s == "diag") return HodgeKind::diag;
    if (s == "whitney" || s == "whit") return HodgeKind::whitney;
    if (s == "dual_inverse" || s == "dual-inverse" || s == "dual") return HodgeKind::dual_inverse;
    throw Error(ErrorKind::invalid, "unknown Hodge kind '" + s + "' (expected diag, whitney or dual_inverse)");
}

/// Discrete Hodge star. Diag and Whitney map primal k-cochains to dual
/// (n-k)-cochains; DualInverse maps the other way and is indexed by dual cells.
struct HodgeOperator {
    int degree = 0;
    HodgeKind kind = HodgeKind::diag;
    SparseMatrix matrix;
    IndexSpace rows, cols;
    std::string provenance;
    std::vector<std::string> warnings;
};

struct QuadratureConfig {
    /// Samples per bounding-box axis of each interpolation piece.
    int grid = 64;
    int grid3d = 8;
    /// Fewer interior samples than this in a piece is an error.
    int min_samples = 10;
    /// Restrict assembly to entries whose row and column are both listed.
    std::vector<Index> rows;
    SibsonConfig sibson{};
};

inline HodgeOperator assemble_diag(const SimplicialComplex& c, const DualMesh& d, int k)
{
    const int n = c.dimension();
    if (k < 0 || k > n) throw Error(ErrorKind::invalid, "Hodge degree out of range");
    HodgeOperator h;
    h.degree = k;
    h.kind = HodgeKind::diag;
    h.rows = h.cols = {Space::primal, k};
    h.provenance = std::string("diag k=") + std::to_string(k) + " rule=" + to_string(d.rule());
    if (d.rule() == CenterRule::barycentric)
        h.warnings.push_back("diagonal Hodge star on a barycentric dual is not consistent on non-orthogonal meshes");
    std::vector<Triplet> t;
    std::string bad;
    int nbad = 0;
    for (Index i = 0; i < c.size(k); ++i) {
        double dm = d.measure(k, i);
        if (!(dm > 0)) {
            if (nbad < 10) bad += " " + std::to_string(i) + ":" + std::to_string(dm);
            ++nbad;
            continue;
        }
        t.emplace_back(i, i, dm / c.measure(k, i));
    }
    if (nbad)
        throw Error(ErrorKind::degenerate, std::to_string(nbad) + " nonpositive dual measure(s) for degree " +
                                               std::to_string(k) + " (id:measure)" + bad);
    h.matrix.resize(c.size(k), c.size(k));
    h.matrix.setFromTriplets(t.begin(), t.end());
    return h;
}

inline HodgeOperator assemble_whitney(const SimplicialComplex& c, int k)
{
    const int n = c.dimension();
    if (k < 0 || k > n) throw Error(ErrorKind::invalid, "Hodge degree out of range");
    HodgeOperator h;
    h.degree = k;
    h.kind = HodgeKind::whitney;
    h.rows = h.cols = {Space::primal, k};
    h.provenance = "whitney k=" + std::to_string(k);
    std::vector<Triplet> t;
    std::vector<Index> faces;
    for (Index e = 0; e < c.size(n); ++e) {
        Eigen::MatrixXd g = element_whitney_gram(c, k, e, faces);
        for (std::size_t a = 0; a < faces.size(); ++a)
            for (std::size_t b = 0; b < faces.size(); ++b)
                t.emplace_back(faces[a], faces[b], g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
    }
    h.matrix.resize(c.size(k), c.size(k));
    h.matrix.setFromTriplets(t.begin(), t.end());
    return h;
}

namespace detail {

/// ∫ |W|² over a fan tetrahedron, W the Whitney 2-form of its base face.
inline double fan_tet_energy(const FanTet& ft)
{
    const auto& g = ft.frame.grad;
    const Point G[3] = {g[1].cross(g[2]), g[2].cross(g[0]), g[0].cross(g[1])};
    const double vol = std::abs(1.0 / ft.inv.determinant()) / 6.0;
    double s = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += vol * (a == b ? 2.0 : 1.0) / 20.0 * G[a].dot(G[b]);
    return 4.0 * s;
}

} // namespace detail

/// Gram matrix of dual Whitney forms of dual degree n-k, by midpoint-rule
/// quadrature on each interpolation piece (closed form where the forms are
/// piecewise polynomial).
inline HodgeOperator assemble_dual_inverse(const SimplicialComplex& c, const DualMesh& d, int k,
                                           const QuadratureConfig& cfg = {})
{
    const int n = c.dimension();
    if (k < 0 || k > n) throw Error(ErrorKind::invalid, "Hodge degree out of range");
    if (d.rule() != CenterRule::barycentric)
        throw Error(ErrorKind::invalid, "the dual-inverse Hodge star is defined on the barycentric dual");
    const int m = n - k;  // dual degree of the forms
    HodgeOperator h;
    h.degree = k;
    h.kind = HodgeKind::dual_inverse;
    h.rows = h.cols = {Space::dual, m};
    const int R = n == 2 ? cfg.grid : cfg.grid3d;
    h.provenance = "dual_inverse k=" + std::to_string(k) + " grid=" + std::to_string(R);
    const Index N = c.size(k);
    std::vector<char> wanted(static_cast<std::size_t>(N), cfg.rows.empty() ? 1 : 0);
    for (Index r : cfg.rows) wanted.at(static_cast<std::size_t>(r)) = 1;
    std::vector<Triplet> t;
    h.matrix.resize(N, N);

    if (m == n) {
        for (Index v = 0; v < N; ++v)
            if (wanted[static_cast<std::size_t>(v)]) t.emplace_back(v, v, 1.0 / d.measure(0, v));
        h.matrix.setFromTriplets(t.begin(), t.end());
        return h;
    }

    DualWhitneyBasis basis(c, d, cfg.sibson);
    if (m == 2) {
        // 3D dual faces: Whitney 2-forms on fan tetrahedra, exact
        std::map<Index, double> diag;
        for (std::size_t p = 0; p < basis.pieces().size(); ++p)
            for (const auto& ft : basis.fan_tets(p))
                if (wanted[static_cast<std::size_t>(ft.edge)])
                    diag[ft.edge] += ft.weight * ft.weight * detail::fan_tet_energy(ft);
        for (auto [e, v] : diag) t.emplace_back(e, e, v);
        h.matrix.setFromTriplets(t.begin(), t.end());
        return h;
    }

    std::map<std::pair<Index, Index>, double> acc;
    for (std::size_t p = 0; p < basis.pieces().size(); ++p) {
        const auto& piece = basis.pieces()[p];
        const Sibson& s = *piece.sibson;
        // forms of this piece: (global id, site i, site j); j < 0 for scalar forms
        struct Local {
            Index id;
            int i, j;
        };
        std::vector<Local> forms;
        if (m == 0) {
            for (std::size_t i = 0; i < piece.sites.size(); ++i)
                if (piece.sites[i].k == n) forms.push_back({piece.sites[i].id, static_cast<int>(i), -1});
        } else {
            for (const auto& e : basis.edges_in_piece(p)) forms.push_back({e.facet, e.from, e.to});
        }
        bool any = false;
        for (const auto& f : forms) any = any || wanted[static_cast<std::size_t>(f.id)];
        if (!any) continue;

        const std::size_t ns = s.size(), nf = forms.size();
        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));
        std::vector<double> lam(ns);
        std::vector<Point> grad(ns);
        std::vector<Point> val(nf);
        const Point lo = s.lower(), hi = s.upper();
        Point step = (hi - lo) / R;
        if (n == 2) step.z() = 1;
        const double w = step.x() * step.y() * step.z();
        const double hgrad = 1e-4 * s.diameter();
        long count = 0;
        const int Rz = n == 3 ? R : 1;
        for (int a = 0; a < R; ++a)
            for (int b = 0; b < R; ++b)
                for (int cz = 0; cz < Rz; ++cz) {
                    Point x(lo.x() + (a + 0.5) * step.x(), lo.y() + (b + 0.5) * step.y(),
                            n == 3 ? lo.z() + (cz + 0.5) * step.z() : 0.0);
                    if (s.locate(x) != Location::inside) continue;
                    ++count;
                    s.interior_coordinates(x, lam, nullptr);
                    if (m == 1) s.gradient(x, hgrad, grad, false);
                    for (std::size_t f = 0; f < nf; ++f) {
                        auto i = static_cast<std::size_t>(forms[f].i);
                        if (m == 0)
                            val[f] = Point(lam[i], 0, 0);
                        else {
                            auto j = static_cast<std::size_t>(forms[f].j);
                            val[f] = lam[i] * grad[j] - lam[j] * grad[i];
                        }
                    }
                    for (std::size_t f = 0; f < nf; ++f)
                        for (std::size_t g = f; g < nf; ++g)
                            gram(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(g)) += w * val[f].dot(val[g]);
                }
        if (count < cfg.min_samples)
            throw Error(ErrorKind::invalid, "quadrature grid too coarse: " + std::to_string(count) +
                                                " interior samples in the piece of dual cell " +
                                                std::to_string(piece.vertex));
        for (std::size_t f = 0; f < nf; ++f)
            for (std::size_t g = f; g < nf; ++g) {
                Index a = forms[f].id, b = forms[g].id;
                if (!wanted[static_cast<std::size_t>(a)] || !wanted[static_cast<std::size_t>(b)]) continue;
                double v = gram(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(g));
                acc[{std::min(a, b), std::max(a, b)}] += v;
            }
    }
    for (auto [key, v] : acc) {
        t.emplace_back(key.first, key.second, v);
        if (key.first != key.second) t.emplace_back(key.second, key.first, v);
    }
    h.matrix.setFromTriplets(t.begin(), t.end());
    return h;
}

inline HodgeOperator assemble_hodge(const SimplicialComplex& c, const DualMesh& d, int k, HodgeKind kind,
                                    const QuadratureConfig& cfg = {})
{
    switch (kind) {
    case HodgeKind::diag: return assemble_diag(c, d, k);
    case HodgeKind::whitney: return assemble_whitney(c, k);
    case HodgeKind::dual_inverse: return assemble_dual_inverse(c, d, k, cfg);
    }
    throw Error(ErrorKind::invalid, "unknown Hodge kind");
}

struct ConditionEstimate {
    enum class Method { full, leading_block } method = Method::full;
    int block = 0;
    double lambda_max = 0, lambda_min = 0;
    double ratio = 1;
    bool singular = false;
    Eigen::VectorXd null_vector;
};

/// λ_max / λ_min of a symmetric matrix, or of its leading block of size
/// `block` when given.
inline ConditionEstimate condition_estimate(const Eigen::MatrixXd& a, std::optional<int> block = std::nullopt)
{
    ConditionEstimate ce;
    Eigen::MatrixXd m = a;
    if (block) {
        if (*block < 1 || *block > a.rows()) throw Error(ErrorKind::invalid, "leading block size out of range");
        ce.method = ConditionEstimate::Method::leading_block;
        ce.block = *block;
        m = a.topLeftCorner(*block, *block);
    }
    if (m.rows() == 0) throw Error(ErrorKind::invalid, "empty matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::invalid, "eigenvalue solver failed");
    const auto& ev = es.eigenvalues();
    ce.lambda_min = ev(0);
    ce.lambda_max = ev(ev.size() - 1);
    const double top = std::max(std::abs(ce.lambda_min), std::abs(ce.lambda_max));
    if (ce.lambda_min <= 1e-12 * top) {
        ce.singular = true;
        ce.ratio = std::numeric_limits<double>::infinity();
        ce.null_vector = es.eigenvectors().col(0);
    } else {
        ce.ratio = ce.lambda_max / ce.lambda_min;
    }
    return ce;
}

inline ConditionEstimate condition_estimate(const HodgeOperator& h, std::optional<int> block = std::nullopt)
{
    return condition_estimate(Eigen::MatrixXd(h.matrix), block);
}

struct SparsityAudit {
    struct Row {
        Index row = 0;
        int nonzeros = 0;
        long bound = 0;
    };
    std::vector<Row> rows;
    int max_nonzeros = 0;
    bool bound_ok = true;
    bool lemma_ok = true;
    std::vector<std::string> violations;
};

/// Nonzero counts per row against the bound C(n+1, k+1)·A(σ^k), and the
/// adjacency lemma of the operator's kind for every stored nonzero.
inline SparsityAudit sparsity_audit(const HodgeOperator& h, const SimplicialComplex& c, const DualMesh* d = nullptr)
{
    const int n = c.dimension();
    const int k = h.degree;
    SparsityAudit r;
    const SparseMatrix& a = h.matrix;
    // top simplices around each vertex, for the Whitney lemma
    auto touches = [&](Index i, Index j) {
        std::set<Index> tops;
        for (Index v : c.simplex(k, i))
            for (Index t : c.vertex_star(v)) tops.insert(t);
        for (Index v : c.simplex(k, j))
            for (Index t : c.vertex_star(v))
                if (tops.count(t)) return true;
        return false;
    };
    // dual vertices of each dual cell ⋆v, for the dual lemma
    auto dual_adjacent = [&](Index i, Index j) {
        if (!d) return true;
        const auto& vi = d->cell(k, i).vertices;
        const auto& vj = d->cell(k, j).vertices;
        for (Index v = 0; v < c.size(0); ++v) {
            const auto& cv = d->cell(0, v).vertices;
            auto has = [&](const std::vector<DualVertexRef>& s) {
                for (auto x : s)
                    if (std::find(cv.begin(), cv.end(), x) != cv.end()) return true;
                return false;
            };
            if (has(vi) && has(vj)) return true;
        }
        return false;
    };
    for (Index i = 0; i < a.outerSize(); ++i) {
        SparsityAudit::Row row;
        row.row = i;
        row.bound = binomial(n + 1, k + 1) * c.incident_top_count(k, i);
        for (SparseMatrix::InnerIterator it(a, i); it; ++it) {
            if (it.value() == 0.0) continue;
            ++row.nonzeros;
            Index j = static_cast<Index>(it.index());
            if (h.kind == HodgeKind::diag && i != j) {
                r.lemma_ok = false;
                r.violations.push_back("off-diagonal entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
            } else if (h.kind == HodgeKind::whitney && !touches(i, j)) {
                r.lemma_ok = false;
                r.violations.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") without a common top simplex");
            } else if (h.kind == HodgeKind::dual_inverse && !dual_adjacent(i, j)) {
                r.lemma_ok = false;
                r.violations.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") without a common dual cell");
            }
        }
        if (row.nonzeros > row.bound) {
            r.bound_ok = false;
            r.violations.push_back("row " + std::to_string(i) + " has " + std::to_string(row.nonzeros) +
                                   " nonzeros, bound " + std::to_string(row.bound));
        }
        r.max_nonzeros = std::max(r.max_nonzeros, row.nonzeros);
        r.rows.push_back(row);
    }
    return r;
}

/// Closed-form values for the kite mesh of generate_fig8(P).
namespace fig8 {

inline double diag_center(double P) { return (4 * P * P - 1) / (4 * P); }
inline double rho(double P) { return 1 / (4 * std::pow(P, 4)) + P / std::sqrt(3 + 12 * P * P); }
inline double alpha(double P) { return (12 * P * P + 1) / (24 * P); }
inline double beta(double P) { return (4 * P * P - 1) / (48 * P); }
inline double gamma(double P) { return (12 * P * P + 20 * std::sqrt(3.0) * P + 21) / (144 * P); }
inline double delta(double P) { return (4 * P * P - 5) / (48 * P); }

inline double diag_cond(double P) { return diag_center(P) / rho(P); }

inline double whitney_cond(double P)
{
    const double s3 = std::sqrt(3.0);
    return (24 * P * P + 5 * s3 * P + std::sqrt(288 * std::pow(P, 4) - 120 * s3 * std::pow(P, 3) + 3 * P * P + 9) + 3) /
           (10 * s3 * P + 18);
}

/// Leading 5×5 Whitney block in the pattern (α, β, γ, δ).
inline Eigen::MatrixXd whitney_block(double P)
{
    const double a = alpha(P), b = beta(P), g = gamma(P), d = delta(P);
    Eigen::MatrixXd m(5, 5);
    m << a, b, b, b, b,  //
        b, g, 0, d, 0,   //
        b, 0, g, 0, d,   //
        b, d, 0, g, 0,   //
        b, 0, d, 0, g;
    return m;
}

/// Flip row/column signs so that the first row's off-diagonal entries are
/// nonnegative; this only changes basis orientations.
inline Eigen::MatrixXd gauge_block(const Eigen::MatrixXd& a)
{
    Eigen::VectorXd s = Eigen::VectorXd::Ones(a.rows());
    for (Eigen::Index i = 1; i < a.rows(); ++i)
        if (a(0, i) < 0) s(i) = -1;
    return s.asDiagonal() * a * s.asDiagonal();
}

/// Replace ξ by the mean |ζ| and κ by zero in a gauged dual block.
inline Eigen::MatrixXd substitute_block(const Eigen::MatrixXd& gauged)
{
    Eigen::MatrixXd m = gauged;
    double zeta = 0;
    for (int i = 1; i < 5; ++i) zeta += std::abs(m(0, i));
    zeta /= 4;
    m(1, 3) = m(3, 1) = zeta;
    m(2, 4) = m(4, 2) = zeta;
    m(1, 2) = m(2, 1) = 0;
    m(3, 4) = m(4, 3) = 0;
    return m;
}

} // namespace fig8

struct Table1Row {
    double P = 0;
    double cond_diag = 0, cond_whitney = 0, cond_dual_inverse = 0;
    Eigen::MatrixXd whitney_block, dual_block, dual_block_used;
};

struct Table1Config {
    int grid = 512;
    SibsonConfig sibson{};
};

inline Table1Row table1_row(double P, const Table1Config& cfg = {})
{
    if (!(P > 0.5)) throw Error(ErrorKind::invalid, "P must exceed 1/2");
    Table1Row row;
    row.P = P;
    SimplicialComplex c = generate_fig8(P);
    DualMesh circ = build_dual(c, CenterRule::circumcentric);
    row.cond_diag = condition_estimate(assemble_diag(c, circ, 1)).ratio;
    Eigen::MatrixXd w(assemble_whitney(c, 1).matrix);
    row.whitney_block = w.topLeftCorner(5, 5);
    row.cond_whitney = condition_estimate(w, 5).ratio;
    DualMesh bary = build_dual(c, CenterRule::barycentric);
    QuadratureConfig q;
    q.grid = cfg.grid;
    q.sibson = cfg.sibson;
    q.rows = {0, 1, 2, 3, 4};
    Eigen::MatrixXd dm(assemble_dual_inverse(c, bary, 1, q).matrix);
    row.dual_block = dm.topLeftCorner(5, 5);
    row.dual_block_used = fig8::substitute_block(fig8::gauge_block(row.dual_block));
    row.cond_dual_inverse = condition_estimate(row.dual_block_used).ratio;
    return row;
}

inline std::vector<Table1Row> table1_experiment(const std::vector<double>& Ps, const Table1Config& cfg = {})
{
    std::vector<Table1Row> rows;
    for (double P : Ps) rows.push_back(table1_row(P, cfg));
    return rows;
}

inline std::string table1_csv(const std::vector<Table1Row>& rows)
{
    std::ostringstream os;
    os << "P,cond_diag,cond_whitney,cond_dual_inverse\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.P, r.cond_diag, r.cond_whitney,
                      r.cond_dual_inverse);
        os << buf;
    }
    return os.str();
}

} // namespace dec
