#pragma once

#include "hodge.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <chrono>
#include <string>
#include <vector>

namespace dec {

/// Hodge star of degree k together with its inverse, both dense. The kind
/// decides which of the two is assembled; the other is a dense inverse.
struct HodgePair {
    int degree = 0;
    HodgeKind kind = HodgeKind::whitney;
    Eigen::MatrixXd m, m_inv;
};

inline HodgePair hodge_pair(const SimplicialComplex& c, const DualMesh& d, int k, HodgeKind kind,
                            const QuadratureConfig& q = {})
{
    HodgePair p;
    p.degree = k;
    p.kind = kind;
    Eigen::MatrixXd a(assemble_hodge(c, d, k, kind, q).matrix);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible())
        throw Error(ErrorKind::rank, std::string(to_string(kind)) + " Hodge star of degree " + std::to_string(k) +
                                         " is singular (nullity " + std::to_string(a.rows() - lu.rank()) + ")");
    if (kind == HodgeKind::dual_inverse) {
        p.m_inv = a;
        p.m = lu.inverse();
    } else {
        p.m = a;
        p.m_inv = lu.inverse();
    }
    return p;
}

struct Unknown {
    std::string name;
    IndexSpace space;
};

enum class Gauge { pin, augment };

inline const char* to_string(Gauge g) { return g == Gauge::pin ? "pin" : "augment"; }

enum class SystemKind {
    generic_primal,
    generic_dual,
    magnetostatics_1,
    magnetostatics_2,
    magnetostatics_3,
    magnetostatics_4,
    darcy_1,
    darcy_2,
    darcy_3,
    darcy_4
};

/// 2×2 block saddle-point system (H, Bᵀ; B, 0) with optional recovery data.
struct MixedSystem {
    std::string name;
    SystemKind kind = SystemKind::generic_primal;
    Eigen::MatrixXd hodge_block;
    SparseMatrix coupling;  // B: second block row, first block column
    Eigen::VectorXd rhs_first, rhs_second;
    Unknown first, second;
    /// Expected dimension of the kernel, from the coupling block alone.
    int gauge_nullity = 0;

    // recovery data, by kind
    Eigen::VectorXd particular;  // h0 or f0
    Eigen::MatrixXd hodge_aux;   // M or M^{-1} needed to recover a field
    SparseMatrix derivative_aux;  // D used to recover a potential or a field

    Eigen::Index size_first() const { return hodge_block.rows(); }
    Eigen::Index size_second() const { return coupling.rows(); }

    Eigen::MatrixXd matrix() const
    {
        const Eigen::Index n1 = size_first(), n2 = size_second();
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
        Eigen::MatrixXd b(coupling);
        a.topLeftCorner(n1, n1) = hodge_block;
        a.topRightCorner(n1, n2) = b.transpose();
        a.bottomLeftCorner(n2, n1) = b;
        return a;
    }

    Eigen::VectorXd rhs() const
    {
        Eigen::VectorXd r(rhs_first.size() + rhs_second.size());
        r << rhs_first, rhs_second;
        return r;
    }
};

/// Physical pair (b, h) or (f, p) recovered from a solution.
struct PhysicalPair {
    std::string first_name, second_name;
    IndexSpace first_space, second_space;
    Eigen::VectorXd first, second;
    /// The second component is a potential known up to a constant.
    bool second_is_potential = false;
};

struct SolveReport {
    Eigen::VectorXd solution, first, second;
    PhysicalPair pair;
    double residual = 0;  // relative residual of the block system
    double residual_first = 0, residual_second = 0;
    int size = 0;
    int rank = 0;
    int nullity = 0;
    std::string gauge;  // "none", "pin" or "augment"
    double seconds = 0;
};

namespace detail {

inline int matrix_rank(const Eigen::MatrixXd& a)
{
    if (a.size() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

inline void check_size(const Eigen::VectorXd& v, Eigen::Index n, const std::string& what)
{
    if (v.size() != n)
        throw Error(ErrorKind::invalid, what + " has " + std::to_string(v.size()) + " entries, expected " +
                                            std::to_string(n));
}

inline MixedSystem make_system(std::string name, SystemKind kind, Eigen::MatrixXd h, const SparseMatrix& b, Eigen::VectorXd r1,
                               Eigen::VectorXd r2, Unknown u1, Unknown u2)
{
    if (h.rows() != h.cols() || h.rows() != b.cols())
        throw Error(ErrorKind::invalid, name + ": Hodge block is " + std::to_string(h.rows()) + "x" +
                                            std::to_string(h.cols()) + " but the coupling block has " +
                                            std::to_string(b.cols()) + " columns");
    check_size(r1, h.rows(), name + ": first load");
    check_size(r2, b.rows(), name + ": second load");
    MixedSystem s;
    s.name = std::move(name);
    s.kind = kind;
    s.hodge_block = std::move(h);
    s.coupling = b;
    s.rhs_first = std::move(r1);
    s.rhs_second = std::move(r2);
    s.first = std::move(u1);
    s.second = std::move(u2);
    Eigen::MatrixXd bd(b);
    s.gauge_nullity = static_cast<int>(b.rows()) - matrix_rank(bd);
    return s;
}

inline SparseMatrix incidence(const SimplicialComplex& c, int k) { return incidence_matrix(c, k).matrix; }

} // namespace detail

/// Minimum-norm x with D x = rhs; rejects rhs outside the image of D.
inline Eigen::VectorXd particular_solution(const SparseMatrix& d, const Eigen::VectorXd& rhs, double tol = 1e-10)
{
    detail::check_size(rhs, d.rows(), "right-hand side");
    if (rhs.norm() == 0) return Eigen::VectorXd::Zero(d.cols());
    Eigen::MatrixXd a(d);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    cod.setThreshold(1e-12);
    Eigen::VectorXd x = cod.solve(rhs);
    double res = (a * x - rhs).norm() / rhs.norm();
    if (res > tol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", res);
        throw Error(ErrorKind::incompatible, std::string("right-hand side is not in the image of the derivative "
                                                         "(relative least-squares residual ") +
                                                 buf + ")");
    }
    return x;
}

inline Eigen::VectorXd particular_solution(const SparseOperator& d, const Eigen::VectorXd& rhs, double tol = 1e-10)
{
    return particular_solution(d.matrix, rhs, tol);
}

enum class Orientation { primal_first, dual_first };

/// Primal-first: (−M_k, D_kᵀ; D_k, 0)(u; v̄) = (f̄; g).
/// Dual-first: (−M_{n−k}⁻¹, D_{n−k−1}; D_{n−k−1}ᵀ, 0)(ū; v) = (f; ḡ).
inline MixedSystem assemble_generic(const SimplicialComplex& c, int k, Orientation o, const HodgePair& h,
                                    const Eigen::VectorXd& f, const Eigen::VectorXd& g)
{
    const int n = c.dimension();
    if (k < 0 || k >= n) throw Error(ErrorKind::invalid, "generic system degree must satisfy 0 <= k < n");
    if (o == Orientation::primal_first) {
        if (h.degree != k) throw Error(ErrorKind::invalid, "primal-first system needs the Hodge star of degree k");
        return detail::make_system("generic primal-first", SystemKind::generic_primal, -h.m, detail::incidence(c, k), f, g,
                                   {"u", {Space::primal, k}}, {"v", {Space::dual, n - k - 1}});
    }
    if (h.degree != n - k) throw Error(ErrorKind::invalid, "dual-first system needs the Hodge star of degree n-k");
    SparseMatrix dt = detail::incidence(c, n - k - 1).transpose();
    return detail::make_system("generic dual-first", SystemKind::generic_dual, -h.m_inv, dt, f, g, {"u", {Space::dual, k}},
                               {"v", {Space::primal, n - k - 1}});
}

/// Magnetostatics, system 1..4. `j` is a dual 2-cochain
/// for systems 1–2 and a primal 2-cochain for systems 3–4. `h` must be the
/// Hodge pair of degree n−1 for systems 1–2 and of degree 1 for systems 3–4.
inline MixedSystem assemble_magnetostatics(const SimplicialComplex& c, int system, const Eigen::VectorXd& j,
                                           const HodgePair& h)
{
    const int n = c.dimension();
    if (n < 2) throw Error(ErrorKind::invalid, "magnetostatics needs n >= 2");
    auto need = [&](int deg) {
        if (h.degree != deg)
            throw Error(ErrorKind::invalid, "magnetostatics system " + std::to_string(system) +
                                                " needs the Hodge star of degree " + std::to_string(deg));
    };
    switch (system) {
    case 1: {
        need(n - 1);
        SparseMatrix dj = detail::incidence(c, n - 2).transpose();  // dual 1 -> dual 2
        Eigen::VectorXd h0 = particular_solution(dj, j);
        SparseMatrix d = detail::incidence(c, n - 1);
        auto s = detail::make_system("magnetostatics 1", SystemKind::magnetostatics_1, -h.m, d, -h0, Eigen::VectorXd::Zero(d.rows()),
                                     {"b", {Space::primal, n - 1}}, {"p", {Space::dual, 0}});
        s.particular = h0;
        s.derivative_aux = d;
        return s;
    }
    case 2: {
        need(n - 1);
        SparseMatrix d = detail::incidence(c, n - 2);
        SparseMatrix dt = d.transpose();
        auto s = detail::make_system("magnetostatics 2", SystemKind::magnetostatics_2, -h.m_inv, dt, Eigen::VectorXd::Zero(d.rows()), j,
                                     {"h", {Space::dual, 1}}, {"a", {Space::primal, n - 2}});
        s.derivative_aux = d;
        return s;
    }
    case 3: {
        need(1);
        SparseMatrix d1 = detail::incidence(c, 1);
        Eigen::VectorXd h0 = particular_solution(d1, j);
        SparseMatrix d0 = detail::incidence(c, 0);
        SparseMatrix d0t = d0.transpose();
        auto s = detail::make_system("magnetostatics 3", SystemKind::magnetostatics_3, -h.m_inv, d0t, -h0, Eigen::VectorXd::Zero(d0.cols()),
                                     {"b", {Space::dual, n - 1}}, {"p", {Space::primal, 0}});
        s.particular = h0;
        s.hodge_aux = h.m_inv;
        return s;
    }
    case 4: {
        need(1);
        SparseMatrix d1 = detail::incidence(c, 1);
        auto s = detail::make_system("magnetostatics 4", SystemKind::magnetostatics_4, -h.m, d1, Eigen::VectorXd::Zero(d1.cols()), j,
                                     {"h", {Space::primal, 1}}, {"a", {Space::dual, n - 2}});
        s.derivative_aux = d1.transpose();
        return s;
    }
    }
    throw Error(ErrorKind::invalid, "magnetostatics system must be 1..4");
}

/// Darcy flow, system 1..4. `phi` is a primal n-cochain
/// for systems 1–2 and a dual n-cochain (per vertex) for systems 3–4. `h` is
/// the Hodge pair of degree n−1 for systems 1–2 and of degree 1 for 3–4.
inline MixedSystem assemble_darcy(const SimplicialComplex& c, int system, const Eigen::VectorXd& phi,
                                  const HodgePair& h)
{
    const int n = c.dimension();
    if (n < 2) throw Error(ErrorKind::invalid, "Darcy flow needs n >= 2");
    auto need = [&](int deg) {
        if (h.degree != deg)
            throw Error(ErrorKind::invalid, "Darcy system " + std::to_string(system) +
                                                " needs the Hodge star of degree " + std::to_string(deg));
    };
    switch (system) {
    case 1: {
        need(n - 1);
        SparseMatrix d = detail::incidence(c, n - 1);
        return detail::make_system("darcy 1", SystemKind::darcy_1, h.m, d, Eigen::VectorXd::Zero(d.cols()), phi,
                                   {"f", {Space::primal, n - 1}}, {"p", {Space::dual, 0}});
    }
    case 2: {
        need(n - 1);
        SparseMatrix dn = detail::incidence(c, n - 1);
        Eigen::VectorXd f0 = particular_solution(dn, phi);
        SparseMatrix d = detail::incidence(c, n - 2);
        SparseMatrix dt = d.transpose();
        auto s = detail::make_system("darcy 2", SystemKind::darcy_2, -h.m_inv, dt, -f0, Eigen::VectorXd::Zero(d.cols()),
                                     {"q", {Space::dual, 1}}, {"g", {Space::primal, n - 2}});
        s.particular = f0;
        s.hodge_aux = h.m_inv;
        s.derivative_aux = dn.transpose();
        return s;
    }
    case 3: {
        need(1);
        SparseMatrix d0 = detail::incidence(c, 0);
        SparseMatrix d0t = d0.transpose();
        particular_solution(d0t, phi);  // compatibility check
        return detail::make_system("darcy 3", SystemKind::darcy_3, h.m_inv, d0t, Eigen::VectorXd::Zero(d0.rows()), phi,
                                   {"f", {Space::dual, n - 1}}, {"p", {Space::primal, 0}});
    }
    case 4: {
        need(1);
        SparseMatrix d0 = detail::incidence(c, 0);
        SparseMatrix d0t = d0.transpose();
        Eigen::VectorXd f0 = particular_solution(d0t, phi);
        SparseMatrix d1 = detail::incidence(c, 1);
        auto s = detail::make_system("darcy 4", SystemKind::darcy_4, h.m, d1, f0, Eigen::VectorXd::Zero(d1.rows()),
                                     {"q", {Space::primal, 1}}, {"g", {Space::dual, n - 2}});
        s.particular = f0;
        s.hodge_aux = h.m;
        s.derivative_aux = d0;
        return s;
    }
    }
    throw Error(ErrorKind::invalid, "Darcy system must be 1..4");
}

namespace detail {

inline Eigen::VectorXd least_squares(const SparseMatrix& a, const Eigen::VectorXd& b)
{
    Eigen::MatrixXd m(a);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
    cod.setThreshold(1e-12);
    return cod.solve(b);
}

inline PhysicalPair recover(const MixedSystem& s, const Eigen::VectorXd& u, const Eigen::VectorXd& v)
{
    PhysicalPair p;
    switch (s.kind) {
    case SystemKind::magnetostatics_1:
        p = {"b", "h", s.first.space, {Space::dual, 1}, u, s.particular + Eigen::MatrixXd(s.derivative_aux).transpose() * v};
        break;
    case SystemKind::magnetostatics_2: p = {"b", "h", {Space::primal, s.second.space.degree + 1}, s.first.space, s.derivative_aux * v, u}; break;
    case SystemKind::magnetostatics_3: p = {"b", "h", s.first.space, {Space::primal, 1}, u, s.hodge_aux * u}; break;
    case SystemKind::magnetostatics_4: p = {"b", "h", {Space::dual, s.second.space.degree + 1}, s.first.space, s.derivative_aux * v, u}; break;
    case SystemKind::darcy_1: p = {"f", "p", s.first.space, s.second.space, u, v}; break;
    case SystemKind::darcy_2: {
        // D_{n-1}ᵀ p = −q
        Eigen::VectorXd pr = least_squares(s.derivative_aux, -u);
        p = {"f", "p", {Space::primal, s.second.space.degree + 1}, {Space::dual, 0}, s.hodge_aux * u, pr};
        break;
    }
    case SystemKind::darcy_3: p = {"f", "p", s.first.space, s.second.space, u, v}; break;
    case SystemKind::darcy_4: {
        // D_0 p = −q
        Eigen::VectorXd pr = least_squares(s.derivative_aux, -u);
        p = {"f", "p", {Space::dual, s.second.space.degree + 1}, {Space::primal, 0}, s.hodge_aux * u, pr};
        break;
    }
    default: p = {s.first.name, s.second.name, s.first.space, s.second.space, u, v}; break;
    }
    p.second_is_potential = s.kind >= SystemKind::darcy_1;
    return p;
}

} // namespace detail

/// Dense solve of a mixed system. The kernel allowed by the coupling block is
/// removed by pinning or by bordering with the kernel basis; any further rank
/// loss is an error.
inline SolveReport solve(const MixedSystem& s, Gauge gauge = Gauge::pin)
{
    auto t0 = std::chrono::steady_clock::now();
    SolveReport r;
    const Eigen::MatrixXd a = s.matrix();
    const Eigen::VectorXd b = s.rhs();
    const Eigen::Index N = a.rows();
    r.size = static_cast<int>(N);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-10);
    r.rank = static_cast<int>(lu.rank());
    r.nullity = static_cast<int>(N) - r.rank;
    if (r.nullity > s.gauge_nullity)
        throw Error(ErrorKind::rank, s.name + ": system has nullity " + std::to_string(r.nullity) + ", expected " +
                                         std::to_string(s.gauge_nullity) + " from the gauge");
    Eigen::VectorXd x;
    if (r.nullity == 0) {
        r.gauge = "none";
        x = lu.solve(b);
    } else {
        Eigen::MatrixXd ker = lu.kernel();
        const Eigen::Index k = ker.cols();
        if (gauge == Gauge::augment) {
            r.gauge = "augment";
            Eigen::MatrixXd big = Eigen::MatrixXd::Zero(N + k, N + k);
            big.topLeftCorner(N, N) = a;
            big.topRightCorner(N, k) = ker;
            big.bottomLeftCorner(k, N) = ker.transpose();
            Eigen::VectorXd rb = Eigen::VectorXd::Zero(N + k);
            rb.head(N) = b;
            Eigen::FullPivLU<Eigen::MatrixXd> blu(big);
            if (!blu.isInvertible()) throw Error(ErrorKind::rank, s.name + ": bordered system is singular");
            x = blu.solve(rb).head(N);
        } else {
            r.gauge = "pin";
            // pin the kernel's pivot entries, preferring the earliest ones
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ker.transpose());
            std::vector<Eigen::Index> pins;
            for (Eigen::Index i = 0; i < k; ++i) pins.push_back(qr.colsPermutation().indices()(i));
            if (k == 1) {
                for (Eigen::Index i = 0; i < N; ++i)
                    if (std::abs(ker(i, 0)) > 1e-8 * ker.col(0).cwiseAbs().maxCoeff()) {
                        pins[0] = i;
                        break;
                    }
            }
            Eigen::MatrixXd ap = a;
            Eigen::VectorXd bp = b;
            for (Eigen::Index p : pins) {
                ap.row(p).setZero();
                ap.col(p).setZero();
                ap(p, p) = 1;
                bp(p) = 0;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> plu(ap);
            if (!plu.isInvertible()) throw Error(ErrorKind::rank, s.name + ": pinned system is singular");
            x = plu.solve(bp);
        }
    }
    const double bn = std::max(b.norm(), 1e-300);
    Eigen::VectorXd res = a * x - b;
    r.residual = b.norm() > 0 ? res.norm() / bn : res.norm();
    r.residual_first = res.head(s.size_first()).norm();
    r.residual_second = res.tail(s.size_second()).norm();
    if (r.residual > 1e-8 * std::max(1.0, a.norm()))
        throw Error(ErrorKind::incompatible, s.name + ": load is not compatible with the system (residual " +
                                                 std::to_string(r.residual) + ")");
    r.solution = x;
    r.first = x.head(s.size_first());
    r.second = x.tail(s.size_second());
    r.pair = detail::recover(s, r.first, r.second);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

struct CrossValidation {
    std::vector<int> systems;
    std::vector<SolveReport> reports;
    /// diff_first(i, j), diff_second(i, j): max-norm differences of the
    /// recovered pair components, potentials mean-aligned.
    Eigen::MatrixXd diff_first, diff_second;
};

enum class Problem { magnetostatics, darcy };

inline Eigen::VectorXd mean_free(const Eigen::VectorXd& v)
{
    if (v.size() == 0) return v;
    return v.array() - v.mean();
}

/// Solve the listed systems (1..4) with their loads and compare the
/// recovered physical pairs pairwise. Each system takes the load and Hodge
/// pair at the same position in the lists.
inline CrossValidation cross_validate(const SimplicialComplex& c, Problem problem, const std::vector<int>& systems,
                                      const std::vector<Eigen::VectorXd>& loads, const std::vector<HodgePair>& hodges,
                                      Gauge gauge = Gauge::pin)
{
    if (loads.size() != systems.size() || hodges.size() != systems.size())
        throw Error(ErrorKind::invalid, "cross_validate needs one load and one Hodge pair per system");
    CrossValidation cv;
    cv.systems = systems;
    for (std::size_t i = 0; i < systems.size(); ++i) {
        MixedSystem s = problem == Problem::magnetostatics ? assemble_magnetostatics(c, systems[i], loads[i], hodges[i])
                                                           : assemble_darcy(c, systems[i], loads[i], hodges[i]);
        cv.reports.push_back(solve(s, gauge));
    }
    const auto m = static_cast<Eigen::Index>(systems.size());
    cv.diff_first = Eigen::MatrixXd::Zero(m, m);
    cv.diff_second = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto& a = cv.reports[static_cast<std::size_t>(i)].pair;
            const auto& b = cv.reports[static_cast<std::size_t>(j)].pair;
            auto diff = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
                return x.size() == y.size() ? (x - y).cwiseAbs().maxCoeff() : std::numeric_limits<double>::infinity();
            };
            cv.diff_first(i, j) = a.first.size() == 0 ? 0 : diff(a.first, b.first);
            if (a.second.size() == 0) continue;
            cv.diff_second(i, j) = a.second_is_potential ? diff(mean_free(a.second), mean_free(b.second))
                                                         : diff(a.second, b.second);
        }
    return cv;
}

/// Max-norm residuals of the two discrete field equations satisfied by a
/// recovered pair: the divergence-type equation of the flux (b or f) and the
/// source equation (curl h = j for magnetostatics; div f = Φ for Darcy, where
/// the divergence and source checks coincide).
struct ConstraintResiduals {
    double divergence = 0;
    double source = 0;
};

inline ConstraintResiduals constraint_residuals(const SimplicialComplex& c, Problem problem, int system,
                                                const Eigen::VectorXd& load, const PhysicalPair& p)
{
    const int n = c.dimension();
    auto inf = [](const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; };
    const SparseMatrix d0 = detail::incidence(c, 0);
    ConstraintResiduals r;
    if (problem == Problem::darcy) {
        if (system <= 2)
            r.divergence = inf(detail::incidence(c, n - 1) * p.first - load);
        else
            r.divergence = inf(SparseMatrix(d0.transpose()) * p.first - load);
        r.source = r.divergence;
        return r;
    }
    if (system <= 2) {
        r.divergence = inf(detail::incidence(c, n - 1) * p.first);
        r.source = inf(SparseMatrix(detail::incidence(c, n - 2).transpose()) * p.second - load);
    } else {
        r.divergence = inf(SparseMatrix(d0.transpose()) * p.first);
        r.source = inf(detail::incidence(c, 1) * p.second - load);
    }
    return r;
}

enum class WaveFormulation { primal, dual };

/// Generalized eigenproblem A x = ω² B x.
struct WaveSystem {
    WaveFormulation formulation = WaveFormulation::primal;
    Eigen::MatrixXd stiffness, mass;
    Eigen::VectorXd omega2;
    Eigen::MatrixXd modes;

    void solve()
    {
        Eigen::LLT<Eigen::MatrixXd> llt(mass);
        if (llt.info() != Eigen::Success) throw Error(ErrorKind::degenerate, "wave mass matrix is not positive definite");
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(stiffness, mass);
        if (es.info() != Eigen::Success) throw Error(ErrorKind::invalid, "generalized eigensolver failed");
        omega2 = es.eigenvalues();
        modes = es.eigenvectors();
    }
};

/// Primal: A = D_1ᵀ M_2 D_1, B = M_1. Dual: A = D_1 M_1⁻¹ D_1ᵀ, B = M_2⁻¹.
inline WaveSystem assemble_wave(const SimplicialComplex& c, WaveFormulation f, const HodgePair& m1,
                                const HodgePair& m2)
{
    if (m1.degree != 1 || m2.degree != 2) throw Error(ErrorKind::invalid, "wave systems need Hodge stars of degree 1 and 2");
    WaveSystem w;
    w.formulation = f;
    Eigen::MatrixXd d1(detail::incidence(c, 1));
    if (f == WaveFormulation::primal) {
        w.stiffness = d1.transpose() * m2.m * d1;
        w.mass = m1.m;
    } else {
        w.stiffness = d1 * m1.m_inv * d1.transpose();
        w.mass = m2.m_inv;
    }
    w.stiffness = 0.5 * (w.stiffness + w.stiffness.transpose()).eval();
    w.mass = 0.5 * (w.mass + w.mass.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(w.mass);
    if (llt.info() != Eigen::Success) throw Error(ErrorKind::degenerate, "wave mass matrix is not positive definite");
    return w;
}

} // namespace dec
