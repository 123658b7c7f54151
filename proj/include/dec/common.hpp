#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dec {

using Index = std::int32_t;
using Point = Eigen::Vector3d;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Failure classes surfaced by the library. The CLI maps each to a nonzero exit.
enum class ErrorKind { parse, degenerate, incompatible, rank, invalid };

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::incompatible: return "incompatible";
    case ErrorKind::rank: return "rank";
    case ErrorKind::invalid: return "invalid";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind)
    {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Which cochain family an index space refers to.
enum class Space { primal, dual };

/// Rows or columns of an operator: cochains of the given degree on the primal
/// complex or on the dual mesh (dual degree, not the generator's degree).
struct IndexSpace {
    Space space = Space::primal;
    int degree = 0;
    bool operator==(const IndexSpace&) const = default;
};

struct SparseOperator {
    SparseMatrix matrix;
    IndexSpace rows;
    IndexSpace cols;
};

inline constexpr long binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline constexpr long factorial(int n)
{
    long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace dec
