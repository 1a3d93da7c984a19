#ifndef RNLS_TYPES_HPP
#define RNLS_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace rnls {

typedef double Real;
typedef std::complex<Real> Complex;

// Grids are stored row-major so that a (row, col) pair maps to (x1, x2)
// and the memory layout matches the snapshot file format.
template <typename Scalar>
using GridArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

typedef GridArray<Complex> Field;
typedef GridArray<Real> RealField;

typedef Eigen::Matrix<Real, 2, 1> Vector2;

/// Raised when inputs violate an operation's precondition.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a computation detects that the discretization can no longer be trusted.
class ResolutionError : public std::runtime_error {
public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// Japanese bracket squared, <k>^2 = 1 + k^2.
template <typename Scalar>
inline Scalar bracket_sq(Scalar k) {
  return Scalar(1) + k * k;
}

} // namespace rnls

#endif // RNLS_TYPES_HPP
