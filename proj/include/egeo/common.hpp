#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace egeo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Default relative singular-value threshold for every rank decision.
inline constexpr double kRankTol = 1e-9;

enum class ErrorKind {
  ZeroState,
  ShapeMismatch,
  WrongShape,
  TooLarge,
  NotSquare,
  OutOfRange,
  BadWord,
  NotCentral,
  BadNerve,
  NotPGLCocycle,
  NotRootOfUnity,
  NotCocycle,
  WrongLength,
  WrongSize,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroState: return "ZeroState";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BadWord: return "BadWord";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::BadNerve: return "BadNerve";
    case ErrorKind::NotPGLCocycle: return "NotPGLCocycle";
    case ErrorKind::NotRootOfUnity: return "NotRootOfUnity";
    case ErrorKind::NotCocycle: return "NotCocycle";
    case ErrorKind::WrongLength: return "WrongLength";
    case ErrorKind::WrongSize: return "WrongSize";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Kronecker product with the left factor's index most significant.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                               a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace egeo
