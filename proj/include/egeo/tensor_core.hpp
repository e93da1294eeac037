#pragma once

// Dense pure states, flattenings, rank tests and bipartite decompositions.

#include <span>
#include <vector>

#include "egeo/common.hpp"

namespace egeo {

/// A nonzero vector in H_1 ⊗ ... ⊗ H_N, stored row-major with the last
/// subsystem index fastest.  Never normalized implicitly: every rank and
/// membership query is invariant under rescaling.
class PureState {
 public:
  PureState(std::vector<int> dims, CVector coeffs);

  const std::vector<int>& dims() const noexcept { return dims_; }
  const CVector& coeffs() const noexcept { return coeffs_; }
  int subsystems() const noexcept { return static_cast<int>(dims_.size()); }
  Eigen::Index size() const noexcept { return coeffs_.size(); }
  double norm() const { return coeffs_.norm(); }
  PureState normalized() const;

  Complex operator[](Eigen::Index i) const { return coeffs_(i); }

 private:
  std::vector<int> dims_;
  CVector coeffs_;
};

PureState make_state(std::vector<int> dims, CVector coeffs);
PureState make_state(std::vector<int> dims, std::span<const Complex> coeffs);

/// u_1 ⊗ u_2 ⊗ ... in the order given.
PureState tensor_product(std::span<const PureState> factors);
PureState tensor_product(const PureState& a, const PureState& b);

/// Reorders subsystems: subsystem k of the result is subsystem perm[k] of `state`.
PureState permute_subsystems(const PureState& state, std::span<const int> perm);

/// A|A^c with A a nonempty proper subset of {0..N-1}.  Stored in canonical
/// form: the block containing subsystem 0 is block_a.
class Bipartition {
 public:
  Bipartition(int n_subsystems, std::vector<int> block);

  int n_subsystems() const noexcept { return n_; }
  const std::vector<int>& block_a() const noexcept { return block_a_; }
  std::vector<int> block_b() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int n_;
  std::vector<int> block_a_;
};

struct FlatteningMatrix {
  CMatrix entries;  // D_A x D_B
  Bipartition cut;
};

/// Entry (alpha, beta) is the coefficient whose block_a digits spell alpha and
/// whose complement digits spell beta, both row-major in subsystem order.
FlatteningMatrix flatten(const PureState& state, const Bipartition& cut);

/// Singular values in descending order.
template <typename Derived>
Eigen::VectorXd singular_values(const Eigen::MatrixBase<Derived>& m) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::JacobiSVD<Plain> svd(Plain(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.singularValues();
}

/// Count of singular values above tol * sigma_max.
template <typename Derived>
int numerical_rank(const Eigen::MatrixBase<Derived>& m, double tol = kRankTol) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return rank;
}

inline int numerical_rank(const FlatteningMatrix& m, double tol = kRankTol) {
  return numerical_rank(m.entries, tol);
}

inline constexpr Eigen::Index kMinorCap = 8;

/// Determinant of the square submatrix picked out by `rows` x `cols`.
template <typename Derived>
typename Derived::Scalar minor_det(const Eigen::MatrixBase<Derived>& m, std::span<const int> rows,
                                   std::span<const int> cols) {
  using Scalar = typename Derived::Scalar;
  const auto k = static_cast<Eigen::Index>(rows.size());
  if (k == 0) return Scalar(1);
  // Closed forms keep exact inputs exact (a rank-one integer matrix has
  // 2-minors that are exactly zero).
  if (k == 1) return m(rows[0], cols[0]);
  if (k == 2) return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
  return sub.fullPivLu().determinant();
}

namespace detail {
// Calls f(indices) for every increasing k-subset of {0..n-1}; stops when f returns false.
template <typename F>
bool for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > n) return true;
  while (true) {
    if (!f(std::span<const int>(idx))) return false;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}
}  // namespace detail

/// Smallest k such that every (k+1)-minor of m / max|m_ij| has modulus <= tol.
/// Exhaustive over all minors, so capped at 8x8.
template <typename Derived>
int minor_rank(const Eigen::MatrixBase<Derived>& m, double tol = kRankTol) {
  if (m.rows() > kMinorCap || m.cols() > kMinorCap)
    throw Error(ErrorKind::TooLarge, "minor_rank is limited to 8x8 matrices");
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0;
  const Plain a = m / scale;
  const int max_k = static_cast<int>(std::min(a.rows(), a.cols()));
  for (int k = 1; k <= max_k; ++k) {
    bool all_small = detail::for_each_subset(static_cast<int>(a.rows()), k, [&](std::span<const int> r) {
      return detail::for_each_subset(static_cast<int>(a.cols()), k, [&](std::span<const int> c) {
        return std::abs(minor_det(a, r, c)) <= tol;
      });
    });
    if (all_small) return k - 1;
  }
  return max_k;
}

inline int minor_rank(const FlatteningMatrix& m, double tol = kRankTol) { return minor_rank(m.entries, tol); }

/// Matrix of signed (n-1)-minors, i.e. the gradient of det.  Vanishes
/// identically exactly when rank(m) <= n-2.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> cofactor_matrix(
    const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotSquare, "cofactor_matrix needs a square matrix");
  if (m.rows() > kMinorCap) throw Error(ErrorKind::TooLarge, "cofactor_matrix is limited to 8x8");
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(m.rows());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  std::vector<int> rows, cols;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      rows.clear();
      cols.clear();
      for (int r = 0; r < n; ++r)
        if (r != i) rows.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != j) cols.push_back(c);
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      out(i, j) = Scalar(sign) * minor_det(m, rows, cols);
    }
  }
  return out;
}

/// psi / |psi| = sum_a sigma_a u_a ⊗ v_a.
struct SchmidtDecomposition {
  Eigen::VectorXd sigmas;  // strictly positive, descending
  CMatrix left_vecs;       // D_A x rank, orthonormal columns
  CMatrix right_vecs;      // D_B x rank, orthonormal columns
  double scale = 1.0;      // |psi| of the input

  int rank() const noexcept { return static_cast<int>(sigmas.size()); }
  /// sum sigma_a u_a v_a^T, i.e. the flattening of the normalized state.
  CMatrix reassemble() const;
};

/// Phase convention: the first nonvanishing component of each left vector is
/// real positive.  Equal singular values are ordered lexicographically on the
/// phase-fixed left vectors.
SchmidtDecomposition schmidt_decompose(const PureState& state, const Bipartition& cut, double tol = kRankTol);

/// 2|ad - bc| of the normalized two-qubit state.
double concurrence(const PureState& state);

/// Row and column spaces of the flattening plus the k x k core joining them.
struct IncidenceLift {
  CMatrix ua_basis;  // D_A x k
  CMatrix ub_basis;  // D_B x k
  CMatrix core;      // k x k

  int k() const noexcept { return static_cast<int>(core.rows()); }
  /// sum_ij core_ij ua_i ub_j^T
  CMatrix reassemble() const { return ua_basis * core * ub_basis.transpose(); }
};

IncidenceLift incidence_lift(const PureState& state, const Bipartition& cut, double tol = kRankTol);

/// Orthogonal projector onto the column span of `basis` (orthonormalized internally).
CMatrix span_projector(const CMatrix& basis);

/// op = scalar I + a_local ⊗ I + I ⊗ b_local + entangling, with a_local and
/// b_local traceless and entangling in End_0(H_A) ⊗ End_0(H_B).
struct SectorDecomposition {
  Complex scalar;
  CMatrix a_local;
  CMatrix b_local;
  CMatrix entangling;

  CMatrix reassemble() const;
};

SectorDecomposition sector_decompose(const CMatrix& op, int d_a, int d_b);

/// tr_B and tr_A of an operator on H_A ⊗ H_B.
CMatrix partial_trace_b(const CMatrix& op, int d_a, int d_b);
CMatrix partial_trace_a(const CMatrix& op, int d_a, int d_b);

}  // namespace egeo

namespace egeo {

/// Sine of the principal angle between the lines [a] and [b].
double projective_distance(const PureState& a, const PureState& b);

}  // namespace egeo
