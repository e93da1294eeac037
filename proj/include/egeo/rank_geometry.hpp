#pragma once

// Tensor rank at desk scale and determinantal-variety numerology.

#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "egeo/tensor_core.hpp"

namespace egeo {

using BigInt = boost::multiprecision::cpp_int;

/// Largest dimension accepted by the exact degree / Hilbert formulas.
inline constexpr int kMaxNumerologyDim = 12;

/// Weakly decreasing positive parts.
class IntegerPartition {
 public:
  explicit IntegerPartition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  int weight() const noexcept;

 private:
  std::vector<int> parts_;
};

/// All partitions of t with at most max_length parts, in reverse lexicographic order.
std::vector<IntegerPartition> partitions_of(int t, int max_length);

/// Max flattening rank over every bipartition; a lower bound for border rank.
int flattening_lower_bound(const PureState& state, double tol = kRankTol);

/// Absolute threshold on the normalized pencil discriminant.
inline constexpr double kPencilTol = 1e-9;

/// Exact tensor rank of a 2x2x2 tensor from the pencil of first-factor
/// contractions: 1 if product, 2 if det(a M0 + b M1) has two distinct
/// projective roots (or vanishes identically), 3 on a double root.
int rank_2x2x2(const PureState& state, double tol = kRankTol);

/// (|0> + t|1>)^{⊗3} - |000>.  Throws ZeroState at t = 0.
PureState w_family(Complex t);

struct DimCodim {
  long dim;
  long codim;
  friend bool operator==(const DimCodim&, const DimCodim&) = default;
};

/// Projective dimension and codimension of R_{<=k} inside P^{d_a d_b - 1}.
DimCodim determinantal_dim(int d_a, int d_b, int k);

/// binom(d_a + d_b - 2, d_a - 1)
BigInt segre_degree(int d_a, int d_b);

/// prod_{i=0}^{d_a-r-1} (d_b+i)! i! / ((r+i)! (d_b-r+i)!), with d_a <= d_b after swapping.
BigInt determinantal_degree(int d_a, int d_b, int r);

/// dim S_lambda(C^d) by the hook-content formula; zero when length(lambda) > d.
BigInt schur_dim(const IntegerPartition& lambda, int d);

/// sum over lambda |- t, length <= r of schur_dim(lambda, d_a) * schur_dim(lambda, d_b).
BigInt hilbert_function(int d_a, int d_b, int r, int t);

/// Degree and normalized leading coefficient (dim! * lead) of the Hilbert
/// polynomial, recovered by finite differences of hilbert_function from t0 on.
struct HilbertFit {
  int degree;
  BigInt normalized_leading;
};

HilbertFit hilbert_polynomial_fit(int d_a, int d_b, int r, int t0 = 8);

/// min{ r (sum (d_i - 1) + 1) - 1, prod d_i - 1 }
long secant_expected_dim(const std::vector<int>& dims, int r);

}  // namespace egeo
