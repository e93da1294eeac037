#pragma once

// Splitting-type arithmetic on P^1: a split bundle of rank d_a d_b reduces to
// a bipartite subsystem structure iff its degree multiset is a sumset
// {b_i + c_j + t}.

#include <optional>
#include <vector>

namespace egeo {

/// Sorted line-bundle degrees a_1 <= ... <= a_n.
class SplittingType {
 public:
  explicit SplittingType(std::vector<long> degrees);

  const std::vector<long>& degrees() const noexcept { return degrees_; }
  std::size_t size() const noexcept { return degrees_.size(); }

  friend bool operator==(const SplittingType&, const SplittingType&) = default;

 private:
  std::vector<long> degrees_;
};

/// Canonical form b_1 = c_1 = 0, both lists sorted.
struct SumsetFactorization {
  std::vector<long> b;
  std::vector<long> c;
  long t = 0;

  /// Sorted multiset {b_i + c_j + t}.
  SplittingType recombine() const;
};

inline constexpr std::size_t kMaxSplittingRank = 36;

/// Exhaustive backtracking; the first factorization in search order (new
/// b value before new c value) is returned.  Throws ShapeMismatch when
/// size != d_a d_b and TooLarge above kMaxSplittingRank.
std::optional<SumsetFactorization> factor_sumset(const SplittingType& a, int d_a, int d_b);

/// a_1 + a_4 == a_2 + a_3.  Throws WrongLength unless size is 4.
bool parallelogram(const SplittingType& a);

}  // namespace egeo
