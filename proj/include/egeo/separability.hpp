#pragma once

// The partition lattice of subsystems and pi-product tests.

#include <string>
#include <vector>

#include "egeo/tensor_core.hpp"

namespace egeo {

/// Set partition of {0..N-1}.  Canonical form: each block sorted, blocks
/// ordered by their minimum element.
class Partition {
 public:
  Partition(int n_subsystems, std::vector<std::vector<int>> blocks);

  static Partition single_block(int n);
  static Partition singletons(int n);

  int n_subsystems() const noexcept { return n_; }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  /// Index of the block holding subsystem i.
  int block_of(int i) const;

  /// "1|2|34" with 1-based labels.
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
};

Partition as_partition(const Bipartition& cut);

/// Every block of p lies inside a block of q.
bool refines(const Partition& p, const Partition& q);

/// Coarsest common refinement: all nonempty intersections of blocks.
Partition meet(const Partition& p, const Partition& q);

inline constexpr int kMaxEnumeratedSubsystems = 16;

/// All 2^(n-1) - 1 canonical bipartitions.  Ordered by the bitmask of
/// subsystems 1..n-1 that join subsystem 0.
std::vector<Bipartition> bipartitions(int n);

/// Every block B of p has a rank-one B|B^c flattening.
bool is_pi_product(const PureState& state, const Partition& p, double tol = kRankTol);

/// Meet of all product bipartitions.
Partition finest_product_partition(const PureState& state, double tol = kRankTol);

/// No bipartition flattening has rank one.
bool is_gme(const PureState& state, double tol = kRankTol);

struct SeparabilityReport {
  Partition finest;
  std::vector<Bipartition> product_bipartitions;
  bool gme;
};

SeparabilityReport separability_report(const PureState& state, double tol = kRankTol);

}  // namespace egeo
