#include "egeo/separability.hpp"

#include <algorithm>

namespace egeo {

Partition::Partition(int n_subsystems, std::vector<std::vector<int>> blocks) : n_(n_subsystems) {
  if (n_ < 1) throw Error(ErrorKind::ShapeMismatch, "partition of an empty set");
  std::vector<int> seen(static_cast<std::size_t>(n_), 0);
  for (auto& b : blocks) {
    if (b.empty()) throw Error(ErrorKind::ShapeMismatch, "empty block");
    std::sort(b.begin(), b.end());
    for (int i : b) {
      if (i < 0 || i >= n_) throw Error(ErrorKind::ShapeMismatch, "block index out of range");
      if (seen[static_cast<std::size_t>(i)]++) throw Error(ErrorKind::ShapeMismatch, "blocks overlap");
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) throw Error(ErrorKind::ShapeMismatch, "blocks do not cover");
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  blocks_ = std::move(blocks);
}

Partition Partition::single_block(int n) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  return Partition(n, {all});
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks.push_back({i});
  return Partition(n, std::move(blocks));
}

int Partition::block_of(int i) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (std::binary_search(blocks_[k].begin(), blocks_[k].end(), i)) return static_cast<int>(k);
  throw Error(ErrorKind::OutOfRange, "subsystem index outside the partition");
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k) out += '|';
    for (int i : blocks_[k]) out += std::to_string(i + 1);
  }
  return out;
}

Partition as_partition(const Bipartition& cut) {
  return Partition(cut.n_subsystems(), {cut.block_a(), cut.block_b()});
}

bool refines(const Partition& p, const Partition& q) {
  if (p.n_subsystems() != q.n_subsystems()) throw Error(ErrorKind::ShapeMismatch, "partitions of different sets");
  for (const auto& b : p.blocks()) {
    const int target = q.block_of(b.front());
    for (int i : b)
      if (q.block_of(i) != target) return false;
  }
  return true;
}

Partition meet(const Partition& p, const Partition& q) {
  if (p.n_subsystems() != q.n_subsystems()) throw Error(ErrorKind::ShapeMismatch, "partitions of different sets");
  std::vector<std::vector<int>> blocks;
  for (const auto& b : p.blocks()) {
    for (const auto& c : q.blocks()) {
      std::vector<int> inter;
      std::set_intersection(b.begin(), b.end(), c.begin(), c.end(), std::back_inserter(inter));
      if (!inter.empty()) blocks.push_back(std::move(inter));
    }
  }
  return Partition(p.n_subsystems(), std::move(blocks));
}

std::vector<Bipartition> bipartitions(int n) {
  if (n < 2) throw Error(ErrorKind::OutOfRange, "bipartitions need n >= 2");
  if (n > kMaxEnumeratedSubsystems) throw Error(ErrorKind::TooLarge, "bipartition enumeration is capped at n = 16");
  std::vector<Bipartition> out;
  const unsigned full = (1u << (n - 1)) - 1u;
  for (unsigned mask = 0; mask < full; ++mask) {
    std::vector<int> block{0};
    for (int i = 1; i < n; ++i)
      if (mask & (1u << (i - 1))) block.push_back(i);
    out.emplace_back(n, std::move(block));
  }
  return out;
}

bool is_pi_product(const PureState& state, const Partition& p, double tol) {
  if (p.n_subsystems() != state.subsystems())
    throw Error(ErrorKind::ShapeMismatch, "partition is over a different number of subsystems");
  if (p.size() == 1) return true;
  for (const auto& block : p.blocks())
    if (numerical_rank(flatten(state, Bipartition(p.n_subsystems(), block)), tol) != 1) return false;
  return true;
}

Partition finest_product_partition(const PureState& state, double tol) {
  const int n = state.subsystems();
  if (n > kMaxEnumeratedSubsystems) throw Error(ErrorKind::TooLarge, "finest partition search is capped at N = 16");
  Partition result = Partition::single_block(n);
  if (n == 1) return result;
  for (const auto& cut : bipartitions(n))
    if (numerical_rank(flatten(state, cut), tol) == 1) result = meet(result, as_partition(cut));
  return result;
}

bool is_gme(const PureState& state, double tol) {
  if (state.subsystems() < 2) throw Error(ErrorKind::ShapeMismatch, "GME needs at least two subsystems");
  for (const auto& cut : bipartitions(state.subsystems()))
    if (numerical_rank(flatten(state, cut), tol) == 1) return false;
  return true;
}

SeparabilityReport separability_report(const PureState& state, double tol) {
  const int n = state.subsystems();
  Partition finest = Partition::single_block(n);
  std::vector<Bipartition> product;
  if (n >= 2) {
    for (const auto& cut : bipartitions(n)) {
      if (numerical_rank(flatten(state, cut), tol) == 1) {
        finest = meet(finest, as_partition(cut));
        product.push_back(cut);
      }
    }
  }
  const bool gme = n >= 2 && product.empty();
  return SeparabilityReport{std::move(finest), std::move(product), gme};
}

}  // namespace egeo
