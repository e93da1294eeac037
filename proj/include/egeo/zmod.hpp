#pragma once

// Linear algebra over Z/m via Smith normal form with unimodular row and
// column operations.  Entries are always kept as residues in [0, m).

#include <cstdint>
#include <optional>

#include <Eigen/Core>

namespace egeo::zmod {

using Int = std::int64_t;
using IMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

Int reduce(Int x, Int m);
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);

/// diag = left * a * right (mod m), left and right invertible over Z/m.
struct SmithForm {
  Int m;
  IMatrix left;
  IMatrix right;
  IMatrix diag;
};

SmithForm smith_form(const IMatrix& a, Int m);

/// Some b with a b = rhs (mod m), or nullopt when none exists.
std::optional<IVector> solve(const IMatrix& a, const IVector& rhs, Int m);
std::optional<IVector> solve(const SmithForm& snf, const IVector& rhs);

}  // namespace egeo::zmod
