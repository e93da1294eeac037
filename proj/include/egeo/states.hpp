#pragma once

// Named states used throughout the examples and tests.

#include <cmath>

#include "egeo/tensor_core.hpp"

namespace egeo::states {

/// Computational basis vector |digits> on the given dims.
inline PureState basis(std::vector<int> dims, const std::vector<int>& digits) {
  Eigen::Index n = 1, idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    n *= dims[k];
    idx = idx * dims[k] + digits.at(k);
  }
  CVector c = CVector::Zero(n);
  c(idx) = 1.0;
  return PureState(std::move(dims), std::move(c));
}

/// (|00> + |11>) / sqrt 2
inline PureState bell() {
  CVector c(4);
  c << 1.0, 0.0, 0.0, 1.0;
  return PureState({2, 2}, c / std::sqrt(2.0));
}

/// |0...0> + |1...1> on n qubits (unnormalized).
inline PureState ghz(int n) {
  std::vector<int> dims(static_cast<std::size_t>(n), 2);
  CVector c = CVector::Zero(Eigen::Index{1} << n);
  c(0) = 1.0;
  c(c.size() - 1) = 1.0;
  return PureState(std::move(dims), std::move(c));
}

/// |001> + |010> + |100> (unnormalized).
inline PureState w3() {
  CVector c = CVector::Zero(8);
  c(1) = c(2) = c(4) = 1.0;
  return PureState({2, 2, 2}, std::move(c));
}

}  // namespace egeo::states
