#pragma once

// Brute-force reference computations and random instance builders.  Each
// oracle avoids the code path it checks: density matrices instead of
// flattenings, polynomial linear algebra instead of Schur functors, plain
// enumeration instead of backtracking.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "egeo/separability.hpp"
#include "egeo/spectral_satake.hpp"
#include "egeo/splitting_p1.hpp"

namespace egeo::oracle {

using Rng = std::mt19937_64;

Complex random_complex(Rng& rng);
CVector random_vector(Eigen::Index n, Rng& rng);
PureState random_state(const std::vector<int>& dims, Rng& rng);

/// Generic state on each block of `p`, tensored and reordered into place.
PureState random_block_product(const std::vector<int>& dims, const Partition& p, Rng& rng);

/// Sum of `rank` random outer products.
CMatrix random_rank_matrix(Eigen::Index rows, Eigen::Index cols, int rank, Rng& rng);

/// A random set partition of {0..n-1}.
Partition random_partition(int n, Rng& rng);

/// Reduced density matrix on `block` of the normalized state, by explicit
/// summation over the complement.
CMatrix reduced_density(const PureState& state, const std::vector<int>& block);

/// pi-product iff every block's reduced state is pure.
bool is_pi_product_by_purity(const PureState& state, const Partition& p, double tol = 1e-9);

/// Every set partition of {0..n-1} (Bell number many).
std::vector<Partition> all_set_partitions(int n);

/// Meet of every product partition found by the purity test.
Partition brute_finest_partition(const PureState& state, double tol = 1e-9);

/// dim of degree-t part of C[x_ij] / (all (r+1)-minors), by rank of the
/// multiplied-out generators modulo a large prime.
long hilbert_by_monomials(int d_a, int d_b, int r, int t);

/// Enumerates every sorted (b, c) with b_1 = c_1 = 0 inside the degree range.
std::optional<SumsetFactorization> brute_factor_sumset(const SplittingType& a, int d_a, int d_b);

/// Local spectra with log-moduli in [-0.7, 0.7] and uniform phases.
LocalSpectra random_local_spectra(const std::vector<int>& dims, Rng& rng);
/// n unrelated eigenvalues, renormalized to unit product.
SpectralClass random_spectrum(std::size_t n, Rng& rng);
/// {x_k, 1/x_k}: inversion-closed, so palindromic, but generically not a product for n = 8.
SpectralClass random_inversion_closed(std::size_t n, Rng& rng);

/// Both endpoints of the multiset characterization at n = 4.
bool inversion_closed(const SpectralClass& s, double tol = 1e-9);
bool char_poly_palindromic(const SpectralClass& s, double tol = 1e-9);

}  // namespace egeo::oracle
