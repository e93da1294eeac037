#pragma once

// Product criteria for unit-product spectra: when does a multiset of n
// eigenvalues arise as all slotwise products of local spectra of sizes d_i?

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "egeo/common.hpp"

namespace egeo {

/// Relative tolerance of the polynomial criteria; scaled by 1 + max |e_k|.
inline constexpr double kSpectralTol = 1e-9;
/// Absolute tolerance of the slot-search oracle, scaled by max(1, max |z|).
inline constexpr double kOracleTol = 1e-7;
inline constexpr std::size_t kMaxOracleSize = 16;

/// A multiset of nonzero eigenvalues with product one.  The constructor
/// divides by the principal n-th root of the product.
class SpectralClass {
 public:
  explicit SpectralClass(std::vector<Complex> eigenvalues);

  const std::vector<Complex>& eigenvalues() const noexcept { return z_; }
  std::size_t size() const noexcept { return z_.size(); }

 private:
  std::vector<Complex> z_;
};

/// r local spectra, each with product one within 1e-9.
class LocalSpectra {
 public:
  explicit LocalSpectra(std::vector<std::vector<Complex>> factors);
  /// Divides each factor by the principal root of its product first.
  static LocalSpectra normalized(std::vector<std::vector<Complex>> factors);

  const std::vector<std::vector<Complex>>& factors() const noexcept { return factors_; }
  std::vector<int> dims() const;

 private:
  std::vector<std::vector<Complex>> factors_;
};

/// e_1..e_n with prod (T - z_i) = sum_k (-1)^k e_k T^{n-k}.
std::vector<Complex> elem_sym(const SpectralClass& s);

/// All products prod_i a_{i, j_i}, last factor's index fastest.
SpectralClass tensor_spectrum(const LocalSpectra& l);

struct Product22 {
  bool product = false;
  /// (a, b) with spectrum {ab, a/b, b/a, 1/(ab)}, when the inversion pairing
  /// reconstructs the input.
  std::optional<std::pair<Complex, Complex>> witness;
};

/// e_1 == e_3.  Throws WrongSize unless n = 4.
Product22 is_22_product(const SpectralClass& s, double tol = kSpectralTol);

/// F = e_3^2 + 2 e_1 e_3 + e_1^4 - (e_4 + 2 e_2 + 1) e_1^2
Complex quartic_f(Complex e1, Complex e2, Complex e3, Complex e4);
/// Reads e_1..e_4 from the front of e.
Complex quartic_f(std::span<const Complex> e);

/// e_7 = e_1, e_6 = e_2, e_5 = e_3 and F = 0.  Throws WrongSize unless n = 8.
bool is_222_product(const SpectralClass& s, double tol = kSpectralTol);

/// Exhaustive slot search: places z_1 at the all-zero slot, chooses each
/// factor's axis slots, solves for the local spectra and verifies the full
/// multiset.  Throws WrongSize when n != prod d_i and TooLarge above 16.
std::optional<LocalSpectra> d_product_oracle(const SpectralClass& s, const std::vector<int>& dims,
                                             double tol = kOracleTol);

/// n^2 - n - 2 sum d_i^2 + 2 r <= 0
bool sphericity_check(const std::vector<int>& dims);

/// Equal as multisets: a greedy nearest match within tol * max(1, max |z|).
bool multiset_close(std::span<const Complex> a, std::span<const Complex> b, double tol);

}  // namespace egeo
