#include <doctest.h>

#include "egeo/spectral_satake.hpp"
#include "repro/oracles.hpp"

using namespace egeo;

namespace {

SpectralClass real_class(std::initializer_list<double> xs) {
  std::vector<Complex> z;
  for (double x : xs) z.emplace_back(x, 0.0);
  return SpectralClass(z);
}

bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// One eigenvalue scaled by 1.1, then renormalized by the constructor.
SpectralClass perturbed(const SpectralClass& s, std::size_t k) {
  std::vector<Complex> z = s.eigenvalues();
  z[k] *= 1.1;
  return SpectralClass(z);
}

}  // namespace

TEST_CASE("spectral class normalization") {
  const SpectralClass s = real_class({2.0, 2.0, 2.0, 2.0});
  for (const auto& z : s.eigenvalues()) CHECK(near(z, 1.0));
  CHECK_THROWS_AS(SpectralClass({}), Error);
  CHECK_THROWS_AS(real_class({1.0, 0.0}), Error);
  CHECK_THROWS_AS(LocalSpectra({{2.0, 1.0}}), Error);
  const LocalSpectra l = LocalSpectra::normalized({{2.0, 1.0}, {3.0, 3.0, 3.0}});
  CHECK(l.dims() == std::vector<int>{2, 3});
}

TEST_CASE("elementary symmetric functions") {
  const auto e = elem_sym(real_class({1.0, 1.0, 1.0, 1.0}));
  REQUIRE(e.size() == 4);
  CHECK(near(e[0], 4.0));
  CHECK(near(e[1], 6.0));
  CHECK(near(e[2], 4.0));
  CHECK(near(e[3], 1.0));
}

TEST_CASE("tensor spectrum") {
  const SpectralClass s = tensor_spectrum(LocalSpectra({{2.0, 0.5}, {3.0, 1.0 / 3.0}}));
  const std::vector<Complex> expected{6.0, 2.0 / 3.0, 1.5, 1.0 / 6.0};
  REQUIRE(s.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(near(s.eigenvalues()[i], expected[i]));

  const SpectralClass ones = tensor_spectrum(LocalSpectra({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}));
  const auto e = elem_sym(ones);
  const double binom8[] = {8, 28, 56, 70, 56, 28, 8, 1};
  for (std::size_t k = 0; k < 8; ++k) CHECK(near(e[k], binom8[k]));
}

TEST_CASE("(2,2) criterion examples") {
  const Product22 a = is_22_product(real_class({2.0, 0.5, 3.0, 1.0 / 3.0}));
  CHECK(a.product);
  const auto e = elem_sym(real_class({2.0, 0.5, 3.0, 1.0 / 3.0}));
  CHECK(near(e[0], 35.0 / 6.0));
  CHECK(near(e[2], 35.0 / 6.0));
  REQUIRE(a.witness.has_value());
  const auto [wa, wb] = *a.witness;
  const std::vector<Complex> rebuilt{wa * wb, wa / wb, wb / wa, 1.0 / (wa * wb)};
  CHECK(multiset_close(rebuilt, real_class({2.0, 0.5, 3.0, 1.0 / 3.0}).eigenvalues(), 1e-9));

  const SpectralClass b = real_class({2.0, 2.0, 2.0, 0.125});
  const auto eb = elem_sym(b);
  CHECK(near(eb[0], 49.0 / 8.0));
  CHECK(near(eb[2], 19.0 / 2.0));
  CHECK_FALSE(is_22_product(b).product);

  const Product22 ones = is_22_product(real_class({1.0, 1.0, 1.0, 1.0}));
  CHECK(ones.product);
  REQUIRE(ones.witness.has_value());
  CHECK(near(ones.witness->first * ones.witness->second, 1.0, 1e-9));

  CHECK_THROWS_AS(is_22_product(real_class({1.0, 1.0})), Error);
}

TEST_CASE("three characterizations agree at n = 4") {
  oracle::Rng rng(109);
  for (int trial = 0; trial < 300; ++trial) {
    SpectralClass s = trial % 3 == 0   ? tensor_spectrum(oracle::random_local_spectra({2, 2}, rng))
                      : trial % 3 == 1 ? oracle::random_inversion_closed(4, rng)
                                       : oracle::random_spectrum(4, rng);
    const bool prod = is_22_product(s).product;
    CHECK(prod == oracle::inversion_closed(s));
    CHECK(prod == oracle::char_poly_palindromic(s));
    if (trial % 3 != 2) CHECK(prod);
  }
}

TEST_CASE("quartic") {
  CHECK(std::abs(quartic_f(8.0, 28.0, 56.0, 70.0)) < 1e-12);
  CHECK(std::abs(quartic_f(0.0, Complex(3.0, 1.0), 0.0, -7.0)) == 0.0);
  const std::vector<Complex> e{8.0, 28.0, 56.0, 70.0};
  CHECK(std::abs(quartic_f(e)) < 1e-12);

  oracle::Rng rng(113);
  int nonzero = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto ev = elem_sym(oracle::random_spectrum(8, rng));
    if (std::abs(quartic_f(ev)) > 1e-6) ++nonzero;
  }
  CHECK(nonzero == 20);
}

TEST_CASE("(2,2,2) criterion") {
  oracle::Rng rng(127);
  CHECK(is_222_product(tensor_spectrum(LocalSpectra({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}))));
  for (int trial = 0; trial < 100; ++trial) {
    const SpectralClass s = tensor_spectrum(oracle::random_local_spectra({2, 2, 2}, rng));
    CHECK(is_222_product(s));
    CHECK(d_product_oracle(s, {2, 2, 2}).has_value());
    const SpectralClass bent = perturbed(s, static_cast<std::size_t>(trial % 8));
    CHECK_FALSE(is_222_product(bent));
    CHECK_FALSE(d_product_oracle(bent, {2, 2, 2}).has_value());
  }
  // Inversion-closed but not a product: palindromic yet outside the image.
  int disagreements = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralClass s = oracle::random_inversion_closed(8, rng);
    disagreements += is_222_product(s) != d_product_oracle(s, {2, 2, 2}).has_value();
  }
  CHECK(disagreements == 0);
  CHECK_THROWS_AS(is_222_product(real_class({1.0, 1.0, 1.0, 1.0})), Error);
}

TEST_CASE("slot search oracle") {
  const SpectralClass s = real_class({6.0, 2.0 / 3.0, 1.5, 1.0 / 6.0});
  const auto l = d_product_oracle(s, {2, 2});
  REQUIRE(l.has_value());
  CHECK(multiset_close(tensor_spectrum(*l).eigenvalues(), s.eigenvalues(), 1e-9));

  const auto ones = d_product_oracle(real_class({1, 1, 1, 1, 1, 1}), {2, 3});
  REQUIRE(ones.has_value());
  for (const auto& f : ones->factors())
    for (const auto& z : f) CHECK(near(z, 1.0, 1e-9));

  oracle::Rng rng(131);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralClass t = tensor_spectrum(oracle::random_local_spectra({2, 3}, rng));
    CHECK(d_product_oracle(t, {2, 3}).has_value());
    CHECK_FALSE(d_product_oracle(oracle::random_spectrum(6, rng), {2, 3}).has_value());
    CHECK(d_product_oracle(t, {3, 2}).has_value());
  }
  CHECK_THROWS_AS(d_product_oracle(s, {2, 3}), Error);
  CHECK_THROWS_AS(d_product_oracle(oracle::random_spectrum(18, rng), {2, 3, 3}), Error);
}

TEST_CASE("sphericity") {
  CHECK(sphericity_check({2, 2}));
  CHECK_FALSE(sphericity_check({2, 3}));
  CHECK_FALSE(sphericity_check({2, 2, 2}));
  CHECK_FALSE(sphericity_check({3, 3}));
}

TEST_CASE("multiset comparison") {
  const std::vector<Complex> a{1.0, 2.0, 2.0}, b{2.0, 1.0, 2.0}, c{1.0, 1.0, 2.0};
  CHECK(multiset_close(a, b, 1e-12));
  CHECK_FALSE(multiset_close(a, c, 1e-12));
  CHECK_FALSE(multiset_close(a, std::vector<Complex>{1.0, 2.0}, 1e-12));
}
