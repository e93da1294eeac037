#include "egeo/spectral_satake.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace egeo {

namespace {

Complex principal_root(Complex x, int n) {
  return std::polar(std::pow(std::abs(x), 1.0 / n), std::arg(x) / n);
}

Complex product(std::span<const Complex> z) {
  return std::accumulate(z.begin(), z.end(), Complex(1.0, 0.0), std::multiplies<>());
}

double scale_of(std::span<const Complex> e) {
  double m = 0.0;
  for (const auto& x : e) m = std::max(m, std::abs(x));
  return 1.0 + m;
}

}  // namespace

SpectralClass::SpectralClass(std::vector<Complex> eigenvalues) : z_(std::move(eigenvalues)) {
  if (z_.empty()) throw Error(ErrorKind::WrongSize, "empty spectrum");
  for (const auto& z : z_)
    if (z == Complex(0.0, 0.0)) throw Error(ErrorKind::OutOfRange, "eigenvalues must be nonzero");
  const Complex c = principal_root(product(z_), static_cast<int>(z_.size()));
  for (auto& z : z_) z /= c;
}

LocalSpectra::LocalSpectra(std::vector<std::vector<Complex>> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorKind::WrongSize, "no local factors");
  for (const auto& f : factors_) {
    if (f.empty()) throw Error(ErrorKind::WrongSize, "empty local factor");
    if (std::abs(product(f) - 1.0) > 1e-9) throw Error(ErrorKind::OutOfRange, "local factor product is not one");
  }
}

LocalSpectra LocalSpectra::normalized(std::vector<std::vector<Complex>> factors) {
  for (auto& f : factors) {
    if (f.empty()) throw Error(ErrorKind::WrongSize, "empty local factor");
    const Complex c = principal_root(product(f), static_cast<int>(f.size()));
    for (auto& x : f) x /= c;
  }
  return LocalSpectra(std::move(factors));
}

std::vector<int> LocalSpectra::dims() const {
  std::vector<int> d;
  for (const auto& f : factors_) d.push_back(static_cast<int>(f.size()));
  return d;
}

std::vector<Complex> elem_sym(const SpectralClass& s) {
  const auto& z = s.eigenvalues();
  std::vector<Complex> e(z.size() + 1, Complex(0.0, 0.0));
  e[0] = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += z[i] * e[k - 1];
  return {e.begin() + 1, e.end()};
}

SpectralClass tensor_spectrum(const LocalSpectra& l) {
  std::vector<Complex> out{Complex(1.0, 0.0)};
  for (const auto& f : l.factors()) {
    std::vector<Complex> next;
    next.reserve(out.size() * f.size());
    for (const auto& x : out)
      for (const auto& a : f) next.push_back(x * a);
    out = std::move(next);
  }
  return SpectralClass(std::move(out));
}

bool multiset_close(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  double scale = 1.0;
  for (const auto& x : a) scale = std::max(scale, std::abs(x));
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    std::size_t best = b.size();
    double best_d = tol * scale;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d <= best_d) best = j, best_d = d;
    }
    if (best == b.size()) return false;
    used[best] = true;
  }
  return true;
}

Product22 is_22_product(const SpectralClass& s, double tol) {
  if (s.size() != 4) throw Error(ErrorKind::WrongSize, "is_22_product needs four eigenvalues");
  const auto e = elem_sym(s);
  Product22 out;
  out.product = std::abs(e[0] - e[2]) <= tol * scale_of(e);
  if (!out.product) return out;

  // Pair z_0 with its nearest inverse; the other two form the second pair.
  const auto& z = s.eigenvalues();
  std::size_t partner = 1;
  for (std::size_t j = 2; j < 4; ++j)
    if (std::abs(z[0] * z[j] - 1.0) < std::abs(z[0] * z[partner] - 1.0)) partner = j;
  std::size_t other = 1;
  while (other == partner) ++other;
  const Complex u = z[0];
  const Complex v = z[other];
  const Complex a = std::sqrt(u * v);
  const Complex b = u / a;
  const std::vector<Complex> rebuilt{a * b, a / b, b / a, 1.0 / (a * b)};
  if (multiset_close(rebuilt, z, std::max(tol, kOracleTol))) out.witness = {a, b};
  return out;
}

Complex quartic_f(Complex e1, Complex e2, Complex e3, Complex e4) {
  return e3 * e3 + 2.0 * e1 * e3 + e1 * e1 * e1 * e1 - (e4 + 2.0 * e2 + 1.0) * e1 * e1;
}

Complex quartic_f(std::span<const Complex> e) {
  if (e.size() < 4) throw Error(ErrorKind::WrongSize, "quartic_f needs e_1..e_4");
  return quartic_f(e[0], e[1], e[2], e[3]);
}

bool is_222_product(const SpectralClass& s, double tol) {
  if (s.size() != 8) throw Error(ErrorKind::WrongSize, "is_222_product needs eight eigenvalues");
  const auto e = elem_sym(s);
  const double scale = scale_of(e);
  const bool palindromic = std::abs(e[6] - e[0]) <= tol * scale && std::abs(e[5] - e[1]) <= tol * scale &&
                           std::abs(e[4] - e[2]) <= tol * scale;
  if (!palindromic) return false;
  // F has degree four in the e_k.
  return std::abs(quartic_f(e)) <= tol * scale * scale * scale * scale;
}

namespace {

struct SlotSearch {
  const std::vector<Complex>& z;
  const std::vector<int>& dims;
  double tol;
  std::vector<bool> used;
  std::vector<std::vector<Complex>> ratios;  // per factor: 1, then z_sel / z_0
  std::optional<LocalSpectra> found;

  bool verify() {
    const auto r = dims.size();
    std::vector<Complex> pinned(r);  // a_{i,0}^{d_i} = 1 / prod ratios
    for (std::size_t i = 0; i < r; ++i) pinned[i] = 1.0 / product(ratios[i]);
    // Choose d_i-th roots for all but the last factor; the last is forced by
    // prod a_{i,0} = z_0 and must satisfy its own root equation.
    std::vector<int> branch(r, 0);
    while (true) {
      Complex head(1.0, 0.0);
      std::vector<Complex> a0(r);
      for (std::size_t i = 0; i + 1 < r; ++i) {
        a0[i] = principal_root(pinned[i], dims[i]) *
                std::polar(1.0, 2.0 * std::numbers::pi * branch[i] / dims[i]);
        head *= a0[i];
      }
      a0[r - 1] = z[0] / head;
      Complex check = pinned[r - 1];
      for (int k = 0; k < dims[r - 1]; ++k) check /= a0[r - 1];
      if (std::abs(check - 1.0) <= tol) {
        std::vector<std::vector<Complex>> factors(r);
        for (std::size_t i = 0; i < r; ++i)
          for (const auto& rho : ratios[i]) factors[i].push_back(a0[i] * rho);
        try {
          LocalSpectra l = LocalSpectra::normalized(factors);
          if (multiset_close(tensor_spectrum(l).eigenvalues(), z, tol)) {
            found = std::move(l);
            return true;
          }
        } catch (const Error&) {
        }
      }
      std::size_t i = 0;
      while (i + 1 < r && ++branch[i] == dims[i]) branch[i++] = 0;
      if (i + 1 >= r) return false;
    }
  }

  // Factor i, choosing its remaining axis values with indices above `from`.
  bool choose(std::size_t i, std::size_t from) {
    if (i == dims.size()) return verify();
    if (static_cast<int>(ratios[i].size()) == dims[i]) return choose(i + 1, 1);
    for (std::size_t k = from; k < z.size(); ++k) {
      if (used[k]) continue;
      used[k] = true;
      ratios[i].push_back(z[k] / z[0]);
      if (choose(i, k + 1)) return true;
      ratios[i].pop_back();
      used[k] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<LocalSpectra> d_product_oracle(const SpectralClass& s, const std::vector<int>& dims, double tol) {
  std::size_t n = 1;
  for (int d : dims) {
    if (d < 1) throw Error(ErrorKind::OutOfRange, "dimensions must be positive");
    n *= static_cast<std::size_t>(d);
  }
  if (dims.empty() || n != s.size()) throw Error(ErrorKind::WrongSize, "spectrum size must equal prod d_i");
  if (n > kMaxOracleSize) throw Error(ErrorKind::TooLarge, "oracle is capped at n = 16");

  SlotSearch search{s.eigenvalues(), dims, tol, std::vector<bool>(n, false), {}, std::nullopt};
  search.used[0] = true;
  search.ratios.assign(dims.size(), std::vector<Complex>{Complex(1.0, 0.0)});
  search.choose(0, 1);
  return search.found;
}

bool sphericity_check(const std::vector<int>& dims) {
  long n = 1, sq = 0;
  for (int d : dims) {
    n *= d;
    sq += static_cast<long>(d) * d;
  }
  return n * n - n - 2 * sq + 2 * static_cast<long>(dims.size()) <= 0;
}

}  // namespace egeo
