#include "repro/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace egeo::oracle {

Complex random_complex(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  return {re, g(rng)};
}

CVector random_vector(Eigen::Index n, Rng& rng) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = random_complex(rng);
  return v;
}

PureState random_state(const std::vector<int>& dims, Rng& rng) {
  Eigen::Index n = 1;
  for (int d : dims) n *= d;
  return PureState(dims, random_vector(n, rng).normalized());
}

PureState random_block_product(const std::vector<int>& dims, const Partition& p, Rng& rng) {
  std::vector<PureState> parts;
  std::vector<int> order;  // order[pos] = original subsystem at concatenated position pos
  for (const auto& block : p.blocks()) {
    std::vector<int> bd;
    for (int i : block) {
      bd.push_back(dims[static_cast<std::size_t>(i)]);
      order.push_back(i);
    }
    parts.push_back(random_state(bd, rng));
  }
  const PureState joined = tensor_product(parts);
  std::vector<int> perm(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) perm[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
  return permute_subsystems(joined, perm);
}

CMatrix random_rank_matrix(Eigen::Index rows, Eigen::Index cols, int rank, Rng& rng) {
  CMatrix m = CMatrix::Zero(rows, cols);
  for (int k = 0; k < rank; ++k) m += random_vector(rows, rng) * random_vector(cols, rng).transpose();
  return m;
}

Partition random_partition(int n, Rng& rng) {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, blocks.size());
    const std::size_t b = pick(rng);
    if (b == blocks.size()) blocks.emplace_back();
    blocks[b].push_back(i);
  }
  return Partition(n, std::move(blocks));
}

CMatrix reduced_density(const PureState& state, const std::vector<int>& block) {
  const auto& dims = state.dims();
  const int n = state.subsystems();
  std::vector<bool> in_block(static_cast<std::size_t>(n), false);
  for (int i : block) in_block[static_cast<std::size_t>(i)] = true;

  Eigen::Index db = 1, dc = 1;
  for (int i = 0; i < n; ++i) (in_block[static_cast<std::size_t>(i)] ? db : dc) *= dims[static_cast<std::size_t>(i)];
  // Split each flat index into (block index, complement index), both row-major.
  CMatrix psi = CMatrix::Zero(db, dc);
  const CVector c = state.coeffs() / state.norm();
  for (Eigen::Index flat = 0; flat < state.size(); ++flat) {
    Eigen::Index rest = flat, bi = 0, ci = 0, bw = 1, cw = 1;
    for (int i = n - 1; i >= 0; --i) {
      const int d = dims[static_cast<std::size_t>(i)];
      const Eigen::Index digit = rest % d;
      rest /= d;
      if (in_block[static_cast<std::size_t>(i)]) {
        bi += digit * bw;
        bw *= d;
      } else {
        ci += digit * cw;
        cw *= d;
      }
    }
    psi(bi, ci) = c(flat);
  }
  CMatrix rho = CMatrix::Zero(db, db);
  for (Eigen::Index x = 0; x < db; ++x)
    for (Eigen::Index y = 0; y < db; ++y) {
      Complex s = 0.0;
      for (Eigen::Index z = 0; z < dc; ++z) s += psi(x, z) * std::conj(psi(y, z));
      rho(x, y) = s;
    }
  return rho;
}

bool is_pi_product_by_purity(const PureState& state, const Partition& p, double tol) {
  for (const auto& block : p.blocks()) {
    if (static_cast<int>(block.size()) == state.subsystems()) continue;
    const CMatrix rho = reduced_density(state, block);
    const double purity = (rho * rho).trace().real();
    if (1.0 - purity > tol) return false;
  }
  return true;
}

namespace {

void set_partitions_rec(int n, std::vector<int>& labels, int used, std::vector<Partition>& out) {
  const auto i = static_cast<int>(labels.size());
  if (i == n) {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(used));
    for (int k = 0; k < n; ++k) blocks[static_cast<std::size_t>(labels[static_cast<std::size_t>(k)])].push_back(k);
    out.emplace_back(n, std::move(blocks));
    return;
  }
  for (int b = 0; b <= used; ++b) {
    labels.push_back(b);
    set_partitions_rec(n, labels, std::max(used, b + 1), out);
    labels.pop_back();
  }
}

}  // namespace

std::vector<Partition> all_set_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> labels;
  set_partitions_rec(n, labels, 0, out);
  return out;
}

Partition brute_finest_partition(const PureState& state, double tol) {
  const int n = state.subsystems();
  Partition acc = Partition::single_block(n);
  for (const auto& p : all_set_partitions(n))
    if (is_pi_product_by_purity(state, p, tol)) acc = meet(acc, p);
  return acc;
}

namespace {

constexpr std::int64_t kPrime = 1000000007;
using Monomial = std::vector<int>;
using Poly = std::map<Monomial, std::int64_t>;

void monomials_rec(int nv, int deg, int var, Monomial& cur, std::vector<Monomial>& out) {
  if (var == nv - 1) {
    cur[static_cast<std::size_t>(var)] = deg;
    out.push_back(cur);
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[static_cast<std::size_t>(var)] = e;
    monomials_rec(nv, deg - e, var + 1, cur, out);
  }
  cur[static_cast<std::size_t>(var)] = 0;
}

std::vector<Monomial> monomials(int nv, int deg) {
  std::vector<Monomial> out;
  Monomial cur(static_cast<std::size_t>(nv), 0);
  monomials_rec(nv, deg, 0, cur, out);
  return out;
}

// Leibniz expansion of the minor on the given rows and columns.
Poly minor_poly(int d_b, const std::vector<int>& rows, const std::vector<int>& cols, int nv) {
  Poly out;
  std::vector<int> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
    Monomial mono(static_cast<std::size_t>(nv), 0);
    for (std::size_t k = 0; k < rows.size(); ++k)
      ++mono[static_cast<std::size_t>(rows[k] * d_b + cols[static_cast<std::size_t>(perm[k])])];
    auto& c = out[mono];
    c = (c + (inversions % 2 ? kPrime - 1 : 1)) % kPrime;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  b %= kPrime;
  for (; e > 0; e >>= 1, b = b * b % kPrime)
    if (e & 1) r = r * b % kPrime;
  return r;
}

long rank_mod_prime(std::vector<std::vector<std::int64_t>> a) {
  long rank = 0;
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < a.size(); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
    auto& prow = a[static_cast<std::size_t>(rank)];
    const std::int64_t inv = pow_mod(prow[c], kPrime - 2);
    for (auto& x : prow) x = x * inv % kPrime;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
      const std::int64_t f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] = ((a[r][k] - f * prow[k]) % kPrime + kPrime) % kPrime;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

long hilbert_by_monomials(int d_a, int d_b, int r, int t) {
  const int nv = d_a * d_b;
  const auto target = monomials(nv, t);
  if (t < r + 1) return static_cast<long>(target.size());
  std::map<Monomial, std::size_t> col;
  for (std::size_t k = 0; k < target.size(); ++k) col[target[k]] = k;

  std::vector<std::vector<std::int64_t>> rows;
  const auto multipliers = monomials(nv, t - r - 1);
  for (const auto& rs : subsets(d_a, r + 1))
    for (const auto& cs : subsets(d_b, r + 1)) {
      const Poly g = minor_poly(d_b, rs, cs, nv);
      for (const auto& mult : multipliers) {
        std::vector<std::int64_t> row(target.size(), 0);
        for (const auto& [mono, coef] : g) {
          Monomial prod = mono;
          for (std::size_t v = 0; v < prod.size(); ++v) prod[v] += mult[v];
          row[col.at(prod)] = (row[col.at(prod)] + coef) % kPrime;
        }
        rows.push_back(std::move(row));
      }
    }
  return static_cast<long>(target.size()) - rank_mod_prime(std::move(rows));
}

std::optional<SumsetFactorization> brute_factor_sumset(const SplittingType& a, int d_a, int d_b) {
  const auto& deg = a.degrees();
  const long t = deg.front();
  const long span = deg.back() - t;
  const auto target = a.degrees();

  // All sorted vectors of length len starting at 0 with entries in [0, span].
  const auto sorted_vectors = [span](int len) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur{0};
    const auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
      }
      for (long x = cur.back(); x <= span; ++x) {
        cur.push_back(x);
        self(self);
        cur.pop_back();
      }
    };
    rec(rec);
    return out;
  };
  for (const auto& b : sorted_vectors(d_a))
    for (const auto& c : sorted_vectors(d_b)) {
      SumsetFactorization f{b, c, t};
      if (f.recombine().degrees() == target) return f;
    }
  return std::nullopt;
}

namespace {

Complex random_unit_scaled(Rng& rng) {
  std::uniform_real_distribution<double> logmod(-0.7, 0.7), phase(0.0, 2.0 * std::numbers::pi);
  const double lm = logmod(rng);
  return std::polar(std::exp(lm), phase(rng));
}

}  // namespace

LocalSpectra random_local_spectra(const std::vector<int>& dims, Rng& rng) {
  std::vector<std::vector<Complex>> f;
  for (int d : dims) {
    std::vector<Complex> x;
    for (int j = 0; j < d; ++j) x.push_back(random_unit_scaled(rng));
    f.push_back(std::move(x));
  }
  return LocalSpectra::normalized(std::move(f));
}

SpectralClass random_spectrum(std::size_t n, Rng& rng) {
  std::vector<Complex> z;
  for (std::size_t k = 0; k < n; ++k) z.push_back(random_unit_scaled(rng));
  return SpectralClass(std::move(z));
}

SpectralClass random_inversion_closed(std::size_t n, Rng& rng) {
  std::vector<Complex> z;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const Complex x = random_unit_scaled(rng);
    z.push_back(x);
    z.push_back(1.0 / x);
  }
  return SpectralClass(std::move(z));
}

bool inversion_closed(const SpectralClass& s, double tol) {
  std::vector<Complex> inv;
  for (const auto& z : s.eigenvalues()) inv.push_back(1.0 / z);
  return multiset_close(inv, s.eigenvalues(), tol);
}

bool char_poly_palindromic(const SpectralClass& s, double tol) {
  // p(T) = prod (T - z_i) against T^n p(1/T), sampled at fixed points.
  const auto n = static_cast<int>(s.size());
  for (const Complex t : {Complex(0.3, 0.7), Complex(-1.2, 0.4), Complex(2.1, -0.5), Complex(0.9, 0.1)}) {
    Complex p = 1.0, q = 1.0;
    for (const auto& z : s.eigenvalues()) {
      p *= t - z;
      q *= 1.0 / t - z;
    }
    q *= std::pow(t, n);
    if (std::abs(p - q) > tol * (1.0 + std::abs(p))) return false;
  }
  return true;
}

}  // namespace egeo::oracle
