#include "egeo/rank_geometry.hpp"

#include <algorithm>
#include <numeric>

#include "egeo/separability.hpp"

namespace egeo {

namespace {

BigInt factorial(int n) {
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

void check_numerology_dim(int d, const char* what) {
  if (d < 1 || d > kMaxNumerologyDim)
    throw Error(ErrorKind::OutOfRange, std::string(what) + " must lie in [1, 12]");
}

void partitions_rec(int remaining, int max_part, int max_length, std::vector<int>& cur,
                    std::vector<IntegerPartition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) == max_length) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, max_length, cur, out);
    cur.pop_back();
  }
}

}  // namespace

IntegerPartition::IntegerPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw Error(ErrorKind::OutOfRange, "partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw Error(ErrorKind::OutOfRange, "partition parts must not increase");
  }
}

int IntegerPartition::weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::vector<IntegerPartition> partitions_of(int t, int max_length) {
  if (t < 0) throw Error(ErrorKind::OutOfRange, "negative weight");
  std::vector<IntegerPartition> out;
  std::vector<int> cur;
  partitions_rec(t, t, max_length, cur, out);
  return out;
}

int flattening_lower_bound(const PureState& state, double tol) {
  if (state.subsystems() < 2) return 1;
  int best = 0;
  for (const auto& cut : bipartitions(state.subsystems()))
    best = std::max(best, numerical_rank(flatten(state, cut), tol));
  return best;
}

int rank_2x2x2(const PureState& state, double tol) {
  if (state.dims() != std::vector<int>{2, 2, 2}) throw Error(ErrorKind::WrongShape, "rank_2x2x2 needs dims [2,2,2]");
  const PureState psi = state.normalized();
  if (is_pi_product(psi, Partition::singletons(3), tol)) return 1;

  // Rows of the first-factor flattening are the contractions M0, M1 (2x2, row-major).
  const CMatrix f = flatten(psi, Bipartition(3, {0})).entries;
  const auto as_matrix = [&](Eigen::Index row) {
    CMatrix m(2, 2);
    m << f(row, 0), f(row, 1), f(row, 2), f(row, 3);
    return m;
  };
  if (numerical_rank(f, tol) == 1) {
    const Eigen::Index row = f.row(0).norm() >= f.row(1).norm() ? 0 : 1;
    return numerical_rank(as_matrix(row), tol);
  }

  const CMatrix m0 = as_matrix(0);
  const CMatrix m1 = as_matrix(1);
  const Complex alpha = m0.determinant();
  const Complex gamma = m1.determinant();
  const Complex beta = (m0 + m1).determinant() - alpha - gamma;
  const double scale = std::max({std::abs(alpha), std::abs(beta), std::abs(gamma)});
  // Every member of the pencil is singular: the image is a plane of rank-one
  // matrices, so one factor splits off and the rest is a rank-2 matrix.
  if (scale <= kPencilTol) return 2;
  const Complex disc = (beta * beta - 4.0 * alpha * gamma) / (scale * scale);
  return std::abs(disc) <= kPencilTol ? 3 : 2;
}

PureState w_family(Complex t) {
  CVector v(2);
  v << 1.0, t;
  CVector c = CVector::Zero(8);
  for (int i = 0; i < 8; ++i) c(i) = v((i >> 2) & 1) * v((i >> 1) & 1) * v(i & 1);
  c(0) -= 1.0;
  if (c.cwiseAbs().maxCoeff() == 0.0) throw Error(ErrorKind::ZeroState, "w_family(0) is the zero vector");
  return PureState({2, 2, 2}, std::move(c));
}

DimCodim determinantal_dim(int d_a, int d_b, int k) {
  if (d_a < 1 || d_b < 1 || k < 1 || k > std::min(d_a, d_b))
    throw Error(ErrorKind::OutOfRange, "need 1 <= k <= min(d_a, d_b)");
  return DimCodim{static_cast<long>(k) * (d_a + d_b - k) - 1, static_cast<long>(d_a - k) * (d_b - k)};
}

BigInt segre_degree(int d_a, int d_b) {
  check_numerology_dim(d_a, "d_a");
  check_numerology_dim(d_b, "d_b");
  return binomial(d_a + d_b - 2, d_a - 1);
}

BigInt determinantal_degree(int d_a, int d_b, int r) {
  check_numerology_dim(d_a, "d_a");
  check_numerology_dim(d_b, "d_b");
  if (d_a > d_b) std::swap(d_a, d_b);
  if (r < 1 || r > d_a) throw Error(ErrorKind::OutOfRange, "need 1 <= r <= min(d_a, d_b)");
  BigInt num = 1, den = 1;
  for (int i = 0; i <= d_a - r - 1; ++i) {
    num *= factorial(d_b + i) * factorial(i);
    den *= factorial(r + i) * factorial(d_b - r + i);
  }
  return num / den;
}

BigInt schur_dim(const IntegerPartition& lambda, int d) {
  if (d < 1) throw Error(ErrorKind::OutOfRange, "d must be positive");
  if (lambda.length() > d) return 0;
  const auto& rows = lambda.parts();
  // Column lengths of the Young diagram.
  std::vector<int> cols(rows.empty() ? 0 : static_cast<std::size_t>(rows.front()), 0);
  for (int len : rows)
    for (int j = 0; j < len; ++j) ++cols[static_cast<std::size_t>(j)];
  BigInt num = 1, den = 1;
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    for (int j = 0; j < rows[static_cast<std::size_t>(i)]; ++j) {
      const int arm = rows[static_cast<std::size_t>(i)] - j - 1;
      const int leg = cols[static_cast<std::size_t>(j)] - i - 1;
      num *= d + j - i;
      den *= arm + leg + 1;
    }
  }
  return num / den;
}

BigInt hilbert_function(int d_a, int d_b, int r, int t) {
  check_numerology_dim(d_a, "d_a");
  check_numerology_dim(d_b, "d_b");
  if (r < 1 || r > std::min(d_a, d_b)) throw Error(ErrorKind::OutOfRange, "need 1 <= r <= min(d_a, d_b)");
  if (t < 0) throw Error(ErrorKind::OutOfRange, "t must be nonnegative");
  BigInt total = 0;
  for (const auto& lambda : partitions_of(t, r)) total += schur_dim(lambda, d_a) * schur_dim(lambda, d_b);
  return total;
}

HilbertFit hilbert_polynomial_fit(int d_a, int d_b, int r, int t0) {
  // The Hilbert polynomial has degree at most d_a d_b - 1; take one extra
  // sample so the top difference is checked to vanish.
  const int samples = d_a * d_b + 1;
  std::vector<BigInt> diff;
  for (int k = 0; k < samples; ++k) diff.push_back(hilbert_function(d_a, d_b, r, t0 + k));
  // Repeated differencing; the last nonzero constant row gives degree and dim! * lead.
  int degree = 0;
  BigInt lead = diff.front();
  for (int order = 1; order < samples; ++order) {
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
    if (std::all_of(diff.begin(), diff.end(), [](const BigInt& x) { return x == 0; })) break;
    degree = order;
    lead = diff.front();
  }
  return HilbertFit{degree, lead};
}

long secant_expected_dim(const std::vector<int>& dims, int r) {
  if (r < 1) throw Error(ErrorKind::OutOfRange, "r must be positive");
  long sum = 0, prod = 1;
  for (int d : dims) {
    sum += d - 1;
    prod *= d;
  }
  return std::min(static_cast<long>(r) * (sum + 1) - 1, prod - 1);
}

}  // namespace egeo
