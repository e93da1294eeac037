#include "egeo/tensor_core.hpp"

#include <algorithm>
#include <numeric>

namespace egeo {

namespace {

std::vector<Eigen::Index> strides_of(const std::vector<int>& dims) {
  std::vector<Eigen::Index> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k + 1)] * dims[static_cast<std::size_t>(k + 1)];
  return s;
}

Eigen::Index product_of(const std::vector<int>& dims) {
  Eigen::Index n = 1;
  for (int d : dims) n *= d;
  return n;
}

// Rotates `u` so its first component above `eps` is real positive; returns the phase removed.
Complex fix_phase(Eigen::Ref<CVector> u, double eps = 1e-12) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) > eps) {
      const Complex phase = u(i) / std::abs(u(i));
      u /= phase;
      return phase;
    }
  }
  return Complex(1.0);
}

bool lex_less(const CVector& a, const CVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

PureState::PureState(std::vector<int> dims, CVector coeffs) : dims_(std::move(dims)), coeffs_(std::move(coeffs)) {
  if (dims_.empty()) throw Error(ErrorKind::ShapeMismatch, "a state needs at least one subsystem");
  for (int d : dims_)
    if (d < 2) throw Error(ErrorKind::ShapeMismatch, "subsystem dimensions must be at least 2");
  if (product_of(dims_) != coeffs_.size())
    throw Error(ErrorKind::ShapeMismatch, "product of dims " + std::to_string(product_of(dims_)) +
                                              " != coefficient count " + std::to_string(coeffs_.size()));
  if (coeffs_.cwiseAbs().maxCoeff() == 0.0) throw Error(ErrorKind::ZeroState, "all coefficients vanish");
}

PureState PureState::normalized() const { return PureState(dims_, coeffs_ / coeffs_.norm()); }

PureState make_state(std::vector<int> dims, CVector coeffs) { return PureState(std::move(dims), std::move(coeffs)); }

PureState make_state(std::vector<int> dims, std::span<const Complex> coeffs) {
  CVector v(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) v(static_cast<Eigen::Index>(i)) = coeffs[i];
  return PureState(std::move(dims), std::move(v));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  CVector c(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) c.segment(i * b.size(), b.size()) = a[i] * b.coeffs();
  return PureState(std::move(dims), std::move(c));
}

PureState tensor_product(std::span<const PureState> factors) {
  if (factors.empty()) throw Error(ErrorKind::ShapeMismatch, "empty tensor product");
  PureState out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor_product(out, factors[k]);
  return out;
}

PureState permute_subsystems(const PureState& state, std::span<const int> perm) {
  const auto n = static_cast<std::size_t>(state.subsystems());
  if (perm.size() != n) throw Error(ErrorKind::ShapeMismatch, "permutation length differs from N");
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)]++)
      throw Error(ErrorKind::ShapeMismatch, "not a permutation");
  }
  std::vector<int> new_dims(n);
  for (std::size_t k = 0; k < n; ++k) new_dims[k] = state.dims()[static_cast<std::size_t>(perm[k])];
  const auto old_strides = strides_of(state.dims());
  const auto new_strides = strides_of(new_dims);
  CVector out(state.size());
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    Eigen::Index j = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto src = static_cast<std::size_t>(perm[k]);
      const Eigen::Index digit = (i / old_strides[src]) % state.dims()[src];
      j += digit * new_strides[k];
    }
    out(j) = state[i];
  }
  return PureState(std::move(new_dims), std::move(out));
}

Bipartition::Bipartition(int n_subsystems, std::vector<int> block) : n_(n_subsystems) {
  std::sort(block.begin(), block.end());
  block.erase(std::unique(block.begin(), block.end()), block.end());
  if (n_ < 2) throw Error(ErrorKind::ShapeMismatch, "a bipartition needs at least two subsystems");
  if (block.empty() || static_cast<int>(block.size()) >= n_ || block.front() < 0 || block.back() >= n_)
    throw Error(ErrorKind::ShapeMismatch, "block must be a nonempty proper subset of {0..N-1}");
  block_a_ = std::move(block);
  if (block_a_.front() != 0) block_a_ = block_b();
}

std::vector<int> Bipartition::block_b() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (!std::binary_search(block_a_.begin(), block_a_.end(), i)) out.push_back(i);
  return out;
}

FlatteningMatrix flatten(const PureState& state, const Bipartition& cut) {
  if (cut.n_subsystems() != state.subsystems())
    throw Error(ErrorKind::ShapeMismatch, "bipartition is over a different number of subsystems");
  const auto& dims = state.dims();
  const auto strides = strides_of(dims);
  const std::vector<int> a = cut.block_a();
  const std::vector<int> b = cut.block_b();
  Eigen::Index rows = 1, cols = 1;
  for (int i : a) rows *= dims[static_cast<std::size_t>(i)];
  for (int i : b) cols *= dims[static_cast<std::size_t>(i)];

  CMatrix m(rows, cols);
  for (Eigen::Index idx = 0; idx < state.size(); ++idx) {
    Eigen::Index alpha = 0, beta = 0;
    for (int i : a) {
      const auto k = static_cast<std::size_t>(i);
      alpha = alpha * dims[k] + (idx / strides[k]) % dims[k];
    }
    for (int i : b) {
      const auto k = static_cast<std::size_t>(i);
      beta = beta * dims[k] + (idx / strides[k]) % dims[k];
    }
    m(alpha, beta) = state[idx];
  }
  return FlatteningMatrix{std::move(m), cut};
}

CMatrix SchmidtDecomposition::reassemble() const {
  return left_vecs * sigmas.cast<Complex>().asDiagonal() * right_vecs.transpose();
}

SchmidtDecomposition schmidt_decompose(const PureState& state, const Bipartition& cut, double tol) {
  const double scale = state.norm();
  const CMatrix m = flatten(state, cut).entries / scale;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;

  struct Term {
    double sigma;
    CVector u, v;
  };
  std::vector<Term> terms;
  for (int a = 0; a < rank; ++a) {
    Term t{s(a), svd.matrixU().col(a), svd.matrixV().col(a).conjugate()};
    const Complex phase = fix_phase(t.u);
    t.v *= phase;
    terms.push_back(std::move(t));
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (std::abs(x.sigma - y.sigma) > 1e-12) return x.sigma > y.sigma;
    return lex_less(x.u, y.u);
  });

  SchmidtDecomposition out;
  out.scale = scale;
  out.sigmas.resize(rank);
  out.left_vecs.resize(m.rows(), rank);
  out.right_vecs.resize(m.cols(), rank);
  for (int a = 0; a < rank; ++a) {
    const auto& t = terms[static_cast<std::size_t>(a)];
    out.sigmas(a) = t.sigma;
    out.left_vecs.col(a) = t.u;
    out.right_vecs.col(a) = t.v;
  }
  return out;
}

double concurrence(const PureState& state) {
  if (state.dims() != std::vector<int>{2, 2}) throw Error(ErrorKind::WrongShape, "concurrence needs two qubits");
  const PureState psi = state.normalized();
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

IncidenceLift incidence_lift(const PureState& state, const Bipartition& cut, double tol) {
  const CMatrix m = flatten(state, cut).entries;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  int k = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++k;
  IncidenceLift out;
  out.ua_basis = svd.matrixU().leftCols(k);
  out.ub_basis = svd.matrixV().leftCols(k).conjugate();
  out.core = out.ua_basis.adjoint() * m * out.ub_basis.conjugate();
  return out;
}

CMatrix span_projector(const CMatrix& basis) {
  Eigen::JacobiSVD<CMatrix> svd(basis, Eigen::ComputeThinU);
  const int r = numerical_rank(basis);
  const CMatrix q = svd.matrixU().leftCols(r);
  return q * q.adjoint();
}

CMatrix partial_trace_b(const CMatrix& op, int d_a, int d_b) {
  CMatrix out = CMatrix::Zero(d_a, d_a);
  for (int a = 0; a < d_a; ++a)
    for (int a2 = 0; a2 < d_a; ++a2)
      for (int b = 0; b < d_b; ++b) out(a, a2) += op(a * d_b + b, a2 * d_b + b);
  return out;
}

CMatrix partial_trace_a(const CMatrix& op, int d_a, int d_b) {
  CMatrix out = CMatrix::Zero(d_b, d_b);
  for (int b = 0; b < d_b; ++b)
    for (int b2 = 0; b2 < d_b; ++b2)
      for (int a = 0; a < d_a; ++a) out(b, b2) += op(a * d_b + b, a * d_b + b2);
  return out;
}

CMatrix SectorDecomposition::reassemble() const {
  const auto d_a = a_local.rows();
  const auto d_b = b_local.rows();
  const CMatrix ia = CMatrix::Identity(d_a, d_a);
  const CMatrix ib = CMatrix::Identity(d_b, d_b);
  return scalar * CMatrix::Identity(d_a * d_b, d_a * d_b) + kron(a_local, ib) + kron(ia, b_local) + entangling;
}

SectorDecomposition sector_decompose(const CMatrix& op, int d_a, int d_b) {
  if (d_a < 1 || d_b < 1 || op.rows() != op.cols() || op.rows() != static_cast<Eigen::Index>(d_a) * d_b)
    throw Error(ErrorKind::ShapeMismatch, "operator size must equal d_a * d_b");
  SectorDecomposition out;
  const double n = static_cast<double>(d_a) * d_b;
  out.scalar = op.trace() / n;
  const CMatrix ia = CMatrix::Identity(d_a, d_a);
  const CMatrix ib = CMatrix::Identity(d_b, d_b);
  out.a_local = partial_trace_b(op, d_a, d_b) / static_cast<double>(d_b) - out.scalar * ia;
  out.b_local = partial_trace_a(op, d_a, d_b) / static_cast<double>(d_a) - out.scalar * ib;
  out.entangling = op - out.scalar * CMatrix::Identity(op.rows(), op.cols()) - kron(out.a_local, ib) -
                   kron(ia, out.b_local);
  return out;
}

}  // namespace egeo

namespace egeo {

double projective_distance(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) throw Error(ErrorKind::ShapeMismatch, "states live in different spaces");
  const double overlap = std::abs(a.coeffs().dot(b.coeffs())) / (a.norm() * b.norm());
  return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
}

}  // namespace egeo
