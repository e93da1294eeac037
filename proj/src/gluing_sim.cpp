#include "egeo/gluing_sim.hpp"

#include <cmath>
#include <numbers>

namespace egeo {

Complex root_of_unity(int m, long k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % m) / m);
}

WeylSystem weyl_ops(int m) {
  if (m < 2 || m > 64) throw Error(ErrorKind::OutOfRange, "weyl_ops needs 2 <= m <= 64");
  WeylSystem w{m, root_of_unity(m), CMatrix::Zero(m, m), CMatrix::Zero(m, m)};
  for (int r = 0; r < m; ++r) {
    w.x_op((r + 1) % m, r) = 1.0;
    w.z_op(r, r) = root_of_unity(m, r);
  }
  return w;
}

CMatrix normalize_det(const CMatrix& g) {
  const Complex det = g.determinant();
  if (std::abs(det) == 0.0) throw Error(ErrorKind::OutOfRange, "singular lift");
  const auto m = static_cast<double>(g.rows());
  double phase = std::arg(det);
  if (phase < 0) phase += 2.0 * std::numbers::pi;
  const Complex c = std::polar(std::pow(std::abs(det), 1.0 / m), phase / m);
  return g / c;
}

ProjectiveOperator::ProjectiveOperator(CMatrix lift) : lift_(std::move(lift)) {
  if (lift_.rows() != lift_.cols() || lift_.rows() == 0) throw Error(ErrorKind::NotSquare, "lift must be square");
  const double scale = lift_.cwiseAbs().maxCoeff();
  if (scale == 0.0 || std::abs((lift_ / scale).determinant()) <= 1e-12)
    throw Error(ErrorKind::OutOfRange, "lift is not invertible");
}

namespace {

CMatrix scale_by_max_entry(const CMatrix& g) {
  Eigen::Index r = 0, c = 0;
  g.cwiseAbs().maxCoeff(&r, &c);
  return g / g(r, c);
}

}  // namespace

bool ProjectiveOperator::projectively_equal(const ProjectiveOperator& other, double tol) const {
  if (other.dim() != dim()) return false;
  // Normalize both by the entry of `this` with largest modulus so the phase is comparable.
  Eigen::Index r = 0, c = 0;
  lift_.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(other.lift_(r, c)) == 0.0) return false;
  const CMatrix a = lift_ / lift_(r, c);
  const CMatrix b = other.lift_ / other.lift_(r, c);
  return (a - b).cwiseAbs().maxCoeff() < tol;
}

bool ProjectiveOperator::is_scalar(double tol) const {
  const CMatrix a = scale_by_max_entry(lift_);
  return (a - a(0, 0) * CMatrix::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() < tol;
}

ProjectiveOperator loop_holonomy(const HolonomyConfig& cfg) {
  if (cfg.p < 2) throw Error(ErrorKind::OutOfRange, "p must be at least 2");
  if (std::abs(std::abs(cfg.u0) - 1.0) > 1e-12 || std::abs(std::abs(cfg.v0) - 1.0) > 1e-12)
    throw Error(ErrorKind::OutOfRange, "base point must lie on the unit torus");
  if (cfg.loop_word.empty()) throw Error(ErrorKind::BadWord, "empty loop word");
  const int m = cfg.m();
  const WeylSystem w = weyl_ops(m);
  const Complex u_root = std::pow(cfg.u0, 1.0 / m) * root_of_unity(m, ((cfg.branch % m) + m) % m);
  const Complex v_root = std::pow(cfg.v0, 1.0 / m);
  const CMatrix y = v_root * w.z_op;
  const CMatrix x_inv = (u_root * w.x_op).inverse();

  CMatrix g = CMatrix::Identity(m, m);
  for (char letter : cfg.loop_word) {
    switch (letter) {
      case 'u': g = g * y; break;
      case 'U': g = g * y.inverse(); break;
      case 'v': g = g * x_inv; break;
      case 'V': g = g * x_inv.inverse(); break;
      default: throw Error(ErrorKind::BadWord, std::string("unknown loop letter '") + letter + "'");
    }
  }
  return ProjectiveOperator(normalize_det(g));
}

Complex commutator_scalar(const CMatrix& g, const CMatrix& h, double tol) {
  if (g.rows() != h.rows() || g.rows() != g.cols() || h.rows() != h.cols())
    throw Error(ErrorKind::ShapeMismatch, "commutator of differently sized operators");
  const CMatrix c = g * h * g.inverse() * h.inverse();
  const Complex s = c.trace() / static_cast<double>(c.rows());
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if ((c - s * CMatrix::Identity(c.rows(), c.cols())).cwiseAbs().maxCoeff() > tol * scale)
    throw Error(ErrorKind::NotCentral, "group commutator is not a scalar");
  return s / std::abs(s);
}

CMatrix realign(const CMatrix& g, int d_a, int d_b) {
  if (g.rows() != g.cols() || g.rows() != static_cast<Eigen::Index>(d_a) * d_b)
    throw Error(ErrorKind::ShapeMismatch, "operator size must equal d_a * d_b");
  CMatrix r(static_cast<Eigen::Index>(d_a) * d_a, static_cast<Eigen::Index>(d_b) * d_b);
  for (int i = 0; i < d_a; ++i)
    for (int j = 0; j < d_a; ++j)
      for (int k = 0; k < d_b; ++k)
        for (int l = 0; l < d_b; ++l) r(i * d_a + j, k * d_b + l) = g(i * d_b + k, j * d_b + l);
  return r;
}

CMatrix swap_operator(int d) {
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
  return s;
}

bool is_local_operator(const ProjectiveOperator& g, int d_a, int d_b, double tol) {
  if (d_a < 1 || d_b < 1 || g.dim() != d_a * d_b)
    throw Error(ErrorKind::ShapeMismatch, "operator size must equal d_a * d_b");
  const CMatrix lift = scale_by_max_entry(g.lift());
  if (numerical_rank(realign(lift, d_a, d_b), tol) == 1) return true;
  if (d_a == d_b && numerical_rank(realign(lift * swap_operator(d_a), d_a, d_b), tol) == 1) return true;
  return false;
}

std::pair<int, int> qudit_encode(int r, int p) {
  if (p < 1 || r < 0 || r >= p * p) throw Error(ErrorKind::OutOfRange, "need 0 <= r < p^2");
  return {r % p, r / p};
}

PureState qudit_to_pp(const PureState& state, int p) {
  if (state.size() != static_cast<Eigen::Index>(p) * p) throw Error(ErrorKind::ShapeMismatch, "state is not on C^{p^2}");
  CVector out(state.size());
  for (int r = 0; r < p * p; ++r) {
    const auto [a, b] = qudit_encode(r, p);
    out(a * p + b) = state[r];
  }
  return PureState({p, p}, std::move(out));
}

PureState pp_to_qudit(const PureState& state, int p) {
  if (state.dims() != std::vector<int>{p, p}) throw Error(ErrorKind::ShapeMismatch, "state is not on C^p ⊗ C^p");
  CVector out(state.size());
  for (int r = 0; r < p * p; ++r) {
    const auto [a, b] = qudit_encode(r, p);
    out(r) = state[a * p + b];
  }
  return PureState({p * p}, std::move(out));
}

PureState apply_holonomy(const ProjectiveOperator& g, const PureState& state, Encoding enc) {
  if (state.size() != g.dim()) throw Error(ErrorKind::ShapeMismatch, "operator and state sizes differ");
  if (enc == Encoding::Standard) return PureState(state.dims(), g.lift() * state.coeffs());
  const int p = state.dims().front();
  if (state.dims() != std::vector<int>{p, p}) throw Error(ErrorKind::ShapeMismatch, "qudit encoding needs dims [p,p]");
  const PureState q = pp_to_qudit(state, p);
  return qudit_to_pp(PureState(q.dims(), g.lift() * q.coeffs()), p);
}

SpinChainParams::SpinChainParams(double j, double d, double theta, int branch)
    : j_coupling(j), delta(d), theta_u(theta), branch_offset(branch) {
  if (!(j > 0.0) || !(d > j)) throw Error(ErrorKind::OutOfRange, "need delta > J > 0");
  if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) throw Error(ErrorKind::OutOfRange, "theta_u must lie in [0, 2 pi)");
  if (branch < 0 || branch > 3) throw Error(ErrorKind::OutOfRange, "branch offset must be in {0,1,2,3}");
}

Complex SpinChainParams::quarter_root() const {
  return std::polar(1.0, (theta_u + 2.0 * std::numbers::pi * branch_offset) / 4.0);
}

CMatrix spin_hamiltonian(const SpinChainParams& params) {
  const Complex w = params.quarter_root();
  CMatrix h = CMatrix::Zero(4, 4);
  h(0, 1) = -params.j_coupling * w;
  h(1, 0) = -params.j_coupling / w;
  h(2, 2) = params.delta;
  h(3, 3) = params.delta;
  return h;
}

PureState ground_state(const SpinChainParams& params) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(spin_hamiltonian(params));
  CVector v = eig.eigenvectors().col(0);
  v /= v(1) / std::abs(v(1));
  return PureState({4}, v.normalized());
}

PureState glue_ground_state(const SpinChainParams& params) {
  const ProjectiveOperator x_inv(weyl_ops(4).x_op.inverse());
  return apply_holonomy(x_inv, ground_state(params));
}

}  // namespace egeo
