#include <doctest.h>

#include <numbers>

#include "egeo/gluing_sim.hpp"
#include "egeo/states.hpp"
#include "repro/oracles.hpp"

using namespace egeo;

namespace {

CMatrix mpow(const CMatrix& a, int k) {
  CMatrix r = CMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

int schmidt_rank(const PureState& s) { return numerical_rank(flatten(s, Bipartition(2, {0}))); }

}  // namespace

TEST_CASE("weyl relations") {
  const WeylSystem w2 = weyl_ops(2);
  CMatrix pauli_x(2, 2), pauli_z(2, 2);
  pauli_x << 0.0, 1.0, 1.0, 0.0;
  pauli_z << 1.0, 0.0, 0.0, -1.0;
  CHECK((w2.x_op - pauli_x).norm() < 1e-15);
  CHECK((w2.z_op - pauli_z).norm() < 1e-15);
  CHECK(std::abs(w2.zeta + 1.0) < 1e-15);

  for (int m = 2; m <= 16; ++m) {
    const WeylSystem w = weyl_ops(m);
    const CMatrix id = CMatrix::Identity(m, m);
    CHECK((w.z_op * w.x_op - w.zeta * w.x_op * w.z_op).norm() < 1e-12);
    CHECK((mpow(w.x_op, m) - id).norm() < 1e-12);
    CHECK((mpow(w.z_op, m) - id).norm() < 1e-12);
  }
  const WeylSystem w4 = weyl_ops(4);
  CHECK(std::abs(w4.zeta - Complex(0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(weyl_ops(1), Error);
}

TEST_CASE("loop holonomy words") {
  const WeylSystem w = weyl_ops(4);
  HolonomyConfig cfg;
  cfg.p = 2;

  cfg.loop_word = "u";
  CHECK(loop_holonomy(cfg).projectively_equal(ProjectiveOperator(w.z_op)));
  cfg.loop_word = "v";
  CHECK(loop_holonomy(cfg).projectively_equal(ProjectiveOperator(w.x_op.inverse())));
  cfg.loop_word = "uU";
  CHECK(loop_holonomy(cfg).is_scalar());
  cfg.loop_word = "uvUV";
  const ProjectiveOperator comm = loop_holonomy(cfg);
  CHECK(comm.is_scalar());
  CHECK(std::abs(comm.lift()(0, 0) - std::conj(w.zeta)) < 1e-12);

  cfg.loop_word = "";
  CHECK_THROWS_AS(loop_holonomy(cfg), Error);
  cfg.loop_word = "uxv";
  CHECK_THROWS_AS(loop_holonomy(cfg), Error);
}

TEST_CASE("loop holonomy ignores base point and branch projectively") {
  HolonomyConfig base;
  base.p = 3;
  base.loop_word = "uvVu";
  const ProjectiveOperator ref = loop_holonomy(base);
  for (int branch = 0; branch < 9; ++branch) {
    HolonomyConfig cfg = base;
    cfg.branch = branch;
    cfg.u0 = std::polar(1.0, 0.3 * branch);
    cfg.v0 = std::polar(1.0, 1.1);
    CHECK(loop_holonomy(cfg).projectively_equal(ref));
  }
}

TEST_CASE("commutator scalar conventions") {
  for (int m = 2; m <= 16; ++m) {
    const WeylSystem w = weyl_ops(m);
    CHECK(std::abs(commutator_scalar(w.z_op, w.x_op.inverse()) - std::conj(w.zeta)) < 1e-12);
    CHECK(std::abs(commutator_scalar(w.z_op, w.x_op) - w.zeta) < 1e-12);
    CHECK(std::abs(commutator_scalar(w.x_op, w.z_op) - std::conj(w.zeta)) < 1e-12);
  }
  const WeylSystem w4 = weyl_ops(4);
  CHECK(std::abs(commutator_scalar(w4.z_op, w4.x_op.inverse()) - Complex(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(commutator_scalar(CMatrix::Identity(4, 4), w4.x_op) - 1.0) < 1e-12);
  CMatrix h = CMatrix::Identity(2, 2);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(commutator_scalar(weyl_ops(2).z_op, h), Error);
}

TEST_CASE("local operator membership") {
  oracle::Rng rng(71);
  const CMatrix a = oracle::random_rank_matrix(2, 2, 2, rng), b = oracle::random_rank_matrix(3, 3, 3, rng);
  CHECK(is_local_operator(ProjectiveOperator(kron(a, b)), 2, 3));
  CHECK(is_local_operator(ProjectiveOperator(swap_operator(2)), 2, 2));
  CHECK(is_local_operator(ProjectiveOperator(kron(a, a) * swap_operator(2)), 2, 2));
  const WeylSystem w = weyl_ops(4);
  CHECK_FALSE(is_local_operator(ProjectiveOperator(w.x_op.inverse()), 2, 2));
  // Z on |a + 2b> is diag(1, i, -1, -i) = diag(1, -1) ⊗ diag(1, i) after reordering to |b>|a>.
  CHECK_FALSE(is_local_operator(ProjectiveOperator(oracle::random_rank_matrix(4, 4, 4, rng)), 2, 2));

  // realign turns A ⊗ B into a rank-one matrix.
  CHECK(numerical_rank(realign(kron(a, b), 2, 3)) == 1);

  SUBCASE("conjugation covariance") {
    const std::vector<CMatrix> ops{w.x_op.inverse(), w.z_op, swap_operator(2), kron(a, a), CMatrix(oracle::random_rank_matrix(4, 4, 4, rng))};
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix l = kron(oracle::random_rank_matrix(2, 2, 2, rng), oracle::random_rank_matrix(2, 2, 2, rng));
      for (const auto& g : ops) {
        const bool before = is_local_operator(ProjectiveOperator(g), 2, 2);
        CHECK(is_local_operator(ProjectiveOperator(l * g * l.inverse()), 2, 2) == before);
      }
    }
  }
}

TEST_CASE("qudit encoding") {
  CHECK(qudit_encode(3, 2) == std::pair{1, 1});
  CHECK(qudit_encode(0, 2) == std::pair{0, 0});
  CHECK(qudit_encode(2, 2) == std::pair{0, 1});
  CHECK(qudit_encode(7, 3) == std::pair{1, 2});
  CHECK_THROWS_AS(qudit_encode(4, 2), Error);

  oracle::Rng rng(73);
  const PureState s = oracle::random_state({9}, rng);
  CHECK((pp_to_qudit(qudit_to_pp(s, 3), 3).coeffs() - s.coeffs()).norm() < 1e-15);
  // |3> on C^4 is |1>_A |1>_B.
  CHECK((qudit_to_pp(states::basis({4}, {3}), 2).coeffs() - states::basis({2, 2}, {1, 1}).coeffs()).norm() < 1e-15);
  CHECK((qudit_to_pp(states::basis({4}, {2}), 2).coeffs() - states::basis({2, 2}, {0, 1}).coeffs()).norm() < 1e-15);
}

TEST_CASE("shift inverse entangles a product state") {
  for (int p = 2; p <= 5; ++p) {
    const ProjectiveOperator x_inv(weyl_ops(p * p).x_op.inverse());
    CVector c = CVector::Zero(p * p);
    c(0) = c(p) = 1.0;  // (|0> + |1>)_A ⊗ |0>_B with A the slower index
    const PureState prod({p, p}, c);
    REQUIRE(schmidt_rank(prod) == 1);
    const PureState out = apply_holonomy(x_inv, prod, Encoding::QuditPP);
    CVector expected = CVector::Zero(p * p);
    expected(0) = 1.0;
    expected((p - 1) * p + (p - 1)) = 1.0;
    CHECK(projective_distance(out, PureState({p, p}, expected)) < 1e-7);
    CHECK(schmidt_rank(out) == 2);
  }
  const PureState same = apply_holonomy(ProjectiveOperator(CMatrix::Identity(4, 4)), states::bell(), Encoding::QuditPP);
  CHECK(projective_distance(same, states::bell()) < 1e-7);
}

TEST_CASE("spin chain") {
  const SpinChainParams flat(1.0, 2.0, 0.0, 0);
  const CMatrix h = spin_hamiltonian(flat);
  CHECK(std::abs(h(0, 1) + 1.0) < 1e-15);
  CHECK(std::abs(h(1, 0) + 1.0) < 1e-15);
  CHECK_THROWS_AS(SpinChainParams(1.0, 0.5, 0.0, 0), Error);
  CHECK_THROWS_AS(SpinChainParams(1.0, 2.0, 0.0, 4), Error);

  for (double theta : {0.0, 0.7, 2.5, 6.0}) {
    for (int k = 0; k < 4; ++k) {
      const SpinChainParams params(0.8, 1.9, theta, k);
      const CMatrix hk = spin_hamiltonian(params);
      CHECK((hk - hk.adjoint()).norm() < 1e-12);
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(hk);
      const Eigen::Vector4d expect(-0.8, 0.8, 1.9, 1.9);
      CHECK((eig.eigenvalues() - expect).norm() < 1e-12);

      const Complex w = params.quarter_root();
      const PureState gs = ground_state(params);
      CVector formula = CVector::Zero(4);
      formula(0) = w;
      formula(1) = 1.0;
      CHECK((gs.coeffs() - formula / std::sqrt(2.0)).norm() < 1e-12);
      CHECK(std::abs((gs.coeffs().adjoint() * hk * gs.coeffs())(0, 0) + 0.8) < 1e-12);
      CHECK(schmidt_rank(qudit_to_pp(gs, 2)) == 1);

      const PureState glued = qudit_to_pp(glue_ground_state(params), 2);
      CVector bell_like = CVector::Zero(4);
      bell_like(0) = 1.0;
      bell_like(3) = w;
      CHECK((glued.coeffs() - bell_like / std::sqrt(2.0)).norm() < 1e-12);
      CHECK(schmidt_rank(glued) == 2);
    }
  }

  const PureState bell = qudit_to_pp(glue_ground_state(flat), 2);
  CHECK((bell.coeffs() - states::bell().coeffs()).norm() < 1e-12);

  // Moving one sheet up multiplies the quarter root by i.
  const Complex r0 = SpinChainParams(1.0, 2.0, 1.3, 0).quarter_root();
  const Complex r1 = SpinChainParams(1.0, 2.0, 1.3, 1).quarter_root();
  CHECK(std::abs(r1 - Complex(0.0, 1.0) * r0) < 1e-12);
}

TEST_CASE("normalize_det and projective equality") {
  oracle::Rng rng(79);
  const CMatrix g = oracle::random_rank_matrix(3, 3, 3, rng);
  const CMatrix n = normalize_det(g);
  CHECK(std::abs(n.determinant() - 1.0) < 1e-10);
  CHECK(ProjectiveOperator(g).projectively_equal(ProjectiveOperator(n)));
  CHECK(ProjectiveOperator(g * Complex(0.0, 4.0)).projectively_equal(ProjectiveOperator(g)));
  CHECK_FALSE(ProjectiveOperator(g).projectively_equal(ProjectiveOperator(CMatrix::Identity(3, 3))));
}
