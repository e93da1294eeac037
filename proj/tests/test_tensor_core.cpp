#include <doctest.h>

#include <cmath>

#include "egeo/states.hpp"
#include "repro/oracles.hpp"

using namespace egeo;

namespace {

const double kHalfRoot = 1.0 / std::sqrt(2.0);

PureState two_qubit(Complex a, Complex b, Complex c, Complex d) {
  CVector v(4);
  v << a, b, c, d;
  return PureState({2, 2}, v);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("make_state validates and does not normalize") {
  const PureState bell = states::bell();
  CHECK(bell.dims() == std::vector<int>{2, 2});
  CHECK(bell.norm() == doctest::Approx(1.0));

  const PureState q = make_state({2}, CVector::Unit(2, 0));
  CHECK(q.subsystems() == 1);

  CHECK(kind_of([] { make_state({2, 2}, CVector::Zero(4)); }) == ErrorKind::ZeroState);
  CHECK(kind_of([] { make_state({2, 2}, CVector::Ones(3)); }) == ErrorKind::ShapeMismatch);

  const PureState scaled = make_state({2}, CVector::Constant(2, Complex(3.0, 0.0)));
  CHECK(scaled.norm() == doctest::Approx(3.0 * std::sqrt(2.0)));
}

TEST_CASE("flatten reindexes without arithmetic") {
  SUBCASE("bell") {
    const CMatrix f = flatten(states::bell(), Bipartition(2, {0})).entries;
    CHECK((f - kHalfRoot * CMatrix::Identity(2, 2)).norm() < 1e-15);
  }
  SUBCASE("two-qubit entries") {
    const PureState s = two_qubit(1.0, 2.0, 3.0, 4.0);
    const CMatrix f = flatten(s, Bipartition(2, {0})).entries;
    CHECK(f(0, 0) == Complex(1.0));
    CHECK(f(0, 1) == Complex(2.0));
    CHECK(f(1, 0) == Complex(3.0));
    CHECK(f(1, 1) == Complex(4.0));
  }
  SUBCASE("product is an outer product") {
    oracle::Rng rng(1);
    const PureState u = oracle::random_state({3}, rng), v = oracle::random_state({2}, rng);
    const CMatrix f = flatten(tensor_product(u, v), Bipartition(2, {0})).entries;
    CHECK((f - u.coeffs() * v.coeffs().transpose()).norm() < 1e-14);
  }
  SUBCASE("non-contiguous block") {
    // Entry (alpha, beta) merges alpha over {0,2} and beta over {1}.
    CVector c(8);
    for (int i = 0; i < 8; ++i) c(i) = i;
    const CMatrix f = flatten(PureState({2, 2, 2}, c), Bipartition(3, {0, 2})).entries;
    REQUIRE(f.rows() == 4);
    for (int a0 = 0; a0 < 2; ++a0)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b1 = 0; b1 < 2; ++b1) CHECK(f(a0 * 2 + a2, b1) == Complex(a0 * 4 + b1 * 2 + a2));
  }
}

TEST_CASE("numerical_rank examples") {
  CHECK(numerical_rank(flatten(states::bell(), Bipartition(2, {0}))) == 2);
  CHECK(numerical_rank(CMatrix(CVector::Ones(3) * CVector::Ones(2).transpose())) == 1);
  CHECK(numerical_rank(flatten(two_qubit(1.0, 0.0, 0.0, 1e-3), Bipartition(2, {0}))) == 2);
  CHECK(numerical_rank(flatten(two_qubit(1.0, 0.0, 0.0, 0.0), Bipartition(2, {0}))) == 1);
}

TEST_CASE("minor_rank examples") {
  CMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 6.0;
  CHECK(minor_rank(m) == 1);
  CHECK(minor_rank(CMatrix(CMatrix::Identity(3, 3))) == 3);
  oracle::Rng rng(7);
  const CMatrix r2 = oracle::random_rank_matrix(4, 4, 2, rng);
  CHECK(minor_rank(r2) == 2);
  CHECK(numerical_rank(r2) == 2);
  CHECK(kind_of([] { minor_rank(CMatrix(CMatrix::Identity(9, 9))); }) == ErrorKind::TooLarge);
}

TEST_CASE("numerical_rank equals minor_rank on random flattenings") {
  oracle::Rng rng(11);
  std::uniform_int_distribution<int> n_d(2, 4), d_d(2, 4);
  int checked = 0;
  while (checked < 200) {
    const int n = n_d(rng);
    std::vector<int> dims;
    for (int i = 0; i < n; ++i) dims.push_back(d_d(rng));
    PureState psi = oracle::random_state(dims, rng);
    if (checked % 2) psi = oracle::random_block_product(dims, oracle::random_partition(n, rng), rng);
    for (const auto& cut : std::vector<Bipartition>{Bipartition(n, {0}), Bipartition(n, {n - 1})}) {
      const FlatteningMatrix f = flatten(psi, cut);
      if (f.entries.rows() > 8 || f.entries.cols() > 8) continue;
      CHECK(numerical_rank(f) == minor_rank(f));
      ++checked;
    }
  }
}

TEST_CASE("schmidt decomposition") {
  const Bipartition cut(2, {0});
  SUBCASE("bell") {
    const auto sd = schmidt_decompose(states::bell(), cut);
    REQUIRE(sd.rank() == 2);
    CHECK(sd.sigmas(0) == doctest::Approx(kHalfRoot).epsilon(1e-14));
    CHECK(sd.sigmas(1) == doctest::Approx(kHalfRoot).epsilon(1e-14));
  }
  SUBCASE("product") {
    const auto sd = schmidt_decompose(states::basis({2, 3}, {1, 2}), cut);
    REQUIRE(sd.rank() == 1);
    CHECK(sd.sigmas(0) == doctest::Approx(1.0));
  }
  SUBCASE("unequal weights") {
    const auto sd = schmidt_decompose(two_qubit(1.0, 0.0, 0.0, 2.0), cut);
    REQUIRE(sd.rank() == 2);
    CHECK(sd.sigmas(0) == doctest::Approx(2.0 / std::sqrt(5.0)));
    CHECK(sd.sigmas(1) == doctest::Approx(1.0 / std::sqrt(5.0)));
    CHECK(sd.scale == doctest::Approx(std::sqrt(5.0)));
  }
  SUBCASE("properties on random states") {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const PureState psi(std::vector<int>{3, 2, 2}, oracle::random_vector(12, rng) * 4.0);
      const Bipartition c(3, {trial % 3});
      const auto sd = schmidt_decompose(psi, c);
      CHECK(sd.sigmas.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK((sd.reassemble() - flatten(psi.normalized(), c).entries).norm() < 1e-9);
      CHECK(sd.rank() == numerical_rank(flatten(psi, c)));
      for (int k = 0; k + 1 < sd.rank(); ++k) CHECK(sd.sigmas(k) >= sd.sigmas(k + 1));
      // Phase convention: first nonvanishing left component is real positive.
      for (int k = 0; k < sd.rank(); ++k) {
        Eigen::Index i = 0;
        while (std::abs(sd.left_vecs(i, k)) <= 1e-12) ++i;
        CHECK(std::abs(sd.left_vecs(i, k).imag()) < 1e-12);
        CHECK(sd.left_vecs(i, k).real() > 0.0);
      }
    }
  }
}

TEST_CASE("scale invariance of rank and membership") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState psi = oracle::random_block_product({2, 3, 2}, oracle::random_partition(3, rng), rng);
    const Complex lambda = oracle::random_complex(rng) * 1e3;
    const PureState scaled(psi.dims(), psi.coeffs() * lambda);
    for (const auto& cut : {Bipartition(3, {0}), Bipartition(3, {1}), Bipartition(3, {2})})
      CHECK(numerical_rank(flatten(psi, cut)) == numerical_rank(flatten(scaled, cut)));
  }
  const PureState p = states::basis({2, 2}, {0, 1});
  CHECK(concurrence(PureState(p.dims(), p.coeffs() * Complex(0.0, 5.0))) == doctest::Approx(0.0));
}

TEST_CASE("local invertible invariance of the flattening rank") {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 3;
    const CMatrix m = oracle::random_rank_matrix(3, 4, k, rng);
    const CMatrix ga = oracle::random_rank_matrix(3, 3, 3, rng), gb = oracle::random_rank_matrix(4, 4, 4, rng);
    CVector v(12);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 4; ++b) v(a * 4 + b) = m(a, b);
    const PureState psi({3, 4}, v);
    const PureState moved({3, 4}, kron(ga, gb) * v);
    CHECK(numerical_rank(flatten(moved, Bipartition(2, {0}))) == numerical_rank(flatten(psi, Bipartition(2, {0}))));
  }
}

TEST_CASE("concurrence") {
  CHECK(concurrence(states::bell()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(states::basis({2, 2}, {1, 0})) == doctest::Approx(0.0));
  const PureState three = two_qubit(1.0, 1.0, 1.0, 0.0);
  CHECK(concurrence(three.normalized()) == doctest::Approx(2.0 / 3.0));
  CHECK(kind_of([] { concurrence(states::basis({2, 3}, {0, 0})); }) == ErrorKind::WrongShape);
}

TEST_CASE("cofactor matrix") {
  const Eigen::Matrix3d rank1 = Eigen::Vector3d(1, 2, 3) * Eigen::RowVector3d(4, -1, 2);
  CHECK((cofactor_matrix(rank1).array() == 0.0).all());
  CHECK(cofactor_matrix(Eigen::Matrix3d::Identity()).isApprox(Eigen::Matrix3d::Identity()));
  const Eigen::Matrix3d d = Eigen::Vector3d(1, 1, 0).asDiagonal();
  CHECK(cofactor_matrix(d).isApprox(Eigen::Matrix3d(Eigen::Vector3d(0, 0, 1).asDiagonal())));
  CHECK(kind_of([] { cofactor_matrix(CMatrix(2, 3)); }) == ErrorKind::NotSquare);

  // cofactor = 0 iff minor_rank <= n - 2, on constructions of every rank.
  oracle::Rng rng(13);
  for (int rank = 0; rank <= 3; ++rank) {
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix m = oracle::random_rank_matrix(3, 3, rank, rng);
      const bool vanishes = cofactor_matrix(m).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, m.squaredNorm());
      CHECK(vanishes == (rank <= 1));
      if (rank > 0) CHECK(vanishes == (minor_rank(m) <= 1));
    }
  }
}

TEST_CASE("incidence lift") {
  oracle::Rng rng(17);
  SUBCASE("rank two in 3x3") {
    const CMatrix m = oracle::random_rank_matrix(3, 3, 2, rng);
    CVector v(9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) v(a * 3 + b) = m(a, b);
    const PureState psi({3, 3}, v);
    const auto lift = incidence_lift(psi, Bipartition(2, {0}));
    CHECK(lift.k() == 2);
    CHECK((lift.reassemble() - m).norm() / m.norm() < 1e-9);
    // The span is basis independent: its projector matches one built from m's columns.
    CHECK((span_projector(lift.ua_basis) - span_projector(m)).norm() < 1e-9);
  }
  SUBCASE("W state image") {
    const auto lift = incidence_lift(states::w3(), Bipartition(3, {0}));
    REQUIRE(lift.k() == 2);
    CMatrix expected = CMatrix::Zero(4, 2);
    expected(0, 0) = 1.0;                   // |00>
    expected(1, 1) = expected(2, 1) = 1.0;  // |01> + |10>
    CHECK((span_projector(lift.ub_basis) - span_projector(expected)).norm() < 1e-9);
  }
  SUBCASE("product state") {
    const auto lift = incidence_lift(states::basis({2, 2, 2}, {0, 1, 1}), Bipartition(3, {1}));
    CHECK(lift.k() == 1);
    CHECK(lift.core.rows() == 1);
  }
  SUBCASE("factor extraction on fully product states") {
    for (int trial = 0; trial < 10; ++trial) {
      const PureState a = oracle::random_state({2}, rng), b = oracle::random_state({3}, rng);
      const auto lift = incidence_lift(tensor_product(a, b), Bipartition(2, {0}));
      REQUIRE(lift.k() == 1);
      CHECK(std::abs(lift.ua_basis.col(0).dot(a.coeffs())) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(std::abs(lift.ub_basis.col(0).dot(b.coeffs())) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("sector decomposition") {
  SUBCASE("traceless local term") {
    CMatrix a(2, 2);
    a << 1.0, 2.0, 3.0, -1.0;
    const auto s = sector_decompose(kron(a, CMatrix::Identity(3, 3)), 2, 3);
    CHECK(std::abs(s.scalar) < 1e-14);
    CHECK((s.a_local - a).norm() < 1e-13);
    CHECK(s.b_local.norm() < 1e-13);
    CHECK(s.entangling.norm() < 1e-13);
  }
  SUBCASE("identity") {
    const auto s = sector_decompose(CMatrix::Identity(4, 4), 2, 2);
    CHECK(std::abs(s.scalar - 1.0) < 1e-14);
    CHECK(s.a_local.norm() + s.b_local.norm() + s.entangling.norm() < 1e-13);
  }
  SUBCASE("cnot is entangling") {
    CMatrix cnot = CMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const auto s = sector_decompose(cnot, 2, 2);
    CHECK(s.entangling.norm() > 0.5);
    CHECK((s.reassemble() - cnot).norm() < 1e-10);
  }
  SUBCASE("invariants on random operators") {
    oracle::Rng rng(19);
    const CMatrix op = oracle::random_rank_matrix(6, 6, 6, rng);
    const auto s = sector_decompose(op, 2, 3);
    CHECK((s.reassemble() - op).norm() < 1e-10);
    CHECK(std::abs(s.a_local.trace()) < 1e-10);
    CHECK(std::abs(s.b_local.trace()) < 1e-10);
    CHECK(partial_trace_a(s.entangling, 2, 3).norm() < 1e-10);
    CHECK(partial_trace_b(s.entangling, 2, 3).norm() < 1e-10);
  }
  CHECK(kind_of([] { sector_decompose(CMatrix::Identity(5, 5), 2, 3); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("tensor product and subsystem permutation") {
  oracle::Rng rng(23);
  const PureState a = oracle::random_state({2}, rng), b = oracle::random_state({3}, rng);
  const PureState ab = tensor_product(a, b);
  const std::vector<int> swap{1, 0};
  const PureState ba = permute_subsystems(ab, swap);
  CHECK(ba.dims() == std::vector<int>{3, 2});
  CHECK((ba.coeffs() - tensor_product(b, a).coeffs()).norm() < 1e-15);
}

TEST_CASE("projective distance") {
  const PureState p = states::basis({2}, {0});
  CHECK(projective_distance(p, PureState({2}, p.coeffs() * Complex(0.0, 3.0))) == doctest::Approx(0.0));
  CHECK(projective_distance(p, states::basis({2}, {1})) == doctest::Approx(1.0));
}
