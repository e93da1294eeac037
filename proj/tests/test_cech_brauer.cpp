#include <doctest.h>

#include "egeo/cech_brauer.hpp"
#include "repro/oracles.hpp"

using namespace egeo;

namespace {

// Full nerve on `charts` charts (every tuple overlaps) with lifts h_i h_j^{-1} zeta^{r_ij}.
CechCover twisted_honest_cover(int charts, int n, int m, oracle::Rng& rng, std::map<Pair, int>* twist = nullptr) {
  CechCover c;
  c.n = n;
  c.m = m;
  c.chart_count = charts;
  std::vector<CMatrix> h;
  for (int i = 0; i < charts; ++i) h.push_back(normalize_det(oracle::random_rank_matrix(n, n, n, rng)));
  std::uniform_int_distribution<int> e(0, m - 1);
  for (int i = 0; i < charts; ++i)
    for (int j = i + 1; j < charts; ++j) {
      const int r = e(rng);
      if (twist) (*twist)[{i, j}] = r;
      c.transitions[{i, j}] = h[i] * h[j].inverse() * root_of_unity(m, r);
    }
  for (int i = 0; i < charts; ++i)
    for (int j = i + 1; j < charts; ++j)
      for (int k = j + 1; k < charts; ++k) {
        c.triples.push_back({i, j, k});
        for (int l = k + 1; l < charts; ++l) c.quads.push_back({i, j, k, l});
      }
  return c;
}

}  // namespace

TEST_CASE("nerve validation") {
  CechCover two;
  two.n = 2;
  two.chart_count = 2;
  two.transitions[{0, 1}] = CMatrix::Identity(2, 2);
  CHECK_NOTHROW(validate_nerve(two));
  CHECK((two.lift(1, 0) - CMatrix::Identity(2, 2)).norm() < 1e-15);
  CHECK_THROWS_AS(two.lift(0, 2), Error);

  CechCover missing = two;
  missing.chart_count = 3;
  missing.transitions[{1, 2}] = CMatrix::Identity(2, 2);
  missing.triples.push_back({0, 1, 2});
  try {
    validate_nerve(missing);
    FAIL("accepted a triple without its (0,2) face");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadNerve);
  }

  CechCover wrong_size = two;
  wrong_size.transitions[{0, 1}] = CMatrix::Identity(3, 3);
  CHECK_THROWS_AS(validate_nerve(wrong_size), Error);

  for (int p = 2; p <= 5; ++p) {
    const CechCover s = symbol_cover(p);
    CHECK_NOTHROW(validate_nerve(s));
    CHECK(s.chart_count == 9);
    CHECK(s.n == p * p);
    CHECK_FALSE(s.triples.empty());
    CHECK_FALSE(s.quads.empty());
  }
  CHECK_THROWS_AS(symbol_cover(6), Error);
}

TEST_CASE("defect of honest and failed covers") {
  oracle::Rng rng(97);
  // Undoing the twist leaves an honest GL cocycle.
  std::map<Pair, int> twist;
  CechCover twisted = twisted_honest_cover(4, 3, 3, rng, &twist);
  const Cocycle2 c = pgl_cocycle_defect(twisted);
  CHECK(is_2cocycle(c, twisted));
  const CechCover untwisted = rescale_lifts(twisted, twist, 3);
  const Cocycle2 zero = pgl_cocycle_defect(untwisted);
  for (const auto& t : untwisted.triples) CHECK(zero.at(t) == 0);
  CHECK(class_order(zero, untwisted) == 1);

  CechCover bad;
  bad.n = 2;
  bad.chart_count = 3;
  bad.transitions[{0, 1}] = 2.0 * CMatrix::Identity(2, 2);
  bad.transitions[{1, 2}] = CMatrix::Identity(2, 2);
  bad.transitions[{0, 2}] = CMatrix::Identity(2, 2);
  bad.triples.push_back({0, 1, 2});
  try {
    pgl_cocycle_defect(bad);
    FAIL("diag(2) accepted as a root of unity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotRootOfUnity);
  }

  bad.transitions[{0, 1}] = weyl_ops(2).x_op;
  bad.transitions[{1, 2}] = CMatrix::Identity(2, 2);
  bad.transitions[{0, 2}] = weyl_ops(2).z_op;
  try {
    pgl_cocycle_defect(bad);
    FAIL("non-scalar triple product accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPGLCocycle);
  }
}

TEST_CASE("cocycle identity") {
  oracle::Rng rng(101);
  const CechCover cover = twisted_honest_cover(4, 2, 4, rng);
  Cocycle2 zero;
  zero.m = 4;
  CHECK(is_2cocycle(zero, cover));
  CHECK(class_order(zero, cover) == 1);

  Cocycle2 bad = zero;
  bad.values[{0, 1, 2}] = 1;  // only one face of (0,1,2,3) moves
  CHECK_FALSE(is_2cocycle(bad, cover));
  try {
    class_order(bad, cover);
    FAIL("class_order accepted a non-cocycle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCocycle);
  }

  const CechCover sym = symbol_cover(2);
  CHECK(is_2cocycle(pgl_cocycle_defect(sym), sym));
}

TEST_CASE("symbol cover class order") {
  const CechCover sym = symbol_cover(2);
  const Cocycle2 c = pgl_cocycle_defect(sym);
  CHECK(c.m == 4);
  bool nonzero = false;
  for (const auto& t : sym.triples) nonzero = nonzero || c.at(t) != 0;
  CHECK(nonzero);
  CHECK(class_order(c, sym) == 4);
  CHECK_FALSE(coboundary_primitive(c, sym).has_value());

  Cocycle2 doubled = c;
  for (auto& [t, e] : doubled.values) e = (2 * e) % c.m;
  CHECK(class_order(doubled, sym) == 2);
  const auto b = coboundary_primitive(Cocycle2{c.m, [&] {
                                          auto v = c.values;
                                          for (auto& [t, e] : v) e = (4 * e) % c.m;
                                          return v;
                                        }()},
                                      sym);
  CHECK(b.has_value());

  for (int p = 3; p <= 5; ++p) {
    const CechCover s = symbol_cover(p);
    CHECK(class_order(pgl_cocycle_defect(s), s) == p * p);
  }
}

TEST_CASE("seam placement and factor order do not change the class") {
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      for (bool order : {true, false}) {
        const CechCover s = symbol_cover(2, TorusCoverOptions{u, v, order});
        CHECK(class_order(pgl_cocycle_defect(s), s) == 4);
      }
}

TEST_CASE("rescaling lifts is a gauge change") {
  oracle::Rng rng(103);
  const CechCover sym = symbol_cover(2);
  std::uniform_int_distribution<int> e(0, 3);
  for (int trial = 0; trial < 5; ++trial) {
    std::map<Pair, int> r;
    for (const auto& key : sym.pairs()) r[key] = e(rng);
    const CechCover moved = rescale_lifts(sym, r, 4);
    const Cocycle2 c = pgl_cocycle_defect(moved);
    CHECK(is_2cocycle(c, moved));
    CHECK(class_order(c, moved) == 4);
  }

  // A coboundary defect is killed by its own primitive.
  std::map<Pair, int> twist;
  const CechCover cover = twisted_honest_cover(5, 2, 6, rng, &twist);
  const Cocycle2 c = pgl_cocycle_defect(cover);
  const auto b = coboundary_primitive(c, cover);
  REQUIRE(b.has_value());
  const Cocycle2 after = pgl_cocycle_defect(rescale_lifts(cover, *b, c.m));
  for (const auto& t : cover.triples) CHECK(after.at(t) == 0);
}

TEST_CASE("reduction to local operations") {
  const ReductionReport sym = check_reduction(symbol_cover(2), 2, 2);
  CHECK_FALSE(sym.reducible);
  CHECK(sym.torsion_bound == 2);
  CHECK_THROWS_AS(check_reduction(symbol_cover(2), 2, 3), Error);

  CechCover single;
  single.n = 4;
  single.chart_count = 1;
  CHECK(check_reduction(single, 2, 2).reducible);

  // Local clock and shift on C^2 ⊗ C^3: reducible, and the class order divides lcm(2, 3).
  const CMatrix clock = kron(weyl_ops(2).z_op, weyl_ops(3).z_op);
  const CMatrix shift_inv = kron(weyl_ops(2).x_op.inverse(), weyl_ops(3).x_op.inverse());
  const CechCover local = weyl_torus_cover(clock, shift_inv, 6);
  const ReductionReport rep = check_reduction(local, 2, 3);
  CHECK(rep.reducible);
  CHECK(rep.torsion_bound == 6);
  const int order = class_order(pgl_cocycle_defect(local), local);
  CHECK(rep.torsion_bound % order == 0);
}

TEST_CASE("torsion bound") {
  CHECK(torsion_bound({2, 2}) == 2);
  for (int p = 2; p <= 7; ++p) CHECK(torsion_bound({p, p}) == p);
  CHECK(torsion_bound({2, 3}) == 6);
  CHECK(torsion_bound({4, 6, 5}) == 60);
  CHECK_THROWS_AS(torsion_bound({1, 2}), Error);
}
