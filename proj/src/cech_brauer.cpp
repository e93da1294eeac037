#include "egeo/cech_brauer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace egeo {

namespace {

template <std::size_t N>
std::string tuple_string(const std::array<int, N>& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < N; ++k) os << (k ? "," : "") << t[k];
  os << ')';
  return os.str();
}

bool is_scalar_matrix(const CMatrix& p, Complex& scalar, double tol) {
  scalar = p.trace() / static_cast<double>(p.rows());
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  return (p - scalar * CMatrix::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff() <= tol * scale;
}

// Smallest order o <= max_order with s^o = 1 within tol, or 0.
int root_order(Complex s, double tol, int max_order = 4096) {
  const double turns = std::arg(s) / (2.0 * std::numbers::pi);
  for (int o = 1; o <= max_order; ++o) {
    const double x = turns * o;
    if (std::abs(std::polar(1.0, 2.0 * std::numbers::pi * (x - std::round(x))) - 1.0) <= tol * o) return o;
  }
  return 0;
}

CMatrix matrix_power(const CMatrix& g, int k) {
  CMatrix base = k >= 0 ? g : CMatrix(g.inverse());
  CMatrix out = CMatrix::Identity(g.rows(), g.cols());
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

}  // namespace

bool CechCover::has_pair(int i, int j) const {
  return i == j || transitions.count({i, j}) > 0 || transitions.count({j, i}) > 0;
}

CMatrix CechCover::lift(int i, int j) const {
  if (i == j) return CMatrix::Identity(n, n);
  if (auto it = transitions.find({i, j}); it != transitions.end()) return it->second;
  if (auto it = transitions.find({j, i}); it != transitions.end()) return it->second.inverse();
  throw Error(ErrorKind::BadNerve, "no overlap " + tuple_string(Pair{i, j}));
}

std::vector<Pair> CechCover::pairs() const {
  std::set<Pair> out;
  for (const auto& [key, _] : transitions) out.insert({std::min(key[0], key[1]), std::max(key[0], key[1])});
  return {out.begin(), out.end()};
}

void validate_nerve(const CechCover& cover) {
  if (cover.n < 1) throw Error(ErrorKind::BadNerve, "lift size must be positive");
  const auto in_range = [&](int i) { return i >= 0 && i < cover.chart_count; };
  for (const auto& [key, g] : cover.transitions) {
    if (!in_range(key[0]) || !in_range(key[1]) || key[0] == key[1])
      throw Error(ErrorKind::BadNerve, "bad pair " + tuple_string(key));
    if (g.rows() != cover.n || g.cols() != cover.n)
      throw Error(ErrorKind::BadNerve, "lift on " + tuple_string(key) + " has the wrong size");
    const double scale = g.cwiseAbs().maxCoeff();
    if (scale == 0.0 || std::abs((g / scale).determinant()) <= 1e-12)
      throw Error(ErrorKind::BadNerve, "lift on " + tuple_string(key) + " is not invertible");
    if (auto rev = cover.transitions.find({key[1], key[0]}); rev != cover.transitions.end()) {
      Complex s;
      if (!is_scalar_matrix(g * rev->second, s, 1e-9))
        throw Error(ErrorKind::BadNerve, "lifts on " + tuple_string(key) + " and its reverse are not inverse");
    }
  }
  std::set<Triple> triples;
  for (const auto& t : cover.triples) {
    if (!(t[0] < t[1] && t[1] < t[2]) || !in_range(t[0]) || !in_range(t[2]))
      throw Error(ErrorKind::BadNerve, "triple " + tuple_string(t) + " is not a sorted tuple of charts");
    for (auto [a, b] : {std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}})
      if (!cover.has_pair(a, b)) throw Error(ErrorKind::BadNerve, "triple " + tuple_string(t) + " lacks a face");
    triples.insert(t);
  }
  for (const auto& q : cover.quads) {
    if (!(q[0] < q[1] && q[1] < q[2] && q[2] < q[3]) || !in_range(q[0]) || !in_range(q[3]))
      throw Error(ErrorKind::BadNerve, "quadruple " + tuple_string(q) + " is not a sorted tuple of charts");
    for (const Triple& f : {Triple{q[1], q[2], q[3]}, Triple{q[0], q[2], q[3]}, Triple{q[0], q[1], q[3]},
                            Triple{q[0], q[1], q[2]}})
      if (!triples.count(f)) throw Error(ErrorKind::BadNerve, "quadruple " + tuple_string(q) + " lacks a face");
  }
}

int Cocycle2::at(const Triple& t) const {
  auto it = values.find(t);
  return it == values.end() ? 0 : it->second;
}

Cocycle2 pgl_cocycle_defect(const CechCover& cover, double tol) {
  std::vector<Complex> scalars;
  for (const auto& t : cover.triples) {
    const CMatrix prod = cover.lift(t[0], t[1]) * cover.lift(t[1], t[2]) * cover.lift(t[2], t[0]);
    Complex s;
    if (!is_scalar_matrix(prod, s, tol))
      throw Error(ErrorKind::NotPGLCocycle, "triple product on " + tuple_string(t) + " is not scalar");
    if (std::abs(std::abs(s) - 1.0) > tol)
      throw Error(ErrorKind::NotRootOfUnity, "scalar on " + tuple_string(t) + " has modulus " +
                                                 std::to_string(std::abs(s)));
    scalars.push_back(s);
  }

  zmod::Int m = cover.m;
  if (m <= 0) {
    m = 1;
    for (std::size_t k = 0; k < scalars.size(); ++k) {
      const int o = root_order(scalars[k], tol);
      if (o == 0)
        throw Error(ErrorKind::NotRootOfUnity, "scalar on " + tuple_string(cover.triples[k]) + " has no small order");
      m = zmod::lcm(m, o);
    }
  }

  Cocycle2 c;
  c.m = static_cast<int>(m);
  for (std::size_t k = 0; k < scalars.size(); ++k) {
    const double turns = std::arg(scalars[k]) / (2.0 * std::numbers::pi) * static_cast<double>(m);
    const auto e = static_cast<zmod::Int>(std::llround(turns));
    if (std::abs(scalars[k] - root_of_unity(c.m, zmod::reduce(e, m))) > tol)
      throw Error(ErrorKind::NotRootOfUnity,
                  "scalar on " + tuple_string(cover.triples[k]) + " is not in mu_" + std::to_string(m));
    c.values[cover.triples[k]] = static_cast<int>(zmod::reduce(e, m));
  }
  return c;
}

bool is_2cocycle(const Cocycle2& c, const CechCover& cover) {
  for (const auto& q : cover.quads) {
    const auto [i, j, k, l] = q;
    const long v = static_cast<long>(c.at({i, j, k})) - c.at({i, j, l}) + c.at({i, k, l}) - c.at({j, k, l});
    if (zmod::reduce(v, c.m) != 0) return false;
  }
  return true;
}

namespace {

// Rows: triples; columns: sorted pairs; (delta b)_ijk = b_jk - b_ik + b_ij.
zmod::IMatrix coboundary_matrix(const CechCover& cover, const std::vector<Pair>& pairs) {
  std::map<Pair, Eigen::Index> col;
  for (std::size_t k = 0; k < pairs.size(); ++k) col[pairs[k]] = static_cast<Eigen::Index>(k);
  zmod::IMatrix a = zmod::IMatrix::Zero(static_cast<Eigen::Index>(cover.triples.size()),
                                        static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t r = 0; r < cover.triples.size(); ++r) {
    const auto [i, j, k] = cover.triples[r];
    const auto row = static_cast<Eigen::Index>(r);
    a(row, col.at({j, k})) += 1;
    a(row, col.at({i, k})) -= 1;
    a(row, col.at({i, j})) += 1;
  }
  return a;
}

zmod::IVector cochain_vector(const Cocycle2& c, const CechCover& cover, zmod::Int scale) {
  zmod::IVector w(static_cast<Eigen::Index>(cover.triples.size()));
  for (std::size_t r = 0; r < cover.triples.size(); ++r)
    w(static_cast<Eigen::Index>(r)) = zmod::reduce(scale * c.at(cover.triples[r]), c.m);
  return w;
}

}  // namespace

std::optional<std::map<Pair, int>> coboundary_primitive(const Cocycle2& c, const CechCover& cover) {
  const auto pairs = cover.pairs();
  const auto b = zmod::solve(coboundary_matrix(cover, pairs), cochain_vector(c, cover, 1), c.m);
  if (!b) return std::nullopt;
  std::map<Pair, int> out;
  for (std::size_t k = 0; k < pairs.size(); ++k) out[pairs[k]] = static_cast<int>((*b)(static_cast<Eigen::Index>(k)));
  return out;
}

int class_order(const Cocycle2& c, const CechCover& cover) {
  if (!is_2cocycle(c, cover)) throw Error(ErrorKind::NotCocycle, "cochain violates the 2-cocycle identity");
  const auto pairs = cover.pairs();
  const zmod::SmithForm snf = zmod::smith_form(coboundary_matrix(cover, pairs), c.m);
  for (int l = 1; l <= c.m; ++l) {
    if (c.m % l != 0) continue;
    if (zmod::solve(snf, cochain_vector(c, cover, l))) return l;
  }
  return c.m;  // unreachable: m * c = 0
}

CechCover rescale_lifts(const CechCover& cover, const std::map<Pair, int>& b, int m) {
  CechCover out = cover;
  for (auto& [key, g] : out.transitions) {
    const Pair sorted{std::min(key[0], key[1]), std::max(key[0], key[1])};
    auto it = b.find(sorted);
    if (it == b.end()) continue;
    // A stored reverse orientation (j, i) carries the inverse scalar.
    const long e = key[0] < key[1] ? -it->second : it->second;
    g *= root_of_unity(m, zmod::reduce(e, m));
  }
  return out;
}

long torsion_bound(const std::vector<int>& dims) {
  long l = 1;
  for (int d : dims) {
    if (d < 2) throw Error(ErrorKind::OutOfRange, "subsystem dimensions must be at least 2");
    l = zmod::lcm(l, d);
  }
  return l;
}

ReductionReport check_reduction(const CechCover& cover, int d_a, int d_b, double tol) {
  if (cover.n != d_a * d_b) throw Error(ErrorKind::ShapeMismatch, "cover lift size must equal d_a * d_b");
  ReductionReport r;
  r.torsion_bound = torsion_bound({d_a, d_b});
  for (const auto& [key, g] : cover.transitions) {
    const bool local = is_local_operator(ProjectiveOperator(g), d_a, d_b, tol);
    r.local.emplace_back(key, local);
    r.reducible = r.reducible && local;
  }
  return r;
}

CechCover weyl_torus_cover(const CMatrix& clock, const CMatrix& shift_inv, int m, const TorusCoverOptions& opts) {
  if (clock.rows() != shift_inv.rows()) throw Error(ErrorKind::ShapeMismatch, "gauge factors differ in size");
  // Branch on arc a relative to arc b on their overlap: +1 across the seam, -1 back.
  const auto jump = [](int seam, int a, int b) {
    if (a == seam && b == (seam + 1) % 3) return 1;
    if (b == seam && a == (seam + 1) % 3) return -1;
    return 0;
  };
  CechCover cover;
  cover.n = static_cast<int>(clock.rows());
  cover.m = m;
  cover.chart_count = 9;
  for (int alpha = 0; alpha < 9; ++alpha) {
    for (int beta = alpha + 1; beta < 9; ++beta) {
      const int s = jump(opts.u_seam, alpha / 3, beta / 3);
      const int t = jump(opts.v_seam, alpha % 3, beta % 3);
      const CMatrix zs = matrix_power(clock, s);
      const CMatrix xs = matrix_power(shift_inv, t);
      cover.transitions[{alpha, beta}] = normalize_det(opts.clock_first ? CMatrix(zs * xs) : CMatrix(xs * zs));
    }
  }
  // A tuple of charts has a common overlap iff it meets at most two u-arcs and
  // at most two v-arcs (three arcs of a circle have empty triple overlap).
  const auto overlaps = [](std::initializer_list<int> charts) {
    std::set<int> us, vs;
    for (int c : charts) us.insert(c / 3), vs.insert(c % 3);
    return us.size() <= 2 && vs.size() <= 2;
  };
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b)
      for (int c = b + 1; c < 9; ++c) {
        if (overlaps({a, b, c})) cover.triples.push_back({a, b, c});
        for (int d = c + 1; d < 9; ++d)
          if (overlaps({a, b, c, d})) cover.quads.push_back({a, b, c, d});
      }
  return cover;
}

CechCover symbol_cover(int p, const TorusCoverOptions& opts) {
  if (p < 2 || p > 5) throw Error(ErrorKind::OutOfRange, "symbol_cover needs 2 <= p <= 5");
  const int m = p * p;
  const WeylSystem w = weyl_ops(m);
  return weyl_torus_cover(w.z_op, w.x_op.inverse(), m, opts);
}

}  // namespace egeo
