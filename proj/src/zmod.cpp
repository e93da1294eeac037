#include "egeo/zmod.hpp"

#include <stdexcept>
#include <utility>

#include "egeo/common.hpp"

namespace egeo::zmod {

Int reduce(Int x, Int m) {
  x %= m;
  return x < 0 ? x + m : x;
}

Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) a = std::exchange(b, a % b);
  return a;
}

Int lcm(Int a, Int b) { return a / gcd(a, b) * b; }

namespace {

struct Bezout {
  Int g, s, t;  // s a + t b = g
};

Bezout extended_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  return {old_r, old_s, old_t};
}

// Modular inverse of a unit a in Z/n.
Int inverse(Int a, Int n) {
  const Bezout e = extended_gcd(reduce(a, n), n);
  if (e.g != 1) throw Error(ErrorKind::OutOfRange, "not a unit");
  return reduce(e.s, n);
}

// Replaces (x, y) by (s x + t y, c x + d y) with [[s, t], [c, d]] unimodular.
template <typename RowOrCol>
void combine(RowOrCol x, RowOrCol y, Int s, Int t, Int c, Int d, Int m) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const Int xk = x(k), yk = y(k);
    x(k) = reduce(s * xk + t * yk, m);
    y(k) = reduce(c * xk + d * yk, m);
  }
}

// Coefficients that turn (a, b) into (gcd, 0).
void clearing_coefficients(Int a, Int b, Int& s, Int& t, Int& c, Int& d) {
  if (b % a == 0) {
    s = 1, t = 0, c = -(b / a), d = 1;
    return;
  }
  const Bezout e = extended_gcd(a, b);
  s = e.s, t = e.t, c = -(b / e.g), d = a / e.g;
}

}  // namespace

SmithForm smith_form(const IMatrix& a, Int m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "modulus must be positive");
  const Eigen::Index rows = a.rows(), cols = a.cols();
  SmithForm f{m, IMatrix::Identity(rows, rows), IMatrix::Identity(cols, cols), a.unaryExpr([m](Int x) { return reduce(x, m); })};
  IMatrix& d = f.diag;

  for (Eigen::Index k = 0; k < std::min(rows, cols); ++k) {
    // Pivot: the entry generating the largest ideal, i.e. smallest gcd with m.
    Eigen::Index pr = -1, pc = -1;
    Int best = m + 1;
    for (Eigen::Index i = k; i < rows; ++i)
      for (Eigen::Index j = k; j < cols; ++j)
        if (d(i, j) != 0 && gcd(d(i, j), m) < best) best = gcd(d(i, j), m), pr = i, pc = j;
    if (pr < 0) break;
    d.row(k).swap(d.row(pr));
    f.left.row(k).swap(f.left.row(pr));
    d.col(k).swap(d.col(pc));
    f.right.col(k).swap(f.right.col(pc));

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (Eigen::Index i = k + 1; i < rows; ++i) {
        if (d(i, k) == 0) continue;
        Int s, t, c, e;
        clearing_coefficients(d(k, k), d(i, k), s, t, c, e);
        combine(d.row(k), d.row(i), s, t, c, e, m);
        combine(f.left.row(k), f.left.row(i), s, t, c, e, m);
      }
      for (Eigen::Index j = k + 1; j < cols; ++j) {
        if (d(k, j) == 0) continue;
        Int s, t, c, e;
        clearing_coefficients(d(k, k), d(k, j), s, t, c, e);
        combine(d.col(k), d.col(j), s, t, c, e, m);
        combine(f.right.col(k), f.right.col(j), s, t, c, e, m);
        dirty = true;
      }
      if (dirty) {
        // Column operations may have refilled column k below the pivot.
        bool column_clear = true;
        for (Eigen::Index i = k + 1; i < rows; ++i) column_clear = column_clear && d(i, k) == 0;
        dirty = !column_clear;
      }
    }
  }
  return f;
}

std::optional<IVector> solve(const SmithForm& f, const IVector& rhs) {
  const Int m = f.m;
  const IVector w = (f.left * rhs).unaryExpr([m](Int x) { return reduce(x, m); });
  const Eigen::Index rows = f.diag.rows(), cols = f.diag.cols();
  IVector y = IVector::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Int di = i < cols ? f.diag(i, i) : 0;
    const Int g = gcd(di, m);  // gcd(0, m) = m
    if (w(i) % g != 0) return std::nullopt;
    if (di == 0) continue;
    const Int n = m / g;
    y(i) = n == 1 ? 0 : reduce((w(i) / g) * inverse(di / g, n), n);
  }
  IVector b = (f.right * y).unaryExpr([m](Int x) { return reduce(x, m); });
  return b;
}

std::optional<IVector> solve(const IMatrix& a, const IVector& rhs, Int m) {
  if (rhs.size() != a.rows()) throw Error(ErrorKind::ShapeMismatch, "right-hand side length differs from row count");
  return solve(smith_form(a, m), rhs);
}

}  // namespace egeo::zmod
