#pragma once

// Finite Čech covers with constant PGL transitions: scalar discrepancy of
// lifted triple products, the 2-cocycle identity, class order over Z/m, and
// reducibility of the structure group to local operations.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "egeo/gluing_sim.hpp"
#include "egeo/zmod.hpp"

namespace egeo {

using Pair = std::array<int, 2>;
using Triple = std::array<int, 3>;
using Quad = std::array<int, 4>;

/// Combinatorial nerve of a cover by contractible charts, with one invertible
/// lift per listed overlap.  Only one orientation of each pair needs a lift;
/// the reverse orientation uses the inverse.
struct CechCover {
  int n = 0;  // lift size
  int m = 0;  // modulus of the scalar discrepancies; 0 = infer
  int chart_count = 0;
  std::map<Pair, CMatrix> transitions;
  std::vector<Triple> triples;  // sorted tuples
  std::vector<Quad> quads;

  /// g~_ij, with g~_ii = I and g~_ji = g~_ij^{-1} when only (i, j) is stored.
  CMatrix lift(int i, int j) const;
  bool has_pair(int i, int j) const;
  /// Overlapping chart pairs as sorted (i < j).
  std::vector<Pair> pairs() const;
};

/// Throws BadNerve naming the first offending tuple.
void validate_nerve(const CechCover& cover);

/// c_ijk = zeta_m^{exponent}; triples absent from `values` carry 0.
struct Cocycle2 {
  int m = 1;
  std::map<Triple, int> values;

  int at(const Triple& t) const;
};

/// Reads off c_ijk from g~_ij g~_jk g~_ki = c_ijk I on every nerve triple.
Cocycle2 pgl_cocycle_defect(const CechCover& cover, double tol = 1e-9);

/// exp_ijk - exp_ijl + exp_ikl - exp_jkl = 0 (mod m) on every quadruple.
bool is_2cocycle(const Cocycle2& c, const CechCover& cover);

/// Values b on the nerve pairs with c_ijk = b_jk - b_ik + b_ij (mod m), if any.
std::optional<std::map<Pair, int>> coboundary_primitive(const Cocycle2& c, const CechCover& cover);

/// Smallest l dividing m with l * c a coboundary.  Throws NotCocycle.
int class_order(const Cocycle2& c, const CechCover& cover);

/// Multiplies each stored lift g~_ij by zeta_m^{-b_ij}; with b from
/// coboundary_primitive every triple product becomes the identity.
CechCover rescale_lifts(const CechCover& cover, const std::map<Pair, int>& b, int m);

/// lcm(d_1, ..., d_r)
long torsion_bound(const std::vector<int>& dims);

struct ReductionReport {
  std::vector<std::pair<Pair, bool>> local;  // per stored transition
  bool reducible = true;
  long torsion_bound = 1;
};

ReductionReport check_reduction(const CechCover& cover, int d_a, int d_b, double tol = kRankTol);

/// Where the branch jumps sit in the 3 x 3 torus grid and in which order the
/// two gauge factors are multiplied.  Any choice yields cohomologous defects.
struct TorusCoverOptions {
  int u_seam = 2;  // jump on the overlap of u-arcs (u_seam, u_seam + 1 mod 3)
  int v_seam = 2;
  bool clock_first = true;
};

/// 3 x 3 grid of product charts over the torus (chart 3 i + j = u-arc i times
/// v-arc j).  Crossing a u-seam contributes clock^{+-1}, crossing a v-seam
/// shift_inv^{+-1}; lifts are normalized to determinant one.
CechCover weyl_torus_cover(const CMatrix& clock, const CMatrix& shift_inv, int m, const TorusCoverOptions& opts = {});

/// The symbol algebra model with m = p^2: clock Z, shift X^{-1}.
CechCover symbol_cover(int p, const TorusCoverOptions& opts = {});

}  // namespace egeo
