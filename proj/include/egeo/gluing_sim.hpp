#pragma once

// Weyl clock/shift operators, loop holonomy in PGL(m), local-operation
// membership, and the one-magnon spin chain on the torus.

#include <string>
#include <utility>

#include "egeo/tensor_core.hpp"

namespace egeo {

/// Clock and shift on C^m: X|r> = |r+1>, Z|r> = zeta^r |r>, zeta = e^{2 pi i/m}.
struct WeylSystem {
  int m;
  Complex zeta;
  CMatrix x_op;
  CMatrix z_op;
};

WeylSystem weyl_ops(int m);

/// e^{2 pi i k / m}
Complex root_of_unity(int m, long k = 1);

/// A GL lift of an element of PGL(m).  Lifts built by this module are
/// normalized to determinant one.
class ProjectiveOperator {
 public:
  explicit ProjectiveOperator(CMatrix lift);

  const CMatrix& lift() const noexcept { return lift_; }
  int dim() const noexcept { return static_cast<int>(lift_.rows()); }

  /// Equal in PGL: after scaling each lift by its max-modulus entry, entries
  /// agree within tol.
  bool projectively_equal(const ProjectiveOperator& other, double tol = 1e-9) const;
  /// Lift is a multiple of the identity.
  bool is_scalar(double tol = 1e-9) const;

 private:
  CMatrix lift_;
};

/// g / c with c^m = det g, arg c in [0, 2 pi / m).
CMatrix normalize_det(const CMatrix& g);

struct HolonomyConfig {
  int p = 2;                    // m = p^2
  Complex u0{1.0, 0.0};         // base point on the unit torus
  Complex v0{1.0, 0.0};
  std::string loop_word = "u";  // letters u, v and inverses U, V
  int branch = 0;               // u0^{1/m} taken as zeta^branch times the principal root

  int m() const noexcept { return p * p; }
};

/// Word product, read left to right, of the gauge elements
/// u -> [y(u0, v0)] = [v0^{1/m} Z], v -> [x(u0, v0)^{-1}] = [u0^{-1/m} X^{-1}],
/// capital letters -> inverses.  The branch only rescales lifts, so the
/// projective class does not depend on it.
ProjectiveOperator loop_holonomy(const HolonomyConfig& cfg);

/// The scalar g h g^{-1} h^{-1}, scaled to modulus one.  Throws NotCentral
/// when the group commutator is not scalar.
Complex commutator_scalar(const CMatrix& g, const CMatrix& h, double tol = 1e-9);

/// Rearranges an operator on C^{d_a} ⊗ C^{d_b} into the d_a^2 x d_b^2 matrix
/// R[(i,j),(k,l)] = g[(i,k),(j,l)], so that g = A ⊗ B iff R = vec(A) vec(B)^T.
CMatrix realign(const CMatrix& g, int d_a, int d_b);

/// The factor swap on C^d ⊗ C^d.
CMatrix swap_operator(int d);

/// Membership in the stabilizer of the Segre variety: some lift is A ⊗ B, or
/// (A ⊗ B) SWAP when d_a == d_b.
bool is_local_operator(const ProjectiveOperator& g, int d_a, int d_b, double tol = kRankTol);

/// r = a + p b
std::pair<int, int> qudit_encode(int r, int p);

/// Reads a vector on C^{p^2} in the basis |r> as a state on C^p ⊗ C^p with
/// |a>_A ⊗ |b>_B <-> |a + p b>.
PureState qudit_to_pp(const PureState& state, int p);
/// Inverse of qudit_to_pp.
PureState pp_to_qudit(const PureState& state, int p);

enum class Encoding {
  Standard,  // coefficient order of the state as given
  QuditPP,   // state on [p, p]; g acts on the |a + p b> basis
};

/// g psi.
PureState apply_holonomy(const ProjectiveOperator& g, const PureState& state, Encoding enc = Encoding::Standard);

struct SpinChainParams {
  double j_coupling = 1.0;
  double delta = 2.0;
  double theta_u = 0.0;
  int branch_offset = 0;

  SpinChainParams() = default;
  SpinChainParams(double j, double d, double theta, int branch);

  /// u^{1/4} = e^{i (theta_u + 2 pi k) / 4}
  Complex quarter_root() const;
};

/// One-magnon restriction of the hopping-plus-penalty Hamiltonian on the basis |0>..|3>.
CMatrix spin_hamiltonian(const SpinChainParams& params);

/// Normalized eigenvector of energy -J on C^4, phase-fixed so the |1>
/// coefficient is real positive.
PureState ground_state(const SpinChainParams& params);

/// X^{-1} applied to ground_state, still on the |r> basis of C^4.
PureState glue_ground_state(const SpinChainParams& params);

}  // namespace egeo
