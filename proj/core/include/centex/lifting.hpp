#pragma once

#include <optional>
#include <vector>

#include "centex/actions.hpp"
#include "centex/extension.hpp"

namespace centex {

/// Precomputed lifting data for one diamond pair: a solution w of b w = a
/// and the annihilator {v in J^Lambda : b v = 0}. The annihilator is
/// computed both from the generic Howell kernel and from the explicit
/// generating-set construction (torsion generators through the invertible
/// block plus one generator per non-block column); the two must agree.
struct LiftContext {
  CocyclePair pair;
  ModMatrix w;          // nchk x n over J, b w = a
  Submodule annihilator;

  /// Requires n >= 2 and the commutator-generating condition.
  static LiftContext make(const CocyclePair& pr);
  /// Same, with a caller-chosen solution of b w = a.
  static LiftContext make_with_solution(const CocyclePair& pr, ModMatrix w);
};

/// Explicit generating set for the annihilator (the construction used by
/// LiftContext); exposed for testing against the generic kernel.
std::vector<std::vector<i64>> annihilator_generators(const CocyclePair& pr);

enum class LiftCriterion {
  /// Residual columns must vanish in the per-column quotient by the image
  /// of p^{m_i}-multiplication; this is the liftability condition.
  UpToCoboundary,
  /// Residual must vanish identically. Agrees with UpToCoboundary whenever
  /// every exponent of G is at least the top exponent of A.
  Exact,
};

/// Does the endomorphism of G given by x lift to a homomorphism
/// E(src) -> E(dst)? With `require_automorphism`, x must be invertible and
/// the criterion decides lifting to an isomorphism.
bool check_lift(const ModMatrix& x, const LiftContext& src, const LiftContext& dst, bool require_automorphism,
                LiftCriterion criterion = LiftCriterion::UpToCoboundary);

/// The endomorphism matrix of A (acting on embedded vectors) compatible
/// with x: solves y b_src = b_dst * compound(x). Asserts the companion
/// identity on the a-data up to the per-column image. Internal error if the
/// solver fails although check_lift passed.
ModMatrix find_compatible_y(const ModMatrix& x, const LiftContext& src, const LiftContext& dst);

/// An assembled homomorphism E(src) -> E(dst):
///   (a, g) |-> (psi_y(a) + mu(g), phi_x(g)).
class LiftWitness {
 public:
  LiftWitness(ModMatrix x, ModMatrix y, CocyclePair src, CocyclePair dst);

  ExtElement apply(const ExtElement& u) const;
  const ModMatrix& x() const { return x_; }
  const ModMatrix& y() const { return y_; }
  const ExtGroup& source() const { return src_; }
  const ExtGroup& target() const { return dst_; }
  std::vector<i64> mu_at(std::span<const i64> g) const;  // embedded A-vector

 private:
  ModMatrix x_;
  ModMatrix y_;  // embedded action on A
  ExtGroup src_;
  ExtGroup dst_;
  MuFunction mu_;                 // correction for the pullback of dst
  std::vector<std::vector<i64>> residual_scale_;  // per generator: embedded c_i with p^{m_i} c_i = residual column
};

/// Builds the lift and verifies the homomorphism property on all generator
/// pairs; throws InternalCheckError with a failing pair otherwise.
LiftWitness build_lift(const ModMatrix& x, const ModMatrix& y, const CocyclePair& src, const CocyclePair& dst);

/// Full verification: homomorphism on every product pair and bijectivity by
/// image cardinality. Only for |E| <= budget.
bool verify_lift_exhaustive(const LiftWitness& w, u64 budget = 1024);

struct AutReport {
  u64 kernel_order = 1;
  u64 lifting_order = 1;  // number of automorphism classes of G passing the criterion
  u64 total_order = 1;
  std::vector<ModMatrix> lifting_reps;
};

/// |hom(G, A x p^{d_r} G)|.
u64 kernel_order(const GroupShape& G, const GroupShape& A);

/// The automorphisms of G that lift to automorphisms of the extension:
/// filters one representative per automorphism class. Deterministic for any
/// worker count.
std::vector<ModMatrix> lifting_automorphism_reps(const CocyclePair& pr, u64 coset_budget = AutRepStream::kDefaultCosetBudget,
                                                 int workers = 1);

/// Assembles the full report: kernel_order x number of lifting classes.
AutReport aut_order(const CocyclePair& pr, u64 coset_budget = AutRepStream::kDefaultCosetBudget, int workers = 1);

struct IsoResult {
  enum class Verdict { witness, no, inconclusive };
  Verdict verdict = Verdict::no;
  std::optional<LiftWitness> witness;
  std::string note;
};

/// Searches the automorphism representatives of G for one lifting to an
/// isomorphism E(src) -> E(dst). Exhausting the stream proves no such lift
/// exists; a budget refusal is reported as inconclusive, never as "no".
IsoResult iso_test(const CocyclePair& src, const CocyclePair& dst, u64 coset_budget = AutRepStream::kDefaultCosetBudget,
                   int workers = 1, u64 verify_budget = 1024);

struct NormalizeResult {
  CocyclePair pair;
  ModMatrix y;  // embedded action on A
  ModMatrix x;  // over Z/p^{m_n}
  bool changed = false;
};

/// Diagonalizes the a-data by a Smith normal form when the two transforms
/// are valid (y an automorphism of A in embedded coordinates, x an
/// automorphism matrix of G); otherwise returns the input unchanged with
/// identity transforms. The result is always isomorphic to the input.
NormalizeResult normalize(const CocyclePair& pr);

}  // namespace centex
