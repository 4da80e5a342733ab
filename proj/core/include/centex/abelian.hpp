#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "centex/arith.hpp"
#include "centex/matrix.hpp"

namespace centex {

/// A finite abelian p-group presented as a product of cyclic factors
/// Z/p^{e_1} x ... x Z/p^{e_k} with nondecreasing exponents.
struct GroupShape {
  i64 p = 2;
  std::vector<int> exponents;

  GroupShape() = default;
  GroupShape(i64 prime, std::vector<int> exps);

  int rank() const { return static_cast<int>(exponents.size()); }
  i64 factor_modulus(int i) const;
  int max_exponent() const { return exponents.empty() ? 0 : exponents.back(); }
  u64 order() const;
  /// Z/p^{max exponent}; Z/p for the trivial shape.
  ResidueRing scalar_ring() const;

  bool operator==(const GroupShape& o) const { return p == o.p && exponents == o.exponents; }
};

/// An element in per-factor coordinates, coordinate i canonical mod p^{e_i}.
struct GroupElement {
  GroupShape shape;
  std::vector<i64> coords;

  GroupElement() = default;
  GroupElement(GroupShape s, std::vector<i64> c);

  bool is_zero() const;
  bool operator==(const GroupElement& o) const { return shape == o.shape && coords == o.coords; }
};

GroupElement element_zero(const GroupShape& s);
GroupElement element_generator(const GroupShape& s, int i);
GroupElement element_add(const GroupElement& a, const GroupElement& b);
GroupElement element_neg(const GroupElement& a);
GroupElement element_scale(const GroupElement& a, i64 k);

/// Scaled coordinates: factor u of a rank-r shape with top exponent e_r maps
/// to p^{e_r - e_u} times its coordinate, giving a vector over Z/p^{e_r}.
/// All cocycle data lives in these coordinates.
std::vector<i64> embed_element(const GroupElement& a);
GroupElement unembed_element(const GroupShape& shape, std::span<const i64> v);
bool is_embedded_vector(const GroupShape& shape, std::span<const i64> v);
/// The embedded copy of the whole group as a submodule of (Z/p^{e_r})^r.
Submodule embedded_module(const GroupShape& shape);

/// Per-factor homomorphism matrix: column j gives the image of the j-th
/// domain generator, entry (i, j) meaningful mod p^{cod_i}. Stored over
/// Z/p^{max codomain exponent}.
struct HomMatrix {
  GroupShape domain;
  GroupShape codomain;
  ModMatrix entries;
};

/// The divisibility conditions making a matrix a homomorphism:
/// v_p(x_ij) >= cod_i - dom_j wherever that difference is positive.
bool validate_hom(const ModMatrix& x, const GroupShape& domain, const GroupShape& codomain);
std::optional<std::pair<int, int>> hom_violation(const ModMatrix& x, const GroupShape& domain,
                                                 const GroupShape& codomain);

/// validate_hom plus unit determinant over the residue field.
bool is_automorphism_matrix(const ModMatrix& x, const GroupShape& shape);

GroupElement apply_hom(const HomMatrix& h, const GroupElement& g);

/// |hom(G, H)| = prod p^{min(g_i, h_j)}.
u64 hom_order(const GroupShape& G, const GroupShape& H);

/// Conversion between the per-factor endomorphism convention and the action
/// on embedded vectors (conjugation by the scaling diag(p^{e_r - e_u})).
std::optional<ModMatrix> embedded_action_matrix(const ModMatrix& perfactor, const GroupShape& shape);

struct BudgetExceeded : std::runtime_error {
  u64 computed_count;
  explicit BudgetExceeded(u64 count, const std::string& what)
      : std::runtime_error(what), computed_count(count) {}
};

/// Lazy stream of one matrix representative per automorphism of the shape.
/// Entry (i, j) runs over the multiples of p^{max(0, e_i - e_j)} in
/// [0, p^{e_i}); non-invertible patterns are skipped. The stream length is
/// |Aut(shape)|.
class AutRepStream {
 public:
  explicit AutRepStream(const GroupShape& shape, u64 budget = kDefaultCosetBudget);

  static constexpr u64 kDefaultCosetBudget = 10'000'000;

  /// Number of candidate patterns (invertible or not).
  u64 candidate_count() const { return total_; }
  /// Next representative, or nullopt when exhausted.
  std::optional<ModMatrix> next();
  /// Skip the stream to candidate index k (0-based); subsequent next() calls
  /// continue from there. Used to partition work across threads.
  void seek(u64 k);
  /// Candidate pattern at index k without invertibility filtering.
  ModMatrix pattern_at(u64 k) const;

 private:
  GroupShape shape_;
  i64 ring_mod_;
  std::vector<i64> steps_;    // per cell: p^{max(0, e_i - e_j)}
  std::vector<i64> counts_;   // per cell: number of admissible residues
  u64 total_ = 1;
  u64 index_ = 0;
};

/// |Aut(shape)| by exhausting the stream.
u64 count_automorphisms(const GroupShape& shape, u64 budget = AutRepStream::kDefaultCosetBudget);

}  // namespace centex
