#pragma once

#include <span>
#include <string>
#include <vector>

#include "centex/abelian.hpp"

namespace centex {

enum class PairOrder {
  lex,       // (1,2), (1,3), ..., (n-1,n)
  reversed,  // (n-1,n), ..., (1,3), (1,2)   ("example3" in file input)
};

/// Indexing of the n(n-1)/2 unordered generator pairs (i, j), i < j, used to
/// label commutator coordinates. Pairs are 0-based internally.
struct CommutatorBasis {
  int n = 0;
  PairOrder order = PairOrder::lex;
  std::vector<std::pair<int, int>> pairs;

  static CommutatorBasis make(int n, PairOrder order = PairOrder::lex);
  int size() const { return static_cast<int>(pairs.size()); }
  int index_of(int i, int j) const;  // i < j, 0-based

  bool operator==(const CommutatorBasis& o) const { return n == o.n && pairs == o.pairs; }
};

/// Normal-form 2-cocycle data on G with values in A. Columns of `a` are
/// indexed by generators of G, columns of `b` by commutator coordinates;
/// both are matrices over J = Z/p^{d_r} in embedded A-coordinates, with
/// per-entry valuation constraints:
///   v(a[u][i])      >= d_r - min(m_i, d_u)
///   v(b[u][lambda]) >= d_r - min(m_{lambda.first}, d_u)
struct CocyclePair {
  GroupShape G;
  GroupShape A;
  CommutatorBasis lambda;
  ModMatrix a;  // r x n
  ModMatrix b;  // r x n(n-1)/2

  i64 coeff_mod() const;  // p^{d_r}; p when A is trivial
  int n() const { return G.rank(); }
  int r() const { return A.rank(); }
};

struct PairCheck {
  std::string name;
  bool ok;
  std::string detail;
};

/// Every structural and valuation invariant, reported one entry at a time.
std::vector<PairCheck> validate_pair_report(const GroupShape& G, const GroupShape& A, const ModMatrix& a,
                                            const ModMatrix& b, const CommutatorBasis& lambda);

/// Validating constructor; throws std::invalid_argument naming the first
/// failing check.
CocyclePair make_pair(GroupShape G, GroupShape A, ModMatrix a, ModMatrix b, PairOrder order = PairOrder::lex);
CocyclePair make_pair(GroupShape G, GroupShape A, const std::vector<std::vector<i64>>& a,
                      const std::vector<std::vector<i64>>& b, PairOrder order = PairOrder::lex);

/// Entrywise sum/difference of the data of two pairs on the same (G, A).
CocyclePair pair_add(const CocyclePair& x, const CocyclePair& y);
CocyclePair pair_sub(const CocyclePair& x, const CocyclePair& y);

/// The cocycle value at a pair of exponent vectors, as an embedded A-vector:
///   sum_i [carry of (s_i, t_i) mod p^{m_i}] a_i  -  sum_L t_{L.first} s_{L.second} b_L.
/// Inputs may be arbitrary integers; they are reduced per coordinate.
std::vector<i64> eval_alpha(const CocyclePair& pr, std::span<const i64> s, std::span<const i64> t);

/// The antisymmetrized pairing sum_L det[[s_i, s_j], [t_i, t_j]] b_L; equals
/// eval_alpha(s, t) - eval_alpha(t, s).
std::vector<i64> eval_eta(const CocyclePair& pr, std::span<const i64> s, std::span<const i64> t);

/// alpha(g1,g2) - alpha(g1,g2+g3) + alpha(g1+g2,g3) - alpha(g2,g3) == 0.
bool check_cocycle_identity(const CocyclePair& pr, std::span<const i64> g1, std::span<const i64> g2,
                            std::span<const i64> g3);

/// Do the columns of b generate A (in embedded coordinates)?
bool is_diamond(const CocyclePair& pr);

/// b == 0 and every column a_i in the image of multiplication by p^{m_i},
/// i.e. v(a[u][i]) >= d_r - max(0, d_u - m_i).
bool class_is_zero(const CocyclePair& pr);
bool class_equal(const CocyclePair& x, const CocyclePair& y);

/// |H^2(G; A)| = prod_i |coker(p^{m_i})| * prod_L |ker(p^{m_{L.first}})|,
/// each factor prod_u p^{min(m, d_u)}.
u64 h2_order(const GroupShape& G, const GroupShape& A);

}  // namespace centex
