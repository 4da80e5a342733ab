#pragma once

#include <map>
#include <vector>

#include "centex/extension.hpp"

namespace centex {

/// Fully tabulated multiplication of an extension group, with the chosen
/// generating set (0, g_i) recorded. Rows and columns of the table are
/// element indices in the canonical encoding.
struct CayleyTable {
  u64 order = 1;
  std::vector<u32> mul;        // order x order, row-major
  std::vector<u32> inv;
  std::vector<u32> order_of;
  std::vector<u32> generators;  // indices of (0, g_i)
  std::vector<ExtElement> labels;

  u32 at(u32 i, u32 j) const { return mul[static_cast<size_t>(i) * order + j]; }
};

/// Tabulates the group; asserts the Latin-square property. Throws
/// BudgetExceeded when |E| > budget.
CayleyTable build_table(const CocyclePair& pr, u64 budget = 2048);

/// Number of automorphisms, by backtracking over images of the recorded
/// generating set with order and commutator-order pruning, then full
/// verification of each candidate map. Independent of the lifting machinery.
u64 brute_aut_count(const CayleyTable& t);

/// Is there an isomorphism between the two tables? Same search as
/// brute_aut_count with an early exit.
bool brute_iso(const CayleyTable& a, const CayleyTable& b);

/// |H^2(G; A)| by exact linear algebra on the cocycle identity: counts the
/// solution space of the identity over each cyclic factor of A and divides
/// by the coboundary space. Throws BudgetExceeded when |G|^2 exceeds
/// var_budget.
u64 brute_h2_count(const GroupShape& G, const GroupShape& A, u64 var_budget = 4096);

/// order -> number of elements of that order.
std::map<u64, u64> element_order_census(const CayleyTable& t);

}  // namespace centex
