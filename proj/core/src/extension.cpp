#include "centex/extension.hpp"

#include <stdexcept>
#include <unordered_set>

namespace centex {

ExtGroup::ExtGroup(CocyclePair pair) : pair_(std::move(pair)) {
  order_ = checked_mul(pair_.A.order(), pair_.G.order());
}

ExtElement ExtGroup::identity() const {
  return ExtElement{element_zero(pair_.A), element_zero(pair_.G)};
}

ExtElement ExtGroup::make(std::vector<i64> a_coords, std::vector<i64> g_coords) const {
  return ExtElement{GroupElement(pair_.A, std::move(a_coords)), GroupElement(pair_.G, std::move(g_coords))};
}

ExtElement ExtGroup::mul(const ExtElement& u, const ExtElement& v) const {
  if (!(u.a_part.shape == pair_.A) || !(v.a_part.shape == pair_.A) || !(u.g_part.shape == pair_.G) ||
      !(v.g_part.shape == pair_.G))
    throw std::invalid_argument("ExtGroup::mul: element from a different group");
  auto twist = eval_alpha(pair_, u.g_part.coords, v.g_part.coords);
  GroupElement a = element_add(element_add(u.a_part, v.a_part), unembed_element(pair_.A, twist));
  GroupElement g = element_add(u.g_part, v.g_part);
  return ExtElement{std::move(a), std::move(g)};
}

ExtElement ExtGroup::inv(const ExtElement& u) const {
  std::vector<i64> ng(pair_.n());
  for (int i = 0; i < pair_.n(); ++i) ng[i] = -u.g_part.coords[i];
  auto twist = eval_alpha(pair_, u.g_part.coords, ng);
  GroupElement a = element_neg(element_add(u.a_part, unembed_element(pair_.A, twist)));
  return ExtElement{std::move(a), GroupElement(pair_.G, std::move(ng))};
}

ExtElement ExtGroup::conj(const ExtElement& u, const ExtElement& v) const {
  // closed form: (a_u - eta(g_u, g_v), g_u); alpha(g, 0) = 0 in normal form
  auto e = eval_eta(pair_, u.g_part.coords, v.g_part.coords);
  GroupElement a = element_add(u.a_part, element_neg(unembed_element(pair_.A, e)));
  return ExtElement{std::move(a), u.g_part};
}

ExtElement ExtGroup::comm(const ExtElement& u, const ExtElement& v) const {
  auto e = eval_eta(pair_, u.g_part.coords, v.g_part.coords);
  return ExtElement{unembed_element(pair_.A, e), element_zero(pair_.G)};
}

ExtElement ExtGroup::pow(const ExtElement& u, i64 k) const {
  ExtElement base = k < 0 ? inv(u) : u;
  u64 n = k < 0 ? static_cast<u64>(-k) : static_cast<u64>(k);
  ExtElement acc = identity();
  while (n) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

u64 ExtGroup::element_order(const ExtElement& u) const {
  ExtElement x = u;
  u64 n = 1;
  ExtElement id = identity();
  while (!(x == id)) {
    x = mul(x, u);
    ++n;
    if (n > order_) throw std::logic_error("element_order: runaway (operation table inconsistent)");
  }
  return n;
}

u64 ExtGroup::encode(const ExtElement& u) const {
  u64 idx = 0;
  for (int i = 0; i < pair_.r(); ++i) idx = idx * static_cast<u64>(pair_.A.factor_modulus(i)) + static_cast<u64>(u.a_part.coords[i]);
  for (int i = 0; i < pair_.n(); ++i) idx = idx * static_cast<u64>(pair_.G.factor_modulus(i)) + static_cast<u64>(u.g_part.coords[i]);
  return idx;
}

ExtElement ExtGroup::decode(u64 index) const {
  std::vector<i64> g(pair_.n()), a(pair_.r());
  for (int i = pair_.n() - 1; i >= 0; --i) {
    u64 m = static_cast<u64>(pair_.G.factor_modulus(i));
    g[i] = static_cast<i64>(index % m);
    index /= m;
  }
  for (int i = pair_.r() - 1; i >= 0; --i) {
    u64 m = static_cast<u64>(pair_.A.factor_modulus(i));
    a[i] = static_cast<i64>(index % m);
    index /= m;
  }
  return ExtElement{GroupElement(pair_.A, std::move(a)), GroupElement(pair_.G, std::move(g))};
}

CocyclePair ExtGroup::recover_pair() const {
  int n = pair_.n(), r = pair_.r();
  i64 J = pair_.coeff_mod();
  ModMatrix a(r, n, J), b(r, pair_.lambda.size(), J);
  for (int i = 0; i < n; ++i) {
    // a_i is the A-part of (0, g_i) * (0, -g_i)
    ExtElement gi = make(std::vector<i64>(r, 0), element_generator(pair_.G, i).coords);
    ExtElement gi_inv = make(std::vector<i64>(r, 0), element_neg(element_generator(pair_.G, i)).coords);
    ExtElement prod = mul(gi, gi_inv);
    auto emb = embed_element(prod.a_part);
    for (int u = 0; u < r; ++u) a.at(u, i) = emb[u];
  }
  for (int L = 0; L < pair_.lambda.size(); ++L) {
    auto [i, j] = pair_.lambda.pairs[L];
    // b_L = -alpha(g_j, g_i), read off (0, g_j) * (0, g_i)
    ExtElement gj = make(std::vector<i64>(r, 0), element_generator(pair_.G, j).coords);
    ExtElement gi = make(std::vector<i64>(r, 0), element_generator(pair_.G, i).coords);
    ExtElement prod = mul(gj, gi);
    auto emb = embed_element(prod.a_part);
    for (int u = 0; u < r; ++u) b.at(u, L) = rem(-emb[u], J);
  }
  return CocyclePair{pair_.G, pair_.A, pair_.lambda, std::move(a), std::move(b)};
}

bool ExtGroup::generates(std::span<const ExtElement> gens, u64 budget) const {
  std::unordered_set<u64> seen;
  std::vector<ExtElement> frontier;
  seen.insert(encode(identity()));
  frontier.push_back(identity());
  while (!frontier.empty()) {
    std::vector<ExtElement> next;
    for (const auto& u : frontier) {
      for (const auto& g : gens) {
        ExtElement v = mul(u, g);
        if (seen.insert(encode(v)).second) {
          if (seen.size() > budget) throw BudgetExceeded(seen.size(), "generates: closure exceeds budget");
          next.push_back(std::move(v));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen.size() == order_;
}

}  // namespace centex
