#include "centex/abelian.hpp"

#include <algorithm>
#include <stdexcept>

namespace centex {

GroupShape::GroupShape(i64 prime, std::vector<int> exps) : p(prime), exponents(std::move(exps)) {
  if (!is_prime(p)) throw std::invalid_argument("GroupShape: p is not prime");
  for (size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 1) throw std::invalid_argument("GroupShape: exponents must be >= 1");
    if (i > 0 && exponents[i] < exponents[i - 1])
      throw std::invalid_argument("GroupShape: exponents must be nondecreasing");
  }
  (void)scalar_ring();  // enforces the modulus bound
}

i64 GroupShape::factor_modulus(int i) const {
  i64 m = 1;
  for (int k = 0; k < exponents[i]; ++k) m *= p;
  return m;
}

u64 GroupShape::order() const {
  u64 n = 1;
  for (int i = 0; i < rank(); ++i) n = checked_mul(n, static_cast<u64>(factor_modulus(i)));
  return n;
}

ResidueRing GroupShape::scalar_ring() const {
  return ResidueRing(p, exponents.empty() ? 1 : exponents.back());
}

GroupElement::GroupElement(GroupShape s, std::vector<i64> c) : shape(std::move(s)), coords(std::move(c)) {
  if (coords.size() != shape.exponents.size()) throw std::invalid_argument("GroupElement: coordinate count mismatch");
  for (int i = 0; i < shape.rank(); ++i) coords[i] = rem(coords[i], shape.factor_modulus(i));
}

bool GroupElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](i64 v) { return v == 0; });
}

GroupElement element_zero(const GroupShape& s) { return GroupElement(s, std::vector<i64>(s.rank(), 0)); }

GroupElement element_generator(const GroupShape& s, int i) {
  std::vector<i64> c(s.rank(), 0);
  c.at(i) = 1;
  return GroupElement(s, std::move(c));
}

GroupElement element_add(const GroupElement& a, const GroupElement& b) {
  if (!(a.shape == b.shape)) throw std::invalid_argument("element_add: shape mismatch");
  std::vector<i64> c(a.coords.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
  return GroupElement(a.shape, std::move(c));
}

GroupElement element_neg(const GroupElement& a) {
  std::vector<i64> c(a.coords.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -a.coords[i];
  return GroupElement(a.shape, std::move(c));
}

GroupElement element_scale(const GroupElement& a, i64 k) {
  std::vector<i64> c(a.coords.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mul_mod(a.coords[i], rem(k, a.shape.factor_modulus(i)), a.shape.factor_modulus(i));
  return GroupElement(a.shape, std::move(c));
}

std::vector<i64> embed_element(const GroupElement& a) {
  const GroupShape& s = a.shape;
  i64 top = s.rank() ? s.factor_modulus(s.rank() - 1) : s.p;
  std::vector<i64> v(s.rank());
  for (int u = 0; u < s.rank(); ++u) v[u] = rem(a.coords[u] * (top / s.factor_modulus(u)), top);
  return v;
}

GroupElement unembed_element(const GroupShape& shape, std::span<const i64> v) {
  if (static_cast<int>(v.size()) != shape.rank()) throw std::invalid_argument("unembed_element: size mismatch");
  i64 top = shape.rank() ? shape.factor_modulus(shape.rank() - 1) : shape.p;
  std::vector<i64> c(shape.rank());
  for (int u = 0; u < shape.rank(); ++u) {
    i64 scale = top / shape.factor_modulus(u);
    i64 val = rem(v[u], top);
    if (val % scale != 0) throw std::invalid_argument("unembed_element: vector is not in the embedded image");
    c[u] = val / scale;
  }
  return GroupElement(shape, std::move(c));
}

bool is_embedded_vector(const GroupShape& shape, std::span<const i64> v) {
  if (static_cast<int>(v.size()) != shape.rank()) return false;
  i64 top = shape.rank() ? shape.factor_modulus(shape.rank() - 1) : shape.p;
  for (int u = 0; u < shape.rank(); ++u) {
    if (rem(v[u], top) % (top / shape.factor_modulus(u)) != 0) return false;
  }
  return true;
}

Submodule embedded_module(const GroupShape& shape) {
  int e = shape.max_exponent() ? shape.max_exponent() : 1;
  std::vector<std::vector<i64>> gens;
  for (int u = 0; u < shape.rank(); ++u) gens.push_back(embed_element(element_generator(shape, u)));
  return Submodule::span(shape.p, e, shape.rank(), gens);
}

std::optional<std::pair<int, int>> hom_violation(const ModMatrix& x, const GroupShape& domain,
                                                 const GroupShape& codomain) {
  if (x.rows != codomain.rank() || x.cols != domain.rank())
    throw std::invalid_argument("hom check: matrix dimensions do not match the shapes");
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) {
      int need = codomain.exponents[i] - domain.exponents[j];
      if (need <= 0) continue;
      if (valuation_capped(rem(x.at(i, j), codomain.factor_modulus(i)), codomain.p, codomain.exponents[i]) < need)
        return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

bool validate_hom(const ModMatrix& x, const GroupShape& domain, const GroupShape& codomain) {
  return !hom_violation(x, domain, codomain).has_value();
}

bool is_automorphism_matrix(const ModMatrix& x, const GroupShape& shape) {
  return validate_hom(x, shape, shape) && det_is_unit(x, shape.p);
}

GroupElement apply_hom(const HomMatrix& h, const GroupElement& g) {
  if (!(g.shape == h.domain)) throw std::invalid_argument("apply_hom: element not in the domain");
  std::vector<i64> c(h.codomain.rank(), 0);
  for (int i = 0; i < h.codomain.rank(); ++i) {
    i64 m = h.codomain.factor_modulus(i);
    i64 s = 0;
    for (int j = 0; j < h.domain.rank(); ++j) s = rem(s + rem(h.entries.at(i, j), m) * rem(g.coords[j], m), m);
    c[i] = s;
  }
  return GroupElement(h.codomain, std::move(c));
}

u64 hom_order(const GroupShape& G, const GroupShape& H) {
  u64 n = 1;
  for (int i : G.exponents)
    for (int j : H.exponents) n = checked_mul(n, checked_pow(static_cast<u64>(G.p), static_cast<u64>(std::min(i, j))));
  return n;
}

std::optional<ModMatrix> embedded_action_matrix(const ModMatrix& perfactor, const GroupShape& shape) {
  int r = shape.rank();
  if (perfactor.rows != r || perfactor.cols != r) return std::nullopt;
  i64 top = r ? shape.factor_modulus(r - 1) : shape.p;
  ModMatrix y(r, r, top);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      // y = P * x * P^{-1} with P = diag(p^{e_r - e_u})
      i64 num = shape.factor_modulus(j);   // p^{e_j}
      i64 den = shape.factor_modulus(i);   // p^{e_i}
      i64 v = rem(perfactor.at(i, j), top);
      if (num >= den) {
        y.at(i, j) = rem(v * (num / den), top);
      } else {
        if (v % (den / num) != 0) return std::nullopt;  // not a homomorphism
        y.at(i, j) = v / (den / num);
      }
    }
  }
  return y;
}

AutRepStream::AutRepStream(const GroupShape& shape, u64 budget) : shape_(shape) {
  int n = shape.rank();
  ring_mod_ = shape.rank() ? shape.factor_modulus(n - 1) : shape.p;
  steps_.resize(static_cast<size_t>(n) * n);
  counts_.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int need = std::max(0, shape.exponents[i] - shape.exponents[j]);
      i64 step = 1;
      for (int k = 0; k < need; ++k) step *= shape.p;
      steps_[static_cast<size_t>(i) * n + j] = step;
      i64 cnt = shape.factor_modulus(i) / step;
      counts_[static_cast<size_t>(i) * n + j] = cnt;
      total_ = checked_mul(total_, static_cast<u64>(cnt));
    }
  }
  if (total_ > budget)
    throw BudgetExceeded(total_, "automorphism enumeration: candidate count " + std::to_string(total_) +
                                     " exceeds budget " + std::to_string(budget));
}

ModMatrix AutRepStream::pattern_at(u64 k) const {
  int n = shape_.rank();
  ModMatrix x(n, n, ring_mod_);
  for (int i = n - 1; i >= 0; --i) {
    for (int j = n - 1; j >= 0; --j) {
      size_t cell = static_cast<size_t>(i) * n + j;
      u64 cnt = static_cast<u64>(counts_[cell]);
      x.at(i, j) = steps_[cell] * static_cast<i64>(k % cnt);
      k /= cnt;
    }
  }
  return x;
}

void AutRepStream::seek(u64 k) { index_ = k; }

std::optional<ModMatrix> AutRepStream::next() {
  while (index_ < total_) {
    ModMatrix x = pattern_at(index_);
    ++index_;
    if (det_is_unit(x, shape_.p)) return x;
  }
  return std::nullopt;
}

u64 count_automorphisms(const GroupShape& shape, u64 budget) {
  AutRepStream stream(shape, budget);
  u64 n = 0;
  while (stream.next().has_value()) ++n;
  return n;
}

}  // namespace centex
