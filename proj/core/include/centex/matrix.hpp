#pragma once

#include <optional>
#include <span>
#include <vector>

#include "centex/arith.hpp"

namespace centex {

/// Dense matrix over Z/q with canonical entries. q is a prime power
/// throughout this library, but plain modular arithmetic never assumes it.
struct ModMatrix {
  i64 mod = 2;
  int rows = 0;
  int cols = 0;
  std::vector<i64> a;

  ModMatrix() = default;
  ModMatrix(int r, int c, i64 q) : mod(q), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  i64& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  i64 at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static ModMatrix identity(int n, i64 q);
  static ModMatrix from_rows(const std::vector<std::vector<i64>>& rows, i64 q);

  ModMatrix transpose() const;
  std::vector<i64> row(int i) const;
  std::vector<i64> col(int j) const;
  bool is_zero() const;

  bool operator==(const ModMatrix& o) const { return mod == o.mod && rows == o.rows && cols == o.cols && a == o.a; }
};

ModMatrix mat_mul(const ModMatrix& A, const ModMatrix& B);
ModMatrix mat_add(const ModMatrix& A, const ModMatrix& B);
ModMatrix mat_sub(const ModMatrix& A, const ModMatrix& B);
ModMatrix mat_neg(const ModMatrix& A);
ModMatrix mat_scale(const ModMatrix& A, i64 c);
/// Reinterpret entries modulo q (canonical reduction of representatives).
ModMatrix mat_mod(const ModMatrix& A, i64 q);
std::vector<i64> mat_apply(const ModMatrix& A, std::span<const i64> v);

/// True iff det(A) is a unit, decided over the residue field.
bool det_is_unit(const ModMatrix& A, i64 p);

/// Inverse of a square matrix with unit determinant over Z/p^e.
std::optional<ModMatrix> mat_inverse(const ModMatrix& A, i64 p);

/// A submodule of (Z/p^e)^ambient in Howell canonical form. The canonical
/// basis is unique for the submodule, so equality of submodules is equality
/// of the stored bases.
class Submodule {
 public:
  Submodule() = default;

  /// Span of a set of vectors (each of length `ambient`).
  static Submodule span(i64 p, int e, int ambient, const std::vector<std::vector<i64>>& gens);
  /// Span of the columns of g.
  static Submodule col_span(i64 p, int e, const ModMatrix& g);

  bool contains(std::span<const i64> v) const;
  bool leq(const Submodule& other) const;
  u64 size() const;

  i64 p() const { return p_; }
  int exponent() const { return e_; }
  i64 mod() const { return mod_; }
  int ambient() const { return ambient_; }
  const ModMatrix& basis() const { return basis_; }

  bool operator==(const Submodule& o) const {
    return p_ == o.p_ && e_ == o.e_ && ambient_ == o.ambient_ && basis_ == o.basis_;
  }

 private:
  i64 p_ = 2;
  int e_ = 1;
  i64 mod_ = 2;
  int ambient_ = 0;
  ModMatrix basis_;  // Howell canonical rows, pivots in increasing column order
};

/// Image {x v : v in S} under a matrix with ambient-many columns.
Submodule submodule_image(const ModMatrix& x, const Submodule& S);

/// Kernel {v : M v = 0} of M acting on column vectors over Z/p^e.
Submodule kernel_submodule(const ModMatrix& M, i64 p, int e);

/// One solution w of b w = a over Z/p^e (column by column), or nullopt when
/// some column of a is outside the column span of b. Deterministic: lowest
/// valuation pivots with leftmost tie breaking.
std::optional<ModMatrix> solve_left(const ModMatrix& b, const ModMatrix& a, i64 p, int e);

struct SmithResult {
  ModMatrix y;      // invertible r x r
  ModMatrix d;      // diagonal, entries are powers of p with nondecreasing valuation
  ModMatrix x;      // invertible c x c
  ModMatrix x_inv;  // verified inverse of x, so that y * m * x_inv = d
};

/// Smith normal form over Z/p^e: y * m * x_inv = d, equivalently y * m = d * x.
SmithResult smith_normal_form(const ModMatrix& m, i64 p, int e);

}  // namespace centex
