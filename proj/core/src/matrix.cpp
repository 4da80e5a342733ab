#include "centex/matrix.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace centex {

ModMatrix ModMatrix::identity(int n, i64 q) {
  ModMatrix m(n, n, q);
  for (int i = 0; i < n; ++i) m.at(i, i) = rem(1, q);
  return m;
}

ModMatrix ModMatrix::from_rows(const std::vector<std::vector<i64>>& rows, i64 q) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  ModMatrix m(r, c, q);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("from_rows: ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rem(rows[i][j], q);
  }
  return m;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix t(cols, rows, mod);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::vector<i64> ModMatrix::row(int i) const {
  std::vector<i64> v(cols);
  for (int j = 0; j < cols; ++j) v[j] = at(i, j);
  return v;
}

std::vector<i64> ModMatrix::col(int j) const {
  std::vector<i64> v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, j);
  return v;
}

bool ModMatrix::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](i64 v) { return v == 0; });
}

ModMatrix mat_mul(const ModMatrix& A, const ModMatrix& B) {
  if (A.cols != B.rows || A.mod != B.mod) throw std::invalid_argument("mat_mul: shape or modulus mismatch");
  ModMatrix C(A.rows, B.cols, A.mod);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      i64 aik = A.at(i, k);
      if (!aik) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) = rem(C.at(i, j) + aik * B.at(k, j), A.mod);
    }
  return C;
}

ModMatrix mat_add(const ModMatrix& A, const ModMatrix& B) {
  if (A.rows != B.rows || A.cols != B.cols || A.mod != B.mod) throw std::invalid_argument("mat_add: mismatch");
  ModMatrix C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = rem(C.a[i] + B.a[i], C.mod);
  return C;
}

ModMatrix mat_sub(const ModMatrix& A, const ModMatrix& B) {
  if (A.rows != B.rows || A.cols != B.cols || A.mod != B.mod) throw std::invalid_argument("mat_sub: mismatch");
  ModMatrix C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = rem(C.a[i] - B.a[i], C.mod);
  return C;
}

ModMatrix mat_neg(const ModMatrix& A) {
  ModMatrix C = A;
  for (auto& v : C.a) v = rem(-v, C.mod);
  return C;
}

ModMatrix mat_scale(const ModMatrix& A, i64 c) {
  ModMatrix C = A;
  for (auto& v : C.a) v = mul_mod(v, c, C.mod);
  return C;
}

ModMatrix mat_mod(const ModMatrix& A, i64 q) {
  ModMatrix C(A.rows, A.cols, q);
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = rem(A.a[i], q);
  return C;
}

std::vector<i64> mat_apply(const ModMatrix& A, std::span<const i64> v) {
  if (static_cast<int>(v.size()) != A.cols) throw std::invalid_argument("mat_apply: size mismatch");
  std::vector<i64> out(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    i64 s = 0;
    for (int j = 0; j < A.cols; ++j) s = rem(s + A.at(i, j) * rem(v[j], A.mod), A.mod);
    out[i] = s;
  }
  return out;
}

bool det_is_unit(const ModMatrix& A, i64 p) {
  if (A.rows != A.cols) return false;
  int n = A.rows;
  if (n == 0) return true;
  std::vector<i64> m(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * n + j] = rem(A.at(i, j), p);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[static_cast<size_t>(r) * n + c] != 0) { piv = r; break; }
    if (piv < 0) return false;
    if (piv != c)
      for (int j = 0; j < n; ++j) std::swap(m[static_cast<size_t>(piv) * n + j], m[static_cast<size_t>(c) * n + j]);
    i64 inv = inverse_unit(m[static_cast<size_t>(c) * n + c], p);
    for (int r = c + 1; r < n; ++r) {
      i64 f = mul_mod(m[static_cast<size_t>(r) * n + c], inv, p);
      if (!f) continue;
      for (int j = c; j < n; ++j)
        m[static_cast<size_t>(r) * n + j] = rem(m[static_cast<size_t>(r) * n + j] - f * m[static_cast<size_t>(c) * n + j], p);
    }
  }
  return true;
}

std::optional<ModMatrix> mat_inverse(const ModMatrix& A, i64 p) {
  if (A.rows != A.cols) return std::nullopt;
  int n = A.rows;
  i64 q = A.mod;
  ModMatrix work = A;
  ModMatrix inv = ModMatrix::identity(n, q);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (rem(work.at(r, c), p) != 0) { piv = r; break; }
    if (piv < 0) return std::nullopt;  // no unit pivot: not invertible over the local ring
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(work.at(piv, j), work.at(c, j));
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    i64 u = inverse_unit(work.at(c, c), q);
    for (int j = 0; j < n; ++j) {
      work.at(c, j) = mul_mod(work.at(c, j), u, q);
      inv.at(c, j) = mul_mod(inv.at(c, j), u, q);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      i64 f = work.at(r, c);
      if (!f) continue;
      for (int j = 0; j < n; ++j) {
        work.at(r, j) = rem(work.at(r, j) - f * work.at(c, j), q);
        inv.at(r, j) = rem(inv.at(r, j) - f * inv.at(c, j), q);
      }
    }
  }
  return inv;
}

namespace {

i64 pow_i64(i64 p, int e) {
  i64 r = 1;
  while (e-- > 0) r *= p;
  return r;
}

// Worklist row reducer maintaining a Howell pivot set over Z/p^e. Rows may
// carry a tag block (for augmented solving); pivots live in the leading
// `width` columns. Invariants: a pivot row is exactly zero left of its pivot,
// its pivot entry is a pure power of p, and the torsion multiple
// p^(e-v) * row has been fed back into the pivot set.
class HowellReducer {
 public:
  HowellReducer(i64 p, int e, i64 mod, int width, int tag_width)
      : p_(p), e_(e), mod_(mod), width_(width), tag_width_(tag_width) {}

  void insert(std::vector<i64> row) {
    pending_.push_back(std::move(row));
    drain();
  }

  // Mutual reduction of pivot-column entries across pivot rows; after this
  // the leading blocks form the canonical basis.
  void finalize() {
    for (auto& [c, pr] : pivots_) {
      for (int c2 = c + 1; c2 < width_; ++c2) {
        auto it = pivots_.find(c2);
        if (it == pivots_.end() || pr[c2] == 0) continue;
        i64 pw = pivot_power(it->second, c2);
        i64 f = pr[c2] / pw;
        if (f) subtract(pr, it->second, f);
      }
    }
  }

  const std::map<int, std::vector<i64>>& pivots() const { return pivots_; }
  const std::vector<std::vector<i64>>& zero_rows() const { return zero_rows_; }

  // Greedy reduction of an arbitrary row against the pivots (leading block
  // only). Walks the leading nonzero column; stops when it cannot be cleared.
  std::vector<i64> reduce(std::vector<i64> row) const {
    for (int c = 0; c < width_; ++c) {
      if (!row[c]) continue;
      auto it = pivots_.find(c);
      if (it == pivots_.end()) break;
      i64 pw = pivot_power(it->second, c);
      if (row[c] % pw != 0) break;
      subtract(row, it->second, row[c] / pw);
    }
    return row;
  }

 private:
  i64 pivot_power(const std::vector<i64>& pr, int c) const {
    i64 pw = 1;
    int v = valuation_capped(pr[c], p_, e_);
    for (int i = 0; i < v; ++i) pw *= p_;
    return pw;
  }

  void subtract(std::vector<i64>& row, const std::vector<i64>& pr, i64 f) const {
    for (size_t j = 0; j < row.size(); ++j) row[j] = rem(row[j] - f * pr[j], mod_);
  }

  void drain() {
    while (!pending_.empty()) {
      std::vector<i64> row = std::move(pending_.front());
      pending_.pop_front();
      process(std::move(row));
    }
  }

  void process(std::vector<i64> row) {
    for (int c = 0; c < width_; ++c) {
      i64 v = row[c];
      if (!v) continue;
      int rv = valuation_capped(v, p_, e_);
      auto it = pivots_.find(c);
      if (it == pivots_.end()) {
        install(c, rv, std::move(row));
        return;
      }
      int pv = valuation_capped(it->second[c], p_, e_);
      if (rv >= pv) {
        subtract(row, it->second, row[c] / pow_i64(p_, pv));  // exact: p^pv divides row[c]
      } else {
        // lower valuation takes over the pivot slot
        std::vector<i64> old = std::move(it->second);
        pivots_.erase(it);
        install(c, rv, std::move(row));
        pending_.push_back(std::move(old));
        return;
      }
    }
    if (tag_width_ > 0) {
      bool tagged = false;
      for (int j = width_; j < width_ + tag_width_; ++j)
        if (row[j]) { tagged = true; break; }
      if (tagged) zero_rows_.push_back(std::move(row));
    }
  }

  void install(int c, int rv, std::vector<i64> row) {
    i64 pw = pow_i64(p_, rv);
    i64 uinv = inverse_unit(row[c] / pw, mod_);
    for (auto& v : row) v = mul_mod(v, uinv, mod_);  // pivot becomes p^rv
    // reduce this column in the other pivot rows
    for (auto& [oc, pr] : pivots_) {
      i64 f = pr[c] / pw;
      if (f) subtract(pr, row, f);
    }
    // torsion completion
    if (rv > 0) {
      i64 t = pow_i64(p_, e_ - rv);
      std::vector<i64> tor(row.size());
      bool nonzero = false;
      for (size_t j = 0; j < row.size(); ++j) {
        tor[j] = mul_mod(row[j], t, mod_);
        nonzero |= (tor[j] != 0);
      }
      if (nonzero) pending_.push_back(std::move(tor));
    }
    pivots_.emplace(c, std::move(row));
  }

  i64 p_;
  int e_;
  i64 mod_;
  int width_;
  int tag_width_;
  std::map<int, std::vector<i64>> pivots_;
  std::vector<std::vector<i64>> zero_rows_;
  std::deque<std::vector<i64>> pending_;
};

ModMatrix pivot_matrix(const HowellReducer& red, int width, i64 mod) {
  std::vector<std::vector<i64>> rows;
  for (const auto& [c, pr] : red.pivots()) rows.push_back(std::vector<i64>(pr.begin(), pr.begin() + width));
  return ModMatrix::from_rows(rows, mod);
}

}  // namespace

Submodule Submodule::span(i64 p, int e, int ambient, const std::vector<std::vector<i64>>& gens) {
  i64 mod = pow_i64(p, e);
  HowellReducer red(p, e, mod, ambient, 0);
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != ambient) throw std::invalid_argument("Submodule::span: ambient mismatch");
    std::vector<i64> row(ambient);
    for (int j = 0; j < ambient; ++j) row[j] = rem(g[j], mod);
    red.insert(std::move(row));
  }
  red.finalize();
  Submodule s;
  s.p_ = p;
  s.e_ = e;
  s.mod_ = mod;
  s.ambient_ = ambient;
  s.basis_ = pivot_matrix(red, ambient, mod);
  if (s.basis_.rows == 0) s.basis_ = ModMatrix(0, ambient, mod);
  return s;
}

Submodule Submodule::col_span(i64 p, int e, const ModMatrix& g) {
  std::vector<std::vector<i64>> gens;
  gens.reserve(g.cols);
  for (int j = 0; j < g.cols; ++j) gens.push_back(g.col(j));
  return span(p, e, g.rows, gens);
}

bool Submodule::contains(std::span<const i64> v) const {
  if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("Submodule::contains: ambient mismatch");
  std::vector<i64> row(ambient_);
  for (int j = 0; j < ambient_; ++j) row[j] = rem(v[j], mod_);
  // pivot lookup by leading column
  int nrows = basis_.rows;
  int bi = 0;
  for (int c = 0; c < ambient_; ++c) {
    if (!row[c]) continue;
    // find basis row with pivot at c (rows are sorted by pivot column)
    while (bi < nrows) {
      int lead = 0;
      while (lead < ambient_ && basis_.at(bi, lead) == 0) ++lead;
      if (lead >= c) break;
      ++bi;
    }
    if (bi >= nrows) return false;
    int lead = 0;
    while (lead < ambient_ && basis_.at(bi, lead) == 0) ++lead;
    if (lead != c) return false;
    i64 pw = basis_.at(bi, c);  // pure power of p
    if (row[c] % pw != 0) return false;
    i64 f = row[c] / pw;
    for (int j = c; j < ambient_; ++j) row[j] = rem(row[j] - f * basis_.at(bi, j), mod_);
  }
  return std::all_of(row.begin(), row.end(), [](i64 x) { return x == 0; });
}

bool Submodule::leq(const Submodule& other) const {
  if (ambient_ != other.ambient_ || mod_ != other.mod_) throw std::invalid_argument("Submodule::leq: ambient mismatch");
  for (int i = 0; i < basis_.rows; ++i) {
    auto r = basis_.row(i);
    if (!other.contains(r)) return false;
  }
  return true;
}

u64 Submodule::size() const {
  u64 n = 1;
  for (int i = 0; i < basis_.rows; ++i) {
    int c = 0;
    while (c < ambient_ && basis_.at(i, c) == 0) ++c;
    if (c == ambient_) continue;
    int v = valuation_capped(basis_.at(i, c), p_, e_);
    n = checked_mul(n, checked_pow(static_cast<u64>(p_), static_cast<u64>(e_ - v)));
  }
  return n;
}

Submodule submodule_image(const ModMatrix& x, const Submodule& S) {
  if (x.cols != S.ambient()) throw std::invalid_argument("submodule_image: ambient mismatch");
  ModMatrix xm = mat_mod(x, S.mod());
  std::vector<std::vector<i64>> gens;
  for (int i = 0; i < S.basis().rows; ++i) {
    auto v = S.basis().row(i);
    gens.push_back(mat_apply(xm, v));
  }
  return Submodule::span(S.p(), S.exponent(), x.rows, gens);
}

Submodule kernel_submodule(const ModMatrix& M, i64 p, int e) {
  i64 mod = pow_i64(p, e);
  // rows of the augmented system: [column_j(M)^T | e_j]
  HowellReducer red(p, e, mod, M.rows, M.cols);
  for (int j = 0; j < M.cols; ++j) {
    std::vector<i64> row(static_cast<size_t>(M.rows) + M.cols, 0);
    for (int i = 0; i < M.rows; ++i) row[i] = rem(M.at(i, j), mod);
    row[static_cast<size_t>(M.rows) + j] = 1;
    red.insert(std::move(row));
  }
  std::vector<std::vector<i64>> gens;
  for (const auto& z : red.zero_rows()) gens.push_back(std::vector<i64>(z.begin() + M.rows, z.end()));
  return Submodule::span(p, e, M.cols, gens);
}

std::optional<ModMatrix> solve_left(const ModMatrix& b, const ModMatrix& a, i64 p, int e) {
  if (b.rows != a.rows) throw std::invalid_argument("solve_left: row mismatch");
  i64 mod = pow_i64(p, e);
  HowellReducer red(p, e, mod, b.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) {
    std::vector<i64> row(static_cast<size_t>(b.rows) + b.cols, 0);
    for (int i = 0; i < b.rows; ++i) row[i] = rem(b.at(i, j), mod);
    row[static_cast<size_t>(b.rows) + j] = 1;
    red.insert(std::move(row));
  }
  ModMatrix w(b.cols, a.cols, mod);
  for (int j = 0; j < a.cols; ++j) {
    std::vector<i64> row(static_cast<size_t>(b.rows) + b.cols, 0);
    for (int i = 0; i < b.rows; ++i) row[i] = rem(a.at(i, j), mod);
    std::vector<i64> res = red.reduce(std::move(row));
    for (int i = 0; i < b.rows; ++i)
      if (res[i] != 0) return std::nullopt;
    // tags hold -lambda where a_col = b * lambda
    for (int k = 0; k < b.cols; ++k) w.at(k, j) = rem(-res[static_cast<size_t>(b.rows) + k], mod);
  }
  return w;
}

SmithResult smith_normal_form(const ModMatrix& m, i64 p, int e) {
  i64 mod = pow_i64(p, e);
  ModMatrix d = mat_mod(m, mod);
  int r = d.rows, c = d.cols;
  ModMatrix y = ModMatrix::identity(r, mod);
  ModMatrix x = ModMatrix::identity(c, mod);
  ModMatrix x_inv = ModMatrix::identity(c, mod);

  auto swap_rows = [&](int i1, int i2) {
    if (i1 == i2) return;
    for (int j = 0; j < c; ++j) std::swap(d.at(i1, j), d.at(i2, j));
    for (int j = 0; j < r; ++j) std::swap(y.at(i1, j), y.at(i2, j));
  };
  // column op tracked as d -> d * C, x_inv -> x_inv * C, x -> C^{-1} * x
  auto swap_cols = [&](int j1, int j2) {
    if (j1 == j2) return;
    for (int i = 0; i < r; ++i) std::swap(d.at(i, j1), d.at(i, j2));
    for (int i = 0; i < c; ++i) std::swap(x_inv.at(i, j1), x_inv.at(i, j2));
    for (int j = 0; j < c; ++j) std::swap(x.at(j1, j), x.at(j2, j));
  };
  auto row_axpy = [&](int dst, int src, i64 f) {  // row dst -= f * row src
    if (!f) return;
    for (int j = 0; j < c; ++j) d.at(dst, j) = rem(d.at(dst, j) - f * d.at(src, j), mod);
    for (int j = 0; j < r; ++j) y.at(dst, j) = rem(y.at(dst, j) - f * y.at(src, j), mod);
  };
  auto col_axpy = [&](int dst, int src, i64 f) {  // col dst -= f * col src
    if (!f) return;
    for (int i = 0; i < r; ++i) d.at(i, dst) = rem(d.at(i, dst) - f * d.at(i, src), mod);
    for (int i = 0; i < c; ++i) x_inv.at(i, dst) = rem(x_inv.at(i, dst) - f * x_inv.at(i, src), mod);
    for (int j = 0; j < c; ++j) x.at(src, j) = rem(x.at(src, j) + f * x.at(dst, j), mod);
  };
  auto scale_row = [&](int i, i64 u) {
    for (int j = 0; j < c; ++j) d.at(i, j) = mul_mod(d.at(i, j), u, mod);
    for (int j = 0; j < r; ++j) y.at(i, j) = mul_mod(y.at(i, j), u, mod);
  };

  int t = 0;
  while (t < r && t < c) {
    int bi = -1, bj = -1, bv = e + 1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j) {
        if (!d.at(i, j)) continue;
        int v = valuation_capped(d.at(i, j), p, e);
        if (v < bv) { bv = v; bi = i; bj = j; }
      }
    if (bi < 0) break;  // trailing block is zero
    swap_rows(t, bi);
    swap_cols(t, bj);
    i64 pw = 1;
    for (int i = 0; i < bv; ++i) pw *= p;
    scale_row(t, inverse_unit(d.at(t, t) / pw, mod));  // pivot becomes p^bv
    for (int i = t + 1; i < r; ++i) row_axpy(i, t, d.at(i, t) / pw);
    for (int j = t + 1; j < c; ++j) col_axpy(j, t, d.at(t, j) / pw);
    ++t;
  }
  return SmithResult{std::move(y), std::move(d), std::move(x), std::move(x_inv)};
}

}  // namespace centex
