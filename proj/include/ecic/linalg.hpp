#pragma once

// Vectors and matrices over a Field, plus the elimination-based kernels used
// throughout: rank, row-space basis, dual (parity-check) matrices, coset
// leaders and exhaustive minimum distance.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecic/error.hpp"
#include "ecic/field.hpp"

namespace ecic {

using Vector = std::vector<Elem>;

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 26;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// All rows must have length `cols`.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols)
        throw Error(ErrorKind::LengthMismatch, "row " + std::to_string(r) + " has wrong length");
      std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    return from_rows(rows, rows.empty() ? 0 : rows.front().size());
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }
  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void append_row(std::span<const Elem> v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw Error(ErrorKind::LengthMismatch, "appended row has wrong length");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  /// L_E: the rows indexed by `indices`, in the given order.
  Matrix select_rows(std::span<const std::size_t> indices) const {
    Matrix m(indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] >= rows_) throw Error(ErrorKind::IndexOutOfRange, "row index out of range");
      std::copy_n(row(indices[k]).begin(), cols_, m.row(k).begin());
    }
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

// ---------------------------------------------------------------------------
// Vector helpers

inline std::size_t hamming_weight(std::span<const Elem> u) {
  return static_cast<std::size_t>(std::count_if(u.begin(), u.end(), [](Elem x) { return x != 0; }));
}

/// supp(u), 0-based positions.
inline std::vector<std::size_t> support(std::span<const Elem> u) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) s.push_back(i);
  return s;
}

inline std::size_t hamming_distance(std::span<const Elem> u, std::span<const Elem> v) {
  if (u.size() != v.size()) throw Error(ErrorKind::LengthMismatch, "distance of unequal lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += u[i] != v[i];
  return d;
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector e(n, 0);
  e.at(i) = 1;
  return e;
}

/// dst += a * src
inline void add_scaled(const Field& F, std::span<Elem> dst, Elem a, std::span<const Elem> src) {
  if (a == 0) return;
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = F.add(dst[j], F.mul(a, src[j]));
}

inline Vector add(const Field& F, std::span<const Elem> u, std::span<const Elem> v) {
  if (u.size() != v.size()) throw Error(ErrorKind::LengthMismatch, "sum of unequal lengths");
  Vector w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) w[j] = F.add(u[j], v[j]);
  return w;
}

inline Vector sub(const Field& F, std::span<const Elem> u, std::span<const Elem> v) {
  if (u.size() != v.size()) throw Error(ErrorKind::LengthMismatch, "difference of unequal lengths");
  Vector w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) w[j] = F.sub(u[j], v[j]);
  return w;
}

inline Elem dot(const Field& F, std::span<const Elem> u, std::span<const Elem> v) {
  Elem s = 0;
  for (std::size_t j = 0; j < u.size(); ++j) s = F.add(s, F.mul(u[j], v[j]));
  return s;
}

/// x * M (row vector times matrix).
inline Vector vec_mat(const Field& F, std::span<const Elem> x, const Matrix& M) {
  if (x.size() != M.rows()) throw Error(ErrorKind::LengthMismatch, "x length != matrix rows");
  Vector y(M.cols(), 0);
  for (std::size_t r = 0; r < M.rows(); ++r) add_scaled(F, y, x[r], M.row(r));
  return y;
}

/// M * v^T as a vector of length rows(M).
inline Vector mat_vec(const Field& F, const Matrix& M, std::span<const Elem> v) {
  if (v.size() != M.cols()) throw Error(ErrorKind::LengthMismatch, "v length != matrix cols");
  Vector s(M.rows());
  for (std::size_t r = 0; r < M.rows(); ++r) s[r] = dot(F, M.row(r), v);
  return s;
}

inline Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw Error(ErrorKind::LengthMismatch, "inner dimensions differ");
  Matrix C(A.rows(), B.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t k = 0; k < A.cols(); ++k) add_scaled(F, C.row(r), A(r, k), B.row(k));
  return C;
}

// ---------------------------------------------------------------------------
// Elimination

/// Brings M to reduced row echelon form in place (pivots scaled to 1, pivot
/// columns chosen left to right). Returns the pivot column of each nonzero row.
inline std::vector<std::size_t> row_reduce(const Field& F, Matrix& M) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && M(p, c) == 0) ++p;
    if (p == M.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(p, j), M(r, j));
    const Elem s = F.inv(M(r, c));
    for (std::size_t j = 0; j < M.cols(); ++j) M(r, j) = F.mul(s, M(r, j));
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || M(i, c) == 0) continue;
      add_scaled(F, M.row(i), F.neg(M(i, c)), M.row(r));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const Field& F, Matrix M) { return row_reduce(F, M).size(); }

/// Basis of the row space: the nonzero rows of the reduced echelon form.
inline Matrix row_space_basis(const Field& F, Matrix M) {
  const std::size_t k = row_reduce(F, M).size();
  Matrix B(k, M.cols());
  for (std::size_t r = 0; r < k; ++r) std::copy_n(M.row(r).begin(), M.cols(), B.row(r).begin());
  return B;
}

/// True iff v lies in the row space of M.
inline bool in_row_space(const Field& F, const Matrix& M, std::span<const Elem> v) {
  if (v.size() != M.cols()) throw Error(ErrorKind::LengthMismatch, "vector length != matrix cols");
  if (std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; })) return true;
  Matrix ext = M;
  const std::size_t base = rank(F, M);
  ext.append_row(v);
  return rank(F, std::move(ext)) == base;
}

/// Semi-echelon basis grown one vector at a time. Rows are never rewritten after
/// insertion (each row is zero at the pivots of the rows before it), so the most
/// recent insertion can be undone with `pop`.
class EchelonBasis {
 public:
  EchelonBasis(const Field& F, std::size_t cols) : F_(F), cols_(cols) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  /// Residual of v after eliminating every basis pivot.
  Vector reduce(std::span<const Elem> v) const {
    Vector w(v.begin(), v.end());
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (w[pivots_[k]] != 0) add_scaled(F_, w, F_.neg(w[pivots_[k]]), rows_[k]);
    return w;
  }

  /// Adds v if it is independent of the basis; returns whether the rank grew.
  bool insert(std::span<const Elem> v) {
    Vector w = reduce(v);
    auto it = std::find_if(w.begin(), w.end(), [](Elem x) { return x != 0; });
    if (it == w.end()) return false;
    const std::size_t p = static_cast<std::size_t>(it - w.begin());
    const Elem s = F_.inv(w[p]);
    for (auto& x : w) x = F_.mul(s, x);
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

  void pop() {
    rows_.pop_back();
    pivots_.pop_back();
  }

  const std::vector<Vector>& rows() const { return rows_; }

 private:
  Field F_;
  std::size_t cols_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Parity-check matrix of the row space of G: an (N-k) x N matrix H of full rank
/// with G * H^T = 0. One row per non-pivot column f of rref(G), in increasing f:
/// H_f has 1 at f and -rref(G)(r, f) at the pivot column of row r.
inline Matrix parity_check_matrix(const Field& F, const Matrix& G) {
  Matrix R = G;
  const auto pivots = row_reduce(F, R);
  const std::size_t N = G.cols();
  std::vector<bool> is_pivot(N, false);
  for (auto p : pivots) is_pivot[p] = true;

  Matrix H(N - pivots.size(), N);
  std::size_t h = 0;
  for (std::size_t f = 0; f < N; ++f) {
    if (is_pivot[f]) continue;
    H(h, f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) H(h, pivots[r]) = F.neg(R(r, f));
    ++h;
  }
  return H;
}

// ---------------------------------------------------------------------------
// Combinatorial helpers

/// Advances a strictly increasing k-subset of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Advances an odometer whose digits range over [lo, q).
inline bool next_odometer(std::vector<Elem>& digits, unsigned q, Elem lo = 0) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] + 1u < q) {
      ++digits[i];
      return true;
    }
    digits[i] = lo;
  }
  return false;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Coset leaders

/// Minimum-weight solution e of H * e^T = s. Weights are tried in increasing
/// order; within a weight, supports in lexicographic order and then value
/// vectors in lexicographic order of their encodings, so the result is unique.
inline Vector coset_leader(const Field& F, const Matrix& H, std::span<const Elem> s,
                           std::size_t weight_cap,
                           std::uint64_t budget = kDefaultEnumerationBudget) {
  if (s.size() != H.rows()) throw Error(ErrorKind::LengthMismatch, "syndrome length != rows of H");
  const std::size_t N = H.cols();
  if (!in_row_space(F, H.transpose(), s))
    throw Error(ErrorKind::NoSolution, "syndrome is not in the column space of H");

  std::vector<Vector> columns(N);
  for (std::size_t c = 0; c < N; ++c) columns[c] = H.column(c);

  const unsigned q = F.order();
  std::uint64_t spent = 0;
  for (std::size_t w = 0; w <= std::min(weight_cap, N); ++w) {
    std::vector<std::size_t> supp(w);
    for (std::size_t j = 0; j < w; ++j) supp[j] = j;
    do {
      std::vector<Elem> values(w, 1);
      do {
        if (++spent > budget) throw Error(ErrorKind::BudgetExceeded, "coset leader enumeration");
        Vector acc(H.rows(), 0);
        for (std::size_t j = 0; j < w; ++j) add_scaled(F, acc, values[j], columns[supp[j]]);
        if (std::equal(acc.begin(), acc.end(), s.begin())) {
          Vector e(N, 0);
          for (std::size_t j = 0; j < w; ++j) e[supp[j]] = values[j];
          return e;
        }
      } while (next_odometer(values, q, 1));
    } while (next_combination(supp, N));
  }
  throw Error(ErrorKind::WeightCapExceeded,
              "no solution of weight <= " + std::to_string(weight_cap));
}

// ---------------------------------------------------------------------------
// Packed GF(2) path (length <= 64)

namespace gf2 {

using Word = std::uint64_t;

inline Word pack(std::span<const Elem> v) {
  Word w = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] & 1) w |= Word{1} << i;
  return w;
}

inline Vector unpack(Word w, std::size_t n) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Elem>((w >> i) & 1);
  return v;
}

inline std::vector<Word> pack_rows(const Matrix& M) {
  std::vector<Word> rows(M.rows());
  for (std::size_t r = 0; r < M.rows(); ++r) rows[r] = pack(M.row(r));
  return rows;
}

inline std::size_t rank(std::vector<Word> rows) {
  std::size_t r = 0;
  for (int bit = 0; bit < 64 && r < rows.size(); ++bit) {
    const Word m = Word{1} << bit;
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                           [m](Word w) { return w & m; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & m)) rows[i] ^= rows[r];
    ++r;
  }
  return r;
}

/// min over c in span(span_rows) of popcount(target ^ c), by Gray-code walk.
inline std::size_t coset_min_weight(Word target, std::span<const Word> span_rows) {
  Word cur = target;
  std::size_t best = static_cast<std::size_t>(std::popcount(cur));
  const std::uint64_t count = std::uint64_t{1} << span_rows.size();
  for (std::uint64_t g = 1; g < count && best > 0; ++g) {
    cur ^= span_rows[static_cast<std::size_t>(std::countr_zero(g))];
    best = std::min(best, static_cast<std::size_t>(std::popcount(cur)));
  }
  return best;
}

}  // namespace gf2

// ---------------------------------------------------------------------------
// Minimum distance

/// Minimum weight of a nonzero codeword in the row space of G, by enumerating
/// every message over a basis (normalized so the first nonzero coefficient is 1).
inline std::size_t code_min_distance(const Field& F, const Matrix& G,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
  const Matrix B = row_space_basis(F, G);
  const std::size_t k = B.rows();
  if (k == 0) throw Error(ErrorKind::NoSolution, "zero code has no minimum distance");
  const unsigned q = F.order();
  if (saturating_pow(q, k) > budget)
    throw Error(ErrorKind::BudgetExceeded, "q^k = " + std::to_string(q) + "^" + std::to_string(k));

  if (q == 2 && G.cols() <= 64) {
    const auto rows = gf2::pack_rows(B);
    // Coset of the first basis row against the span of the rest covers all codewords
    // with leading coefficient 1 in some position; iterate leading index.
    std::size_t best = G.cols();
    for (std::size_t lead = 0; lead < k; ++lead)
      best = std::min(best, gf2::coset_min_weight(
                                rows[lead], std::span<const gf2::Word>(rows).subspan(lead + 1)));
    return best;
  }

  std::size_t best = G.cols();
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<Elem> coef(k - lead - 1, 0);
    do {
      Vector c = B.row_vector(lead);
      for (std::size_t j = 0; j < coef.size(); ++j) add_scaled(F, c, coef[j], B.row(lead + 1 + j));
      best = std::min(best, hamming_weight(c));
    } while (next_odometer(coef, q));
  }
  return best;
}

}  // namespace ecic
