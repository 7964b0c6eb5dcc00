#pragma once

// Dense matrices over an exact field, with rank and nullspace.
//
// Over Q the elimination is fraction-free (Bareiss): rows are first scaled to
// primitive integer vectors, and every update a_ij <- (p*a_ij - a_ic*a_rj)/p'
// divides exactly by the previous pivot p'. Over GF(p) it is ordinary row
// reduction. Pivots are the first nonzero entry in column order, scanning
// rows top to bottom, so results are reproducible.
//
// Large rational ranks are first attempted by a modular certificate (a rank
// lower bound from one prime, an upper bound from an exactly verified kernel
// lifted from several primes); Bareiss elimination settles the rest.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "fatlines/field.hpp"

namespace fatlines {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    assert(entries_.size() == rows_ * cols_);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  const std::vector<T>& entries() const { return entries_; }

  /// Appends the rows of `other`; column counts must agree (or this is empty).
  void append_rows(const Matrix& other) {
    if (rows_ == 0) cols_ = other.cols_;
    assert(other.cols_ == cols_);
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    rows_ += other.rows_;
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    assert(r.size() == cols_);
    entries_.insert(entries_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

template <Field F>
using FieldMatrix = Matrix<typename F::value_type>;

template <Field F>
FieldMatrix<F> identity_matrix(const F& field, std::size_t n) {
  FieldMatrix<F> m(n, n, field.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

template <Field F>
FieldMatrix<F> multiply(const F& field, const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  assert(a.cols() == b.rows());
  FieldMatrix<F> out(a.rows(), b.cols(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (field.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = field.add(out(i, j), field.mul(a(i, k), b(k, j)));
    }
  return out;
}

template <Field F>
Vec<F> multiply(const F& field, const FieldMatrix<F>& a, std::span<const typename F::value_type> v) {
  assert(a.cols() == v.size());
  Vec<F> out(a.rows(), field.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(field, a.row(i), v);
  return out;
}

/// Row echelon form. Over Q the stored rows are integer (Bareiss) rows; over
/// GF(p) they are field rows. `pivots[k]` is the pivot column of row k.
template <class Entry>
struct Echelon {
  std::vector<std::vector<Entry>> rows;
  std::vector<std::size_t> pivots;
  std::size_t cols = 0;

  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

inline std::vector<std::vector<BigInt>> integer_rows(const Matrix<BigRational>& m) {
  std::vector<std::vector<BigInt>> out;
  out.reserve(m.rows());
  Rationals q;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = q.primitive_integers(m.row(r));
    bool zero = std::all_of(row.begin(), row.end(), [](const BigInt& x) { return sgn(x) == 0; });
    if (!zero) out.push_back(std::move(row));
  }
  return out;
}

/// Fraction-free elimination on integer rows, in place.
inline Echelon<BigInt> bareiss(std::vector<std::vector<BigInt>> a, std::size_t cols) {
  Echelon<BigInt> e;
  e.cols = cols;
  BigInt prev = 1;
  BigInt tmp;
  std::size_t top = 0;
  const std::size_t nrows = a.size();
  for (std::size_t c = 0; c < cols && top < nrows; ++c) {
    std::size_t piv = top;
    while (piv < nrows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(a[top], a[piv]);
    const auto& prow = a[top];
    const BigInt& p = prow[c];
    for (std::size_t i = top + 1; i < nrows; ++i) {
      auto& row = a[i];
      const bool lead_zero = sgn(row[c]) == 0;
      for (std::size_t j = c + 1; j < cols; ++j) {
        // row[j] = (p*row[j] - row[c]*prow[j]) / prev
        mpz_mul(tmp.get_mpz_t(), p.get_mpz_t(), row[j].get_mpz_t());
        if (!lead_zero) mpz_submul(tmp.get_mpz_t(), row[c].get_mpz_t(), prow[j].get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = p;
    e.pivots.push_back(c);
    ++top;
  }
  a.resize(top);
  e.rows = std::move(a);
  return e;
}

/// floor(w * 2^64 / p), for multiplying many residues by the same w < p.
inline std::uint64_t shoup_quotient(std::uint64_t w, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(w) << 64) / p);
}

/// a * w mod p for a < p < 2^63, without a division.
inline std::uint64_t shoup_mul(std::uint64_t a, std::uint64_t w, std::uint64_t wq, std::uint64_t p) {
  const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * wq) >> 64);
  const std::uint64_t r = a * w - q * p;
  return r >= p ? r - p : r;
}

template <class PF>
Echelon<std::uint64_t> gauss_mod_p(const PF& field, const Matrix<std::uint64_t>& m) {
  const std::uint64_t p = field.modulus();
  Echelon<std::uint64_t> e;
  e.cols = m.cols();
  std::vector<std::vector<std::uint64_t>> a;
  a.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) a.emplace_back(m.row(r).begin(), m.row(r).end());
  std::size_t top = 0;
  const std::size_t nrows = a.size();
  for (std::size_t c = 0; c < m.cols() && top < nrows; ++c) {
    std::size_t piv = top;
    while (piv < nrows && a[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(a[top], a[piv]);
    auto& prow = a[top];
    const auto pinv = field.inv(prow[c]);
    const auto pinv_q = shoup_quotient(pinv, p);
    for (std::size_t j = c; j < m.cols(); ++j) prow[j] = shoup_mul(prow[j], pinv, pinv_q, p);
    for (std::size_t i = top + 1; i < nrows; ++i) {
      auto& row = a[i];
      if (row[c] == 0) continue;
      const auto f = row[c];
      const auto f_q = shoup_quotient(f, p);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (prow[j] != 0) row[j] = field.sub(row[j], shoup_mul(prow[j], f, f_q, p));
      }
    }
    e.pivots.push_back(c);
    ++top;
  }
  a.resize(top);
  e.rows = std::move(a);
  return e;
}

}  // namespace detail

/// Basis of the integer kernel {v in Z^n : A v = 0} (a saturated lattice),
/// from unimodular column operations that bring A to column echelon form.
inline std::vector<std::vector<BigInt>> integer_kernel_basis(const std::vector<std::vector<BigInt>>& a,
                                                             std::size_t n) {
  auto m = a;
  std::vector<std::vector<BigInt>> u(n, std::vector<BigInt>(n, 0));  // u[col] = column vector
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto combine = [&](std::size_t i, std::size_t j, const BigInt& s, const BigInt& t, const BigInt& x,
                     const BigInt& y) {
    // col_i <- s col_i + t col_j ; col_j <- x col_i + y col_j
    for (auto& row : m) {
      BigInt ci = s * row[i] + t * row[j];
      BigInt cj = x * row[i] + y * row[j];
      row[i] = std::move(ci);
      row[j] = std::move(cj);
    }
    for (std::size_t k = 0; k < n; ++k) {
      BigInt ci = s * u[i][k] + t * u[j][k];
      BigInt cj = x * u[i][k] + y * u[j][k];
      u[i][k] = std::move(ci);
      u[j][k] = std::move(cj);
    }
  };
  std::size_t k = 0;
  for (std::size_t r = 0; r < m.size() && k < n; ++r) {
    for (std::size_t j = k + 1; j < n; ++j) {
      const BigInt b = m[r][j];
      if (sgn(b) == 0) continue;
      const BigInt a0 = m[r][k];
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a0.get_mpz_t(), b.get_mpz_t());
      combine(k, j, s, t, BigInt(-b / g), BigInt(a0 / g));
    }
    if (sgn(m[r][k]) != 0) ++k;
  }
  return {u.begin() + static_cast<std::ptrdiff_t>(k), u.end()};
}

/// Row echelon form of `m` under the deterministic pivot rule.
inline Echelon<BigInt> echelon(const Rationals&, const Matrix<BigRational>& m) {
  return detail::bareiss(detail::integer_rows(m), m.cols());
}

inline Echelon<std::uint64_t> echelon(const PrimeField& field, const Matrix<std::uint64_t>& m) {
  return detail::gauss_mod_p(field, m);
}

// Modular certificates for integer matrices. Reduction mod p never raises the
// rank, so rank mod p = min(rows, cols) proves the rational rank outright, and
// a candidate kernel vector lifted from several primes is accepted only after
// exact verification over Z.

/// The i-th prime below 2^61, counting down (i = 0 is 2^61 - 1).
inline std::uint64_t modular_prime(std::size_t i) {
  static std::vector<std::uint64_t> primes;
  if (primes.size() <= i) {
    std::uint64_t p = primes.empty() ? (1ULL << 61) : primes.back();
    while (primes.size() <= i) {
      do {
        --p;
      } while (!is_prime(p));
      primes.push_back(p);
    }
  }
  return primes[i];
}

namespace detail {

inline Matrix<std::uint64_t> reduce_mod(const std::vector<std::vector<BigInt>>& rows, std::size_t cols,
                                        std::uint64_t p) {
  Matrix<std::uint64_t> m(rows.size(), cols, 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = mpz_fdiv_ui(rows[r][c].get_mpz_t(), p);
  return m;
}

inline std::optional<BigRational> rational_reconstruct(const BigInt& a, const BigInt& modulus) {
  BigInt bound = sqrt(BigInt(modulus / 2));
  BigInt r0 = modulus, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (abs(t1) > bound || gcd(r1, t1) != 1) return std::nullopt;
  BigRational q(r1, t1);
  q.canonicalize();
  return q;
}

}  // namespace detail

enum class KernelStatus { Trivial, Found, Inconclusive };

struct KernelCertificate {
  KernelStatus status = KernelStatus::Inconclusive;
  std::vector<std::size_t> pivots;          // pivot columns shared by all lifted vectors
  std::vector<std::vector<BigInt>> basis;   // primitive, each exactly annihilated when Found
};

namespace detail {

inline std::vector<std::uint64_t> kernel_vector_mod_p(const PrimeField& gf, const Echelon<std::uint64_t>& e,
                                                      std::size_t free) {
  std::vector<std::uint64_t> v(e.cols, 0);
  v[free] = 1;
  for (std::size_t k = e.rank(); k-- > 0;) {
    const auto& row = e.rows[k];
    std::uint64_t acc = 0;
    for (std::size_t j = e.pivots[k] + 1; j < e.cols; ++j)
      if (v[j] != 0 && row[j] != 0) acc = gf.add(acc, gf.mul(row[j], v[j]));
    v[e.pivots[k]] = gf.neg(acc);
  }
  return v;
}

inline bool annihilates(const std::vector<std::vector<BigInt>>& rows, const std::vector<BigInt>& v) {
  BigInt acc;
  for (const auto& row : rows) {
    acc = 0;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (sgn(v[c]) != 0) mpz_addmul(acc.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
    if (sgn(acc) != 0) return false;
  }
  return true;
}

}  // namespace detail

/// Lifts the kernel vectors attached to non-pivot columns (the vectors
/// `nullspace` would list, or only the first when `first_only`) by Chinese
/// remaindering over up to `max_primes` primes, accepting them only after
/// exact verification. `Trivial` certifies that the kernel is zero.
inline KernelCertificate certified_kernel(const std::vector<std::vector<BigInt>>& rows, std::size_t cols,
                                          bool first_only, std::size_t max_primes = 128) {
  KernelCertificate out;
  if (cols == 0) {
    out.status = KernelStatus::Trivial;
    return out;
  }
  std::vector<std::size_t> ref_pivots;
  std::vector<std::size_t> frees;
  std::vector<std::vector<BigInt>> residues;  // per free column
  BigInt modulus = 1;
  std::size_t used = 0;       // primes folded into `residues`
  std::size_t next_try = 1;   // reconstruction checkpoints at 1, 2, 4, 6, 8, 12, 16, ...
  for (std::size_t i = 0; i < max_primes; ++i) {
    const auto p = modular_prime(i);
    PrimeField gf(p);
    const auto e = detail::gauss_mod_p(gf, detail::reduce_mod(rows, cols, p));
    if (e.rank() == cols) {
      out.status = KernelStatus::Trivial;
      return out;
    }
    // Unlucky primes lose rank, which pushes pivots right; keep the
    // lexicographically smallest pivot list seen so far.
    if (used > 0 && e.pivots != ref_pivots) {
      if (std::lexicographical_compare(ref_pivots.begin(), ref_pivots.end(), e.pivots.begin(), e.pivots.end()) &&
          e.rank() <= ref_pivots.size())
        continue;
      used = 0;
      next_try = 1;
    }
    if (used == 0) {
      ref_pivots = e.pivots;
      std::vector<bool> is_pivot(cols, false);
      for (auto c : e.pivots) is_pivot[c] = true;
      frees.clear();
      for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) frees.push_back(c);
      if (first_only) frees.resize(1);
      residues.assign(frees.size(), std::vector<BigInt>(cols));
      modulus = 1;
    }
    const BigInt bp(static_cast<unsigned long>(p));
    BigInt minv;
    if (used > 0) {
      BigInt mmod = modulus % bp;
      mpz_invert(minv.get_mpz_t(), mmod.get_mpz_t(), bp.get_mpz_t());
    }
    BigInt diff;
    for (std::size_t f = 0; f < frees.size(); ++f) {
      const auto v = detail::kernel_vector_mod_p(gf, e, frees[f]);
      auto& res = residues[f];
      for (std::size_t c = 0; c < cols; ++c) {
        if (used == 0) {
          res[c] = static_cast<unsigned long>(v[c]);
          continue;
        }
        // x = r (mod M), x = v (mod p)
        const auto rmod = mpz_fdiv_ui(res[c].get_mpz_t(), p);
        const auto k = gf.mul(gf.sub(v[c], rmod), minv.get_ui());
        if (k != 0) mpz_addmul_ui(res[c].get_mpz_t(), modulus.get_mpz_t(), static_cast<unsigned long>(k));
      }
    }
    modulus *= bp;
    ++used;
    if (used < next_try) continue;
    next_try = std::max(next_try + 1, next_try * 3 / 2);
    std::vector<std::vector<BigInt>> lifted;
    bool ok = true;
    for (const auto& res : residues) {
      std::vector<BigRational> q;
      q.reserve(cols);
      for (const auto& r : res) {
        auto rec = detail::rational_reconstruct(r, modulus);
        if (!rec) {
          ok = false;
          break;
        }
        q.push_back(std::move(*rec));
      }
      if (!ok) break;
      lifted.push_back(Rationals{}.primitive_integers(q));
    }
    if (!ok) continue;
    if (!std::all_of(lifted.begin(), lifted.end(), [&](const auto& v) { return detail::annihilates(rows, v); }))
      continue;
    out.status = KernelStatus::Found;
    out.pivots = ref_pivots;
    out.basis = std::move(lifted);
    return out;
  }
  return out;
}

inline KernelCertificate certified_kernel_vector(const std::vector<std::vector<BigInt>>& rows, std::size_t cols,
                                                 std::size_t max_primes = 128) {
  return certified_kernel(rows, cols, true, max_primes);
}

namespace detail {

inline std::vector<std::vector<BigInt>> transpose(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
  std::vector<std::vector<BigInt>> t(cols, std::vector<BigInt>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) t[c][r] = rows[r][c];
  return t;
}

}  // namespace detail

/// Exact rank of an integer matrix without elimination over Z, when it can
/// be certified: rank mod p is a lower bound, and a verified basis of the
/// smaller kernel (left or right) caps it from above.
inline std::optional<std::size_t> certified_rank(const std::vector<std::vector<BigInt>>& rows, std::size_t cols,
                                                 std::size_t max_primes = 128) {
  if (rows.empty() || cols == 0) return 0;
  const auto p = modular_prime(0);
  PrimeField gf(p);
  const std::size_t r = detail::gauss_mod_p(gf, detail::reduce_mod(rows, cols, p)).rank();
  if (r == std::min(rows.size(), cols)) return r;
  const bool left = rows.size() < cols;
  const auto cert = left ? certified_kernel(detail::transpose(rows, cols), rows.size(), false, max_primes)
                         : certified_kernel(rows, cols, false, max_primes);
  if (cert.status != KernelStatus::Found) return std::nullopt;
  const std::size_t side = left ? rows.size() : cols;
  // the lifted vectors are independent (unit entries on distinct free columns)
  if (side - cert.basis.size() != r) return std::nullopt;
  return r;
}

inline std::size_t rank(const Rationals& field, const Matrix<BigRational>& m) {
  if (m.empty()) return 0;
  auto rows = detail::integer_rows(m);
  if (auto r = certified_rank(rows, m.cols())) return *r;
  (void)field;
  return detail::bareiss(std::move(rows), m.cols()).rank();
}

inline std::size_t rank(const PrimeField& field, const Matrix<std::uint64_t>& m) {
  if (m.empty()) return 0;
  return detail::gauss_mod_p(field, m).rank();
}

/// Plain fraction-free elimination, without the modular shortcut.
inline std::size_t bareiss_rank(const Matrix<BigRational>& m) {
  if (m.empty()) return 0;
  return detail::bareiss(detail::integer_rows(m), m.cols()).rank();
}

/// Basis of ker(m), one vector per non-pivot column (in increasing column
/// order). Over Q each vector is scaled to a primitive integer vector.
template <Field F>
std::vector<Vec<F>> nullspace(const F& field, const FieldMatrix<F>& m) {
  const std::size_t n = m.cols();
  std::vector<Vec<F>> basis;
  if (n == 0) return basis;
  if (m.rows() == 0) {
    for (std::size_t f = 0; f < n; ++f) {
      Vec<F> v(n, field.zero());
      v[f] = field.one();
      basis.push_back(std::move(v));
    }
    return basis;
  }
  const auto e = echelon(field, m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  auto lift = [](const auto& x) -> typename F::value_type {
    if constexpr (std::is_same_v<F, Rationals>) {
      return BigRational(x);
    } else {
      return x;
    }
  };
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec<F> v(n, field.zero());
    v[f] = field.one();
    for (std::size_t k = e.rank(); k-- > 0;) {
      const auto& row = e.rows[k];
      const std::size_t pc = e.pivots[k];
      auto acc = field.zero();
      for (std::size_t j = pc + 1; j < n; ++j) {
        if (field.is_zero(v[j])) continue;
        acc = field.add(acc, field.mul(lift(row[j]), v[j]));
      }
      v[pc] = field.neg(field.div(acc, lift(row[pc])));
    }
    if constexpr (std::is_same_v<F, Rationals>) {
      auto ints = field.primitive_integers(v);
      for (std::size_t i = 0; i < n; ++i) v[i] = BigRational(ints[i]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace fatlines
