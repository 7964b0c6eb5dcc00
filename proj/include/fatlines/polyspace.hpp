#pragma once

// Graded coefficient spaces. A degree-d form in n variables is a dense
// coefficient vector indexed by the monomials of degree d, enumerated in
// lexicographic order of the exponent tuple (x0^d first, x_{n-1}^d last).
// The same enumeration is used everywhere in the library.

#include <array>
#include <cassert>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fatlines/field.hpp"
#include "fatlines/matrix.hpp"

namespace fatlines {

inline constexpr std::size_t kMaxVars = 4;

using Exponents = std::array<std::uint16_t, kMaxVars>;

/// C(n, k) for the small arguments used here.
inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Number of monomials of degree `degree` in `nvars` variables.
inline std::size_t basis_size(std::size_t nvars, std::size_t degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  return binomial(degree + nvars - 1, nvars - 1);
}

class MonomialBasis {
 public:
  MonomialBasis(std::size_t nvars, std::size_t degree) : nvars_(nvars), degree_(degree) {
    assert(nvars >= 1 && nvars <= kMaxVars);
    monomials_.reserve(basis_size(nvars, degree));
    Exponents e{};
    enumerate(0, degree, e);
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const Exponents& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Exponents>& monomials() const { return monomials_; }

  /// Position of `e` in the enumeration; `e` must have this basis' degree.
  std::size_t index(const Exponents& e) const { return rank_of(e, nvars_); }

  static std::size_t rank_of(const Exponents& e, std::size_t nvars) {
    std::size_t remaining = 0;
    for (std::size_t i = 0; i < nvars; ++i) remaining += e[i];
    std::size_t r = 0;
    for (std::size_t i = 0; i + 1 < nvars; ++i) {
      // tuples whose i-th exponent exceeds e[i] come first
      for (std::size_t k = e[i] + 1; k <= remaining; ++k) r += basis_size(nvars - i - 1, remaining - k);
      remaining -= e[i];
    }
    return r;
  }

 private:
  void enumerate(std::size_t var, std::size_t remaining, Exponents& e) {
    if (var + 1 == nvars_) {
      e[var] = static_cast<std::uint16_t>(remaining);
      monomials_.push_back(e);
      return;
    }
    for (std::size_t k = remaining + 1; k-- > 0;) {
      e[var] = static_cast<std::uint16_t>(k);
      enumerate(var + 1, remaining - k, e);
    }
    e[var] = 0;
  }

  std::size_t nvars_;
  std::size_t degree_;
  std::vector<Exponents> monomials_;
};

inline std::size_t total_degree(const Exponents& e) {
  std::size_t s = 0;
  for (auto x : e) s += x;
  return s;
}

/// Expands the images of degree-`degree` source monomials under the linear
/// substitution x_i -> images[i] (each image a linear form in `target_vars`
/// variables). Only target monomials accepted by `keep` are retained; `keep`
/// must be closed under taking divisors so truncated products stay exact.
///
/// The result has one row per kept target monomial (in basis order) and one
/// column per source monomial, i.e. column j is the coefficient vector of
/// monomial_j after substitution.
template <Field F>
FieldMatrix<F> substitution_rows(const F& field, std::span<const Vec<F>> images, std::size_t target_vars,
                                 std::size_t degree, const std::function<bool(const Exponents&)>& keep) {
  const std::size_t source_vars = images.size();
  // kept target monomials per degree, with a dense index map
  std::vector<std::vector<std::size_t>> local(degree + 1);
  std::vector<std::vector<Exponents>> kept(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) {
    MonomialBasis tb(target_vars, k);
    local[k].assign(tb.size(), SIZE_MAX);
    for (std::size_t i = 0; i < tb.size(); ++i) {
      if (keep(tb[i])) {
        local[k][i] = kept[k].size();
        kept[k].push_back(tb[i]);
      }
    }
  }

  // level[k][mu] = truncated expansion of source monomial mu (degree k)
  std::vector<Vec<F>> prev{Vec<F>(kept[0].size(), field.one())};
  for (std::size_t k = 1; k <= degree; ++k) {
    MonomialBasis sb(source_vars, k);
    std::vector<Vec<F>> cur(sb.size(), Vec<F>(kept[k].size(), field.zero()));
    for (std::size_t mu = 0; mu < sb.size(); ++mu) {
      Exponents e = sb[mu];
      std::size_t v = 0;
      while (e[v] == 0) ++v;
      --e[v];
      const auto& parent = prev[MonomialBasis::rank_of(e, source_vars)];
      const auto& form = images[v];
      auto& out = cur[mu];
      for (std::size_t a = 0; a < parent.size(); ++a) {
        if (field.is_zero(parent[a])) continue;
        Exponents te = kept[k - 1][a];
        for (std::size_t w = 0; w < target_vars; ++w) {
          if (field.is_zero(form[w])) continue;
          ++te[w];
          const std::size_t idx = local[k][MonomialBasis::rank_of(te, target_vars)];
          if (idx != SIZE_MAX) out[idx] = field.add(out[idx], field.mul(parent[a], form[w]));
          --te[w];
        }
      }
    }
    prev = std::move(cur);
  }

  FieldMatrix<F> m(kept[degree].size(), prev.size(), field.zero());
  for (std::size_t j = 0; j < prev.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = prev[j][i];
  return m;
}

/// Linear action of an invertible change of variables on degree-d forms:
/// x_i is replaced by sum_k change(k, i) x_k, so F maps to F(changeᵀ x).
/// Column j is the coefficient vector of monomial_j after the substitution,
/// which makes subst(A·B) = subst(A)·subst(B).
template <Field F>
FieldMatrix<F> substitution_matrix(const F& field, const FieldMatrix<F>& change, std::size_t degree) {
  const std::size_t n = change.rows();
  if (change.cols() != n || rank(field, change) != n) {
    throw Error(ErrorKind::SingularChange, "change of coordinates is not invertible");
  }
  std::vector<Vec<F>> images(n, Vec<F>(n, field.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) images[i][k] = change(k, i);
  return substitution_rows(field, std::span<const Vec<F>>(images), n, degree, [](const Exponents&) { return true; });
}

/// Coefficients of F(s·a + t·b) as a binary form of degree d, listed as the
/// coefficients of s^d, s^(d-1) t, ..., t^d.
template <Field F>
Vec<F> restrict_to_line(const F& field, std::span<const typename F::value_type> coeffs, std::size_t nvars,
                        std::size_t degree, std::span<const typename F::value_type> a,
                        std::span<const typename F::value_type> b) {
  assert(coeffs.size() == basis_size(nvars, degree));
  std::vector<Vec<F>> images(nvars);
  for (std::size_t i = 0; i < nvars; ++i) images[i] = {a[i], b[i]};
  auto m = substitution_rows(field, std::span<const Vec<F>>(images), 2, degree, [](const Exponents&) { return true; });
  return multiply(field, m, coeffs);
}

/// Value of a degree-d form at a point.
template <Field F>
typename F::value_type evaluate(const F& field, std::span<const typename F::value_type> coeffs, std::size_t nvars,
                                std::size_t degree, std::span<const typename F::value_type> point) {
  MonomialBasis basis(nvars, degree);
  auto acc = field.zero();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (field.is_zero(coeffs[j])) continue;
    auto term = coeffs[j];
    for (std::size_t i = 0; i < nvars; ++i)
      for (std::size_t k = 0; k < basis[j][i]; ++k) term = field.mul(term, point[i]);
    acc = field.add(acc, term);
  }
  return acc;
}

/// Product of two forms of degrees da and db.
template <Field F>
Vec<F> multiply_forms(const F& field, std::span<const typename F::value_type> f, std::size_t da,
                      std::span<const typename F::value_type> g, std::size_t db, std::size_t nvars) {
  MonomialBasis ba(nvars, da), bb(nvars, db);
  Vec<F> out(basis_size(nvars, da + db), field.zero());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (field.is_zero(f[i])) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      if (field.is_zero(g[j])) continue;
      Exponents e{};
      for (std::size_t v = 0; v < nvars; ++v) e[v] = static_cast<std::uint16_t>(ba[i][v] + bb[j][v]);
      const auto idx = MonomialBasis::rank_of(e, nvars);
      out[idx] = field.add(out[idx], field.mul(f[i], g[j]));
    }
  }
  return out;
}

}  // namespace fatlines
