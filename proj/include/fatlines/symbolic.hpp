#pragma once

// Degree slices of symbolic powers of ideals of finite unions of
// codimension-2 linear subspaces (points of P^2, lines of P^3).
//
// Each component is a linear complete intersection (L1, L2), so its m-th
// symbolic power is the ordinary power (L1, L2)^m. Membership of a degree-d
// form is tested after a change of coordinates that turns the component
// into {u0 = u1 = 0}: the form lies in (u0, u1)^m exactly when every monomial
// of u0,u1-degree below m has coefficient zero. The symbolic power of the
// whole configuration is the intersection over components.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fatlines/field.hpp"
#include "fatlines/geometry.hpp"
#include "fatlines/matrix.hpp"
#include "fatlines/polyspace.hpp"

namespace fatlines {

enum class Ambient { P2, P3 };

inline std::size_t ambient_vars(Ambient a) { return a == Ambient::P2 ? 3 : 4; }
inline const char* to_string(Ambient a) { return a == Ambient::P2 ? "P2" : "P3"; }

/// A reduced union of points of P^2 or lines of P^3.
template <Field F>
struct Configuration {
  F field;
  Ambient ambient = Ambient::P3;
  std::vector<LinearComponent<F>> components;
  std::string label;

  std::size_t nvars() const { return ambient_vars(ambient); }
  std::size_t size() const { return components.size(); }
};

/// Validates and assembles a configuration: components must live in the
/// ambient space and be pairwise distinct.
template <Field F>
Configuration<F> make_configuration(const F& field, Ambient ambient, std::vector<LinearComponent<F>> components,
                                    std::string label = {}) {
  if (components.empty()) throw Error(ErrorKind::SchemaError, "configuration has no components");
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].nvars() != ambient_vars(ambient)) {
      throw Error(ErrorKind::SchemaError, "components[" + std::to_string(i) + "] has the wrong number of coordinates");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (same_component(field, components[i], components[j])) {
        throw Error(ErrorKind::DuplicateComponent,
                    "components[" + std::to_string(i) + "] repeats components[" + std::to_string(j) + "]");
      }
  }
  return {field, ambient, std::move(components), std::move(label)};
}

namespace detail {

/// Lagrange-Gauss reduction of two integer vectors; keeps their span.
inline void reduce_pair(std::vector<BigInt>& a, std::vector<BigInt>& b) {
  auto norm = [](const std::vector<BigInt>& v) {
    BigInt s = 0;
    for (const auto& x : v) s += x * x;
    return s;
  };
  auto inner = [](const std::vector<BigInt>& u, const std::vector<BigInt>& v) {
    BigInt s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  };
  if (norm(a) > norm(b)) std::swap(a, b);
  for (;;) {
    const BigInt na = norm(a);
    if (na == 0) return;
    // q = round(<a,b> / <a,a>)
    BigInt num = 2 * inner(a, b) + na;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), BigInt(2 * na).get_mpz_t());
    if (q == 0) return;
    for (std::size_t i = 0; i < a.size(); ++i) b[i] -= q * a[i];
    if (norm(b) >= na) return;
    std::swap(a, b);
  }
}

/// Columns of the coordinate change for component `c`: complementary standard
/// vectors first, then the spanning points.
template <Field F>
std::vector<Vec<F>> adapted_frame(const F& field, const LinearComponent<F>& c) {
  const std::size_t n = c.nvars();
  std::vector<Vec<F>> span;
  if constexpr (std::is_same_v<F, Rationals>) {
    std::vector<std::vector<BigInt>> forms;
    for (const auto& f : c.forms) forms.push_back(field.primitive_integers(f));
    auto ints = integer_kernel_basis(forms, n);
    if (ints.size() == 2) reduce_pair(ints[0], ints[1]);
    for (auto& v : ints) {
      Vec<F> w;
      for (auto& x : v) w.emplace_back(x);
      span.push_back(std::move(w));
    }
  } else {
    for (const auto& p : c.span) span.push_back(p.coords);
  }
  std::vector<Vec<F>> frame;
  FieldMatrix<F> acc = stack(field, std::span<const Vec<F>>(span), n);
  for (std::size_t i = 0; i < n && frame.size() + span.size() < n; ++i) {
    Vec<F> e(n, field.zero());
    e[i] = field.one();
    auto trial = acc;
    trial.append_row(std::span<const typename F::value_type>(e));
    if (rank(field, trial) == trial.rows()) {
      acc = std::move(trial);
      frame.push_back(std::move(e));
    }
  }
  for (auto& s : span) frame.push_back(std::move(s));
  return frame;
}

template <Field F>
void check_characteristic(const F& field, std::size_t degree) {
  const auto p = field.characteristic();
  if (p != 0 && degree >= p) {
    throw Error(ErrorKind::CharacteristicTooSmall,
                "working degree " + std::to_string(degree) + " needs characteristic > degree, field is " + field.name());
  }
}

}  // namespace detail

/// Linear conditions on degree-d coefficient vectors equivalent to membership
/// in (L1, L2)^m.
template <Field F>
FieldMatrix<F> component_constraints(const F& field, const LinearComponent<F>& c, std::size_t m, std::size_t d) {
  const std::size_t n = c.nvars();
  const auto frame = detail::adapted_frame(field, c);
  // x_i -> sum_k frame[k][i] u_k
  std::vector<Vec<F>> images(n, Vec<F>(n, field.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) images[i][k] = frame[k][i];
  return substitution_rows(field, std::span<const Vec<F>>(images), n, d,
                           [m](const Exponents& e) { return static_cast<std::size_t>(e[0]) + e[1] < m; });
}

/// The degree-d part of the m-th symbolic power of a configuration.
template <Field F>
struct DegreeSlice {
  std::size_t m = 1;
  std::size_t d = 0;
  FieldMatrix<F> constraints;
  std::size_t rank = 0;
  std::size_t dim = 0;
};

template <Field F>
FieldMatrix<F> slice_constraints(const Configuration<F>& config, std::size_t m, std::size_t d) {
  FieldMatrix<F> all(0, basis_size(config.nvars(), d), config.field.zero());
  for (const auto& c : config.components) all.append_rows(component_constraints(config.field, c, m, d));
  return all;
}

template <Field F>
DegreeSlice<F> slice(const Configuration<F>& config, std::size_t m, std::size_t d) {
  if (m == 0) throw Error(ErrorKind::Usage, "multiplicity must be at least 1");
  detail::check_characteristic(config.field, d);
  DegreeSlice<F> s;
  s.m = m;
  s.d = d;
  s.constraints = slice_constraints(config, m, d);
  s.rank = rank(config.field, s.constraints);
  s.dim = s.constraints.cols() - s.rank;
  return s;
}

template <Field F>
std::size_t slice_dim(const Configuration<F>& config, std::size_t m, std::size_t d) {
  return slice(config, m, d).dim;
}

/// A nonzero vector in the kernel, if any. Over Q the modular certificate is
/// tried first; fraction-free elimination settles inconclusive cases.
template <Field F>
std::optional<Vec<F>> kernel_witness(const F& field, const FieldMatrix<F>& constraints) {
  if constexpr (std::is_same_v<F, Rationals>) {
    const auto cert = certified_kernel_vector(detail::integer_rows(constraints), constraints.cols());
    if (cert.status == KernelStatus::Trivial) return std::nullopt;
    if (cert.status == KernelStatus::Found) {
      Vec<F> v;
      v.reserve(constraints.cols());
      for (const auto& x : cert.basis.front()) v.emplace_back(x);
      return v;
    }
  }
  auto ker = nullspace(field, constraints);
  if (ker.empty()) return std::nullopt;
  return std::move(ker.front());
}

template <Field F>
struct AlphaResult {
  std::size_t degree = 0;
  Vec<F> witness;  // coefficient vector of a nonzero member of degree `degree`
};

/// Least degree of a nonzero form in the m-th symbolic power. The search runs
/// upward from `start` (which must be a known lower bound, e.g. 1 or the
/// alpha of a smaller power) and is capped at m * #components, the degree of
/// a product of m-th powers of one form through each component.
///
/// With `want_witness` false only ranks are computed and the witness is left
/// empty; over Q this avoids lifting a kernel vector whose entries can run to
/// thousands of bits.
template <Field F>
AlphaResult<F> alpha(const Configuration<F>& config, std::size_t m, std::size_t start = 1, bool want_witness = true) {
  if (m == 0) throw Error(ErrorKind::Usage, "multiplicity must be at least 1");
  const std::size_t bound = m * config.size();
  for (std::size_t d = std::max<std::size_t>(start, 1); d <= bound; ++d) {
    detail::check_characteristic(config.field, d);
    const auto constraints = slice_constraints(config, m, d);
    if (!want_witness) {
      if (rank(config.field, constraints) < constraints.cols()) return {d, {}};
      continue;
    }
    if (auto w = kernel_witness(config.field, constraints)) return {d, std::move(*w)};
  }
  throw Error(ErrorKind::BoundExceeded, "no member found up to degree " + std::to_string(bound));
}

/// H(R/I^(m), t) = dim R_t - dim (I^(m))_t.
template <Field F>
std::size_t hilbert(const Configuration<F>& config, std::size_t m, std::size_t t) {
  return basis_size(config.nvars(), t) - slice_dim(config, m, t);
}

template <Field F>
std::vector<std::size_t> hilbert_function(const Configuration<F>& config, std::size_t m, std::size_t tmax) {
  std::vector<std::size_t> h;
  h.reserve(tmax + 1);
  for (std::size_t t = 0; t <= tmax; ++t) h.push_back(hilbert(config, m, t));
  return h;
}

/// alpha(I^(m)) for m = 1..mmax, each search starting at the previous value
/// (I^(m+1) is contained in I^(m)).
template <Field F>
std::vector<std::size_t> alpha_sequence(const Configuration<F>& config, std::size_t mmax) {
  std::vector<std::size_t> out;
  std::size_t start = 1;
  for (std::size_t m = 1; m <= mmax; ++m) {
    start = alpha(config, m, start, false).degree;
    out.push_back(start);
  }
  return out;
}

/// [alpha_{2,1}, ..., alpha_{mmax,mmax-1}] with alpha_{m,n} = alpha(I^(m)) - alpha(I^(n)).
template <Field F>
std::vector<std::size_t> alpha_differences(const Configuration<F>& config, std::size_t mmax) {
  if (mmax < 2) throw Error(ErrorKind::Usage, "mmax must be at least 2");
  const auto a = alpha_sequence(config, mmax);
  std::vector<std::size_t> diffs;
  for (std::size_t i = 1; i < a.size(); ++i) diffs.push_back(a[i] - a[i - 1]);
  return diffs;
}

/// alpha(I^(m)) / m for m = 1..mmax.
template <Field F>
std::vector<BigRational> waldschmidt_estimates(const Configuration<F>& config, std::size_t mmax) {
  if (mmax < 1) throw Error(ErrorKind::Usage, "mmax must be at least 1");
  const auto a = alpha_sequence(config, mmax);
  std::vector<BigRational> out;
  for (std::size_t m = 1; m <= a.size(); ++m) {
    BigRational q(static_cast<unsigned long>(a[m - 1]), static_cast<unsigned long>(m));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

/// Type (alpha(Z), alpha(2Z)) with minimal-degree witnesses.
template <Field F>
struct TypeReport {
  std::size_t alpha1 = 0;
  std::size_t alpha2 = 0;
  std::size_t t = 0;
  Vec<F> witness1;
  Vec<F> witness2;
};

template <Field F>
TypeReport<F> type_of(const Configuration<F>& config, bool want_witness = true) {
  auto a1 = alpha(config, 1, 1, want_witness);
  auto a2 = alpha(config, 2, a1.degree, want_witness);
  if (a2.degree <= a1.degree) {
    throw Error(ErrorKind::InvariantViolation, "alpha(2Z) = " + std::to_string(a2.degree) +
                                                   " does not exceed alpha(Z) = " + std::to_string(a1.degree));
  }
  TypeReport<F> r;
  r.alpha1 = a1.degree;
  r.alpha2 = a2.degree;
  r.t = a2.degree - a1.degree;
  r.witness1 = std::move(a1.witness);
  r.witness2 = std::move(a2.witness);
  return r;
}

}  // namespace fatlines
