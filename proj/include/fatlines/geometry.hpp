#pragma once

// Projective points, hyperplanes and codimension-2 linear subspaces (points of
// P^2, lines of P^3), with incidence predicates and generic hyperplane
// sections.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fatlines/field.hpp"
#include "fatlines/matrix.hpp"

namespace fatlines {

/// A point of P^N; the first nonzero coordinate is 1.
template <Field F>
struct HPoint {
  Vec<F> coords;

  bool operator==(const HPoint&) const = default;
};

/// A hyperplane of P^N given by its linear form; normalized like HPoint.
template <Field F>
struct Hyperplane {
  Vec<F> form;

  bool operator==(const Hyperplane&) const = default;
};

template <Field F>
HPoint<F> make_point(const F& field, Vec<F> coords) {
  if (!normalize_projective(field, coords)) throw Error(ErrorKind::InvariantViolation, "zero vector is not a point");
  return {std::move(coords)};
}

template <Field F>
Hyperplane<F> make_hyperplane(const F& field, Vec<F> form) {
  if (!normalize_projective(field, form)) throw Error(ErrorKind::InvariantViolation, "zero form is not a hyperplane");
  return {std::move(form)};
}

template <Field F>
bool incident(const F& field, const Hyperplane<F>& h, const HPoint<F>& p) {
  return field.is_zero(dot(field, std::span<const typename F::value_type>(h.form),
                           std::span<const typename F::value_type>(p.coords)));
}

template <Field F>
FieldMatrix<F> stack(const F& field, std::span<const Vec<F>> rows, std::size_t cols) {
  FieldMatrix<F> m(0, cols, field.zero());
  for (const auto& r : rows) m.append_row(std::span<const typename F::value_type>(r));
  return m;
}

/// A codimension-2 linear subspace {L1 = L2 = 0}: a point of P^2 or a line of
/// P^3. `forms` holds the two defining linear forms exactly as given (they
/// generate the ideal); `span` holds N-1 points spanning the subspace.
template <Field F>
struct LinearComponent {
  std::array<Vec<F>, 2> forms;
  std::vector<HPoint<F>> span;

  std::size_t nvars() const { return forms[0].size(); }

  FieldMatrix<F> form_matrix(const F& field) const {
    return stack(field, std::span<const Vec<F>>(forms), nvars());
  }
  FieldMatrix<F> span_matrix(const F& field) const {
    FieldMatrix<F> m(0, nvars(), field.zero());
    for (const auto& p : span) m.append_row(std::span<const typename F::value_type>(p.coords));
    return m;
  }
};

template <Field F>
using Line3 = LinearComponent<F>;

/// Builds the component {l1 = l2 = 0}. Throws DependentForms unless the forms
/// are linearly independent.
template <Field F>
LinearComponent<F> make_component(const F& field, Vec<F> l1, Vec<F> l2) {
  LinearComponent<F> c{{std::move(l1), std::move(l2)}, {}};
  if (c.forms[0].size() != c.forms[1].size() || c.forms[0].size() < 3) {
    throw Error(ErrorKind::DependentForms, "forms must have matching length >= 3");
  }
  auto fm = c.form_matrix(field);
  if (rank(field, fm) != 2) throw Error(ErrorKind::DependentForms, "defining forms are linearly dependent");
  for (auto& v : nullspace(field, fm)) c.span.push_back(make_point(field, std::move(v)));
  return c;
}

template <Field F>
Line3<F> line_from_planes(const F& field, const Hyperplane<F>& h1, const Hyperplane<F>& h2) {
  if (h1.form.size() != 4 || h2.form.size() != 4) throw Error(ErrorKind::DependentForms, "planes of P^3 expected");
  return make_component(field, h1.form, h2.form);
}

/// True when both components are the same subspace.
template <Field F>
bool same_component(const F& field, const LinearComponent<F>& a, const LinearComponent<F>& b) {
  if (a.nvars() != b.nvars()) return false;
  auto m = a.form_matrix(field);
  m.append_rows(b.form_matrix(field));
  return rank(field, m) == 2;
}

/// True when the point lies on the component.
template <Field F>
bool contains(const F& field, const LinearComponent<F>& c, const HPoint<F>& p) {
  for (const auto& f : c.forms) {
    if (!field.is_zero(dot(field, std::span<const typename F::value_type>(f),
                           std::span<const typename F::value_type>(p.coords))))
      return false;
  }
  return true;
}

/// True when the component lies inside the hyperplane.
template <Field F>
bool contained_in(const F& field, const LinearComponent<F>& c, const Hyperplane<F>& h) {
  for (const auto& p : c.span)
    if (!incident(field, h, p)) return false;
  return true;
}

enum class MeetKind { Point, Skew, Equal };

template <Field F>
struct MeetResult {
  MeetKind kind;
  std::optional<HPoint<F>> point;
};

template <Field F>
MeetResult<F> lines_meet(const F& field, const Line3<F>& l1, const Line3<F>& l2) {
  auto pts = l1.span_matrix(field);
  pts.append_rows(l2.span_matrix(field));
  switch (rank(field, pts)) {
    case 4:
      return {MeetKind::Skew, std::nullopt};
    case 3: {
      auto forms = l1.form_matrix(field);
      forms.append_rows(l2.form_matrix(field));
      auto ker = nullspace(field, forms);
      return {MeetKind::Point, make_point(field, std::move(ker.front()))};
    }
    default:
      return {MeetKind::Equal, std::nullopt};
  }
}

template <Field F>
void require_distinct(const F& field, std::span<const Line3<F>> lines) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (same_component(field, lines[i], lines[j])) {
        throw Error(ErrorKind::DuplicateLine,
                    "lines " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
}

/// The plane containing every line, if there is one. For a single line the
/// first plane of the pencil (in nullspace order) is returned.
template <Field F>
std::optional<Hyperplane<F>> coplanar_witness(const F& field, std::span<const Line3<F>> lines) {
  if (lines.empty()) return std::nullopt;
  require_distinct(field, lines);
  FieldMatrix<F> pts(0, lines.front().nvars(), field.zero());
  for (const auto& l : lines) pts.append_rows(l.span_matrix(field));
  auto ker = nullspace(field, pts);
  if (ker.empty()) return std::nullopt;
  return make_hyperplane(field, std::move(ker.front()));
}

/// Intersection point of a component with a hyperplane not containing it,
/// for lines of P^3 (and, generally, any component spanned by two points).
template <Field F>
HPoint<F> meet_hyperplane(const F& field, const Line3<F>& line, const Hyperplane<F>& h) {
  const auto& a = line.span[0].coords;
  const auto& b = line.span[1].coords;
  const auto ha = dot(field, std::span<const typename F::value_type>(h.form), std::span<const typename F::value_type>(a));
  const auto hb = dot(field, std::span<const typename F::value_type>(h.form), std::span<const typename F::value_type>(b));
  if (field.is_zero(ha) && field.is_zero(hb)) throw Error(ErrorKind::LineInHyperplane, "line lies in the hyperplane");
  Vec<F> p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = field.sub(field.mul(hb, a[i]), field.mul(ha, b[i]));
  return make_point(field, std::move(p));
}

inline constexpr long kCoefficientRange = 997;
inline constexpr int kRetryBudget = 32;

/// Uniform integer in [-range, range] from a 64-bit engine. The mapping is
/// spelled out (rather than using std::uniform_int_distribution) so draws are
/// identical across standard libraries.
inline long draw_coefficient(std::mt19937_64& rng, long range = kCoefficientRange) {
  const auto span = static_cast<std::uint64_t>(2 * range + 1);
  return static_cast<long>(rng() % span) - range;
}

template <Field F>
Vec<F> draw_form(const F& field, std::mt19937_64& rng, std::size_t nvars, long range = kCoefficientRange) {
  Vec<F> v;
  v.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) v.push_back(field.from_integer(BigInt(draw_coefficient(rng, range))));
  return v;
}

/// A seeded hyperplane of P^3 certified generic for `avoid`: it contains none
/// of the lines and meets them in pairwise distinct points.
template <Field F>
Hyperplane<F> random_hyperplane(const F& field, std::uint64_t seed, std::span<const Line3<F>> avoid,
                                int retries = kRetryBudget) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < retries; ++attempt) {
    auto form = draw_form(field, rng, 4);
    if (!normalize_projective(field, form)) continue;
    Hyperplane<F> h{std::move(form)};
    bool generic = true;
    std::vector<HPoint<F>> pts;
    for (const auto& l : avoid) {
      if (contained_in(field, l, h)) {
        generic = false;
        break;
      }
      auto p = meet_hyperplane(field, l, h);
      for (const auto& q : pts) {
        if (q == p) {
          generic = false;
          break;
        }
      }
      if (!generic) break;
      pts.push_back(std::move(p));
    }
    if (generic) return h;
  }
  throw Error(ErrorKind::GenericityFailure,
              "no generic hyperplane found in " + std::to_string(retries) + " draws over " + field.name());
}

/// Identification of a hyperplane H of P^3 with P^2: drop the coordinate
/// `dropped`, the last one on which H's form is nonzero. The chart rows are
/// the remaining standard coordinate functions.
template <Field F>
struct Chart {
  Hyperplane<F> plane;
  std::size_t dropped = 3;

  FieldMatrix<F> matrix(const F& field) const {
    FieldMatrix<F> m(3, 4, field.zero());
    std::size_t r = 0;
    for (std::size_t c = 0; c < 4; ++c)
      if (c != dropped) m(r++, c) = field.one();
    return m;
  }

  HPoint<F> to_plane(const F& field, const HPoint<F>& p) const {
    Vec<F> q;
    for (std::size_t c = 0; c < 4; ++c)
      if (c != dropped) q.push_back(p.coords[c]);
    return make_point(field, std::move(q));
  }

  /// Inverse of to_plane on H.
  HPoint<F> to_space(const F& field, const HPoint<F>& q) const {
    Vec<F> p(4, field.zero());
    std::size_t r = 0;
    auto acc = field.zero();
    for (std::size_t c = 0; c < 4; ++c) {
      if (c == dropped) continue;
      p[c] = q.coords[r++];
      acc = field.add(acc, field.mul(plane.form[c], p[c]));
    }
    p[dropped] = field.neg(field.div(acc, plane.form[dropped]));
    return make_point(field, std::move(p));
  }
};

template <Field F>
Chart<F> chart_for(const F& field, const Hyperplane<F>& h) {
  Chart<F> chart{h, 0};
  for (std::size_t c = 0; c < 4; ++c)
    if (!field.is_zero(h.form[c])) chart.dropped = c;
  return chart;
}

template <Field F>
struct Section {
  Chart<F> chart;
  std::vector<HPoint<F>> points;  // in P^2, one per line, same order
};

template <Field F>
Section<F> hyperplane_section(const F& field, std::span<const Line3<F>> lines, const Hyperplane<F>& h) {
  Section<F> s{chart_for(field, h), {}};
  for (const auto& l : lines) s.points.push_back(s.chart.to_plane(field, meet_hyperplane(field, l, h)));
  return s;
}

/// The component of P^2 supported at `p`, with two independent forms through it.
template <Field F>
LinearComponent<F> point_component(const F& field, const HPoint<F>& p) {
  FieldMatrix<F> m(0, p.coords.size(), field.zero());
  m.append_row(std::span<const typename F::value_type>(p.coords));
  auto ker = nullspace(field, m);
  return make_component(field, std::move(ker[0]), std::move(ker[1]));
}

}  // namespace fatlines
