#pragma once

// Structure detection (collinear / star points in P^2, coplanar / pseudostar
// lines in P^3), the finite-degree ACM certificate via a generic hyperplane
// section, and the type-versus-structure consistency report.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fatlines/geometry.hpp"
#include "fatlines/symbolic.hpp"

namespace fatlines {

/// d with C(d, 2) = s, if any.
inline std::optional<std::size_t> star_order(std::size_t s) {
  for (std::size_t d = 2; d * (d - 1) / 2 <= s; ++d)
    if (d * (d - 1) / 2 == s) return d;
  return std::nullopt;
}

/// The line of P^2 through all points, if they are collinear.
template <Field F>
std::optional<Hyperplane<F>> detect_collinear(const F& field, std::span<const HPoint<F>> points) {
  if (points.empty()) return std::nullopt;
  FieldMatrix<F> m(0, 3, field.zero());
  for (const auto& p : points) m.append_row(std::span<const typename F::value_type>(p.coords));
  auto ker = nullspace(field, m);
  if (ker.empty()) return std::nullopt;
  return make_hyperplane(field, std::move(ker.front()));
}

/// d lines (of P^2, or planes of P^3) and, for each component, the indices of
/// the two that contain it.
template <Field F>
struct StarCertificate {
  std::size_t d = 0;
  std::vector<Hyperplane<F>> planes;
  std::vector<std::array<std::size_t, 2>> incidence;
};

template <Field F>
using PseudostarCertificate = StarCertificate<F>;

namespace detail {

/// Shared core of the star and pseudostar detectors. `span_of(i, j)` returns
/// the hyperplane spanned by components i and j (if they span one) and
/// `on(h, k)` tests whether component k lies in h.
template <Field F, class Span, class On>
std::optional<StarCertificate<F>> detect_star_like(std::size_t s, Span span_of, On on) {
  const auto d = star_order(s);
  if (!d || *d < 3) return std::nullopt;
  std::set<std::vector<std::size_t>> seen;
  StarCertificate<F> cert;
  cert.d = *d;
  std::vector<std::vector<std::size_t>> members_of;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      auto h = span_of(i, j);
      if (!h) continue;
      std::vector<std::size_t> members;
      for (std::size_t k = 0; k < s; ++k)
        if (on(*h, k)) members.push_back(k);
      if (!seen.insert(members).second) continue;
      if (members.size() >= *d) return std::nullopt;  // too many components on one hyperplane
      if (members.size() + 1 != *d) continue;
      if (cert.planes.size() == *d) return std::nullopt;
      cert.planes.push_back(std::move(*h));
      members_of.push_back(std::move(members));
    }
  }
  if (cert.planes.size() != *d) return std::nullopt;
  std::vector<std::vector<std::size_t>> containing(s);
  for (std::size_t p = 0; p < members_of.size(); ++p)
    for (auto k : members_of[p]) containing[k].push_back(p);
  for (const auto& c : containing) {
    if (c.size() != 2) return std::nullopt;
    cert.incidence.push_back({c[0], c[1]});
  }
  return cert;
}

}  // namespace detail

/// Star configuration of C(d,2) points of P^2: d lines, each through exactly
/// d-1 of the points, each point on exactly two of the lines.
template <Field F>
std::optional<StarCertificate<F>> detect_star_points(const F& field, std::span<const HPoint<F>> points) {
  auto span_of = [&](std::size_t i, std::size_t j) -> std::optional<Hyperplane<F>> {
    const HPoint<F> two[] = {points[i], points[j]};
    return detect_collinear(field, std::span<const HPoint<F>>(two));
  };
  auto on = [&](const Hyperplane<F>& h, std::size_t k) { return incident(field, h, points[k]); };
  return detail::detect_star_like<F>(points.size(), span_of, on);
}

/// Pseudostar: C(d,2) lines, the pairwise intersections of d planes no three of
/// which share a line.
template <Field F>
std::optional<PseudostarCertificate<F>> detect_pseudostar(const F& field, std::span<const Line3<F>> lines) {
  auto span_of = [&](std::size_t i, std::size_t j) -> std::optional<Hyperplane<F>> {
    if (lines_meet(field, lines[i], lines[j]).kind != MeetKind::Point) return std::nullopt;
    const Line3<F> two[] = {lines[i], lines[j]};
    return coplanar_witness(field, std::span<const Line3<F>>(two));
  };
  auto on = [&](const Hyperplane<F>& h, std::size_t k) { return contained_in(field, lines[k], h); };
  return detail::detect_star_like<F>(lines.size(), span_of, on);
}

template <Field F>
std::vector<HPoint<F>> component_points(const Configuration<F>& config) {
  std::vector<HPoint<F>> pts;
  for (const auto& c : config.components) pts.push_back(c.span.front());
  return pts;
}

/// The union of the points of P^2 given as a configuration.
template <Field F>
Configuration<F> point_configuration(const F& field, std::span<const HPoint<F>> points, std::string label = {}) {
  std::vector<LinearComponent<F>> comps;
  for (const auto& p : points) comps.push_back(point_component(field, p));
  return make_configuration(field, Ambient::P2, std::move(comps), std::move(label));
}

struct HilbertComparison {
  std::size_t t = 0;
  std::size_t delta = 0;    // H_X(t) - H_X(t-1)
  std::size_t section = 0;  // H of the section points at t
};

template <Field F>
struct AcmCertificate {
  std::size_t tmax = 0;
  Hyperplane<F> hyperplane;
  Section<F> section;
  std::vector<HilbertComparison> comparisons;
  std::optional<std::size_t> fails_at;  // empty: consistent up to tmax

  bool consistent() const { return !fails_at.has_value(); }
  std::string verdict() const {
    return fails_at ? "FailsAt(" + std::to_string(*fails_at) + ")" : "ConsistentUpTo(" + std::to_string(tmax) + ")";
  }
};

template <Field F>
void require_lines(const Configuration<F>& config) {
  if (config.ambient != Ambient::P3) throw Error(ErrorKind::Usage, "a configuration of lines in P3 is required");
}

/// Compares the first difference of the Hilbert function of the lines with
/// the Hilbert function of a generic hyperplane section for t <= tmax. Agreement
/// is necessary for ACM; this is evidence up to tmax, not a proof.
template <Field F>
AcmCertificate<F> acm_certificate(const Configuration<F>& config, std::size_t tmax, std::uint64_t seed) {
  require_lines(config);
  if (tmax < 1) throw Error(ErrorKind::Usage, "tmax must be at least 1");
  const auto& field = config.field;
  const auto lines = std::span<const Line3<F>>(config.components);
  AcmCertificate<F> cert;
  cert.tmax = tmax;
  cert.hyperplane = random_hyperplane(field, seed, lines);
  cert.section = hyperplane_section(field, lines, cert.hyperplane);
  const auto points = point_configuration(field, std::span<const HPoint<F>>(cert.section.points));
  std::size_t prev = 0;
  for (std::size_t t = 0; t <= tmax; ++t) {
    const auto h = hilbert(config, 1, t);
    HilbertComparison c{t, h - prev, hilbert(points, 1, t)};
    prev = h;
    if (c.delta != c.section && !cert.fails_at) cert.fails_at = t;
    cert.comparisons.push_back(c);
  }
  return cert;
}

enum class Structure { Coplanar, Pseudostar, Collinear, Star, Other };

inline const char* to_string(Structure s) {
  switch (s) {
    case Structure::Coplanar: return "Coplanar";
    case Structure::Pseudostar: return "Pseudostar";
    case Structure::Collinear: return "Collinear";
    case Structure::Star: return "Star";
    case Structure::Other: return "Other";
  }
  return "?";
}

template <Field F>
struct StructureReport {
  Structure kind = Structure::Other;
  std::optional<Hyperplane<F>> plane;        // Coplanar / Collinear
  std::optional<StarCertificate<F>> star;    // Pseudostar / Star
};

/// Coplanar is tested before Pseudostar (and Collinear before Star).
template <Field F>
StructureReport<F> detect_structure(const Configuration<F>& config) {
  const auto& field = config.field;
  StructureReport<F> r;
  if (config.ambient == Ambient::P3) {
    const auto lines = std::span<const Line3<F>>(config.components);
    if ((r.plane = coplanar_witness(field, lines))) {
      r.kind = Structure::Coplanar;
    } else if ((r.star = detect_pseudostar(field, lines))) {
      r.kind = Structure::Pseudostar;
    }
  } else {
    const auto pts = component_points(config);
    const auto span = std::span<const HPoint<F>>(pts);
    if ((r.plane = detect_collinear(field, span))) {
      r.kind = Structure::Collinear;
    } else if ((r.star = detect_star_points(field, span))) {
      r.kind = Structure::Star;
    }
  }
  return r;
}

template <Field F>
struct ClassificationReport {
  TypeReport<F> type;
  StructureReport<F> structure;
  std::optional<AcmCertificate<F>> acm;  // lines only; points of P^2 are always ACM
  bool forward = true;                   // (t = 1 and ACM-consistent) => structure detected
  bool backward = true;                  // structure detected => t = 1
  bool theorem_consistent() const { return forward && backward; }
};

template <Field F>
ClassificationReport<F> classify(const Configuration<F>& config, std::optional<std::size_t> tmax, std::uint64_t seed,
                                 bool want_witness = true) {
  ClassificationReport<F> r;
  r.type = type_of(config, want_witness);
  r.structure = detect_structure(config);
  bool acm_ok = true;
  if (config.ambient == Ambient::P3) {
    r.acm = acm_certificate(config, tmax.value_or(config.size() + 2), seed);
    acm_ok = r.acm->consistent();
  }
  const bool detected = r.structure.kind != Structure::Other;
  r.forward = !(r.type.t == 1 && acm_ok) || detected;
  r.backward = !detected || r.type.t == 1;
  return r;
}

template <Field F>
struct SectionReport {
  Hyperplane<F> hyperplane;
  Section<F> section;
  StructureReport<F> structure;  // Collinear / Star / Other
  TypeReport<F> section_type;
  TypeReport<F> lines_type;
  bool alpha_match = false;   // alpha(L) == alpha(L cap H)
  bool alpha2_match = false;  // alpha(2L) == alpha(2(L cap H))
  std::optional<bool> chain;  // for pseudostars: d >= alpha(2L) = alpha(2(L cap H)) > alpha(L cap H) = d - 1
};

template <Field F>
SectionReport<F> check_bc_section(const Configuration<F>& config, std::uint64_t seed, bool want_witness = false) {
  require_lines(config);
  const auto& field = config.field;
  const auto lines = std::span<const Line3<F>>(config.components);
  SectionReport<F> r;
  r.hyperplane = random_hyperplane(field, seed, lines);
  r.section = hyperplane_section(field, lines, r.hyperplane);
  const auto points = point_configuration(field, std::span<const HPoint<F>>(r.section.points), "section");
  r.structure = detect_structure(points);
  r.section_type = type_of(points, want_witness);
  r.lines_type = type_of(config, want_witness);
  r.alpha_match = r.section_type.alpha1 == r.lines_type.alpha1;
  r.alpha2_match = r.section_type.alpha2 == r.lines_type.alpha2;
  if (auto cert = detect_pseudostar(field, lines)) {
    const auto d = cert->d;
    r.chain = d >= r.lines_type.alpha2 && r.lines_type.alpha2 == r.section_type.alpha2 &&
              r.section_type.alpha2 > r.section_type.alpha1 && r.section_type.alpha1 + 1 == d;
  }
  return r;
}

}  // namespace fatlines
