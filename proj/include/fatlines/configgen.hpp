#pragma once

// Seeded generators for the configuration families used throughout the
// library, and the JSON configuration format.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "fatlines/field.hpp"
#include "fatlines/geometry.hpp"
#include "fatlines/symbolic.hpp"

namespace fatlines {

using Json = nlohmann::json;

/// Which ground field a configuration lives over: Q when `prime` is 0.
struct FieldSpec {
  std::uint64_t prime = 0;

  bool rational() const { return prime == 0; }
  bool operator==(const FieldSpec&) const = default;
};

/// Parses "Q" or "GFP:<p>" (the prefix is case-insensitive).
inline FieldSpec parse_field_spec(const std::string& text) {
  if (text == "Q" || text == "q") return {};
  std::string upper = text;
  for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (upper.rfind("GFP:", 0) == 0 && upper.size() > 4) {
    const auto digits = text.substr(4);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 19) {
      const auto p = std::stoull(digits);
      PrimeField check(p);  // throws NonPrimeModulus
      return {p};
    }
  }
  throw Error(ErrorKind::SchemaError, "field must be \"Q\" or \"GFP:<prime>\", got \"" + text + "\"");
}

inline std::string to_string(const FieldSpec& f) {
  return f.rational() ? std::string("Q") : "GFP:" + std::to_string(f.prime);
}

/// Field named by FATLINES_FIELD, Q when unset.
inline FieldSpec default_field_spec() {
  const char* env = std::getenv("FATLINES_FIELD");
  if (env == nullptr || *env == '\0') return {};
  return parse_field_spec(env);
}

enum class Family {
  StarPointsP2,
  PseudostarGeneric,
  ConeOverStar,
  Coplanar,
  SkewPair,
  Fig2Triple,
  CollinearPoints,
  RandomLines,
  ExplicitJSON,
};

inline const char* to_string(Family f) {
  switch (f) {
    case Family::StarPointsP2: return "star-points";
    case Family::PseudostarGeneric: return "pseudostar";
    case Family::ConeOverStar: return "cone";
    case Family::Coplanar: return "coplanar";
    case Family::SkewPair: return "skew";
    case Family::Fig2Triple: return "fig2";
    case Family::CollinearPoints: return "collinear";
    case Family::RandomLines: return "random-lines";
    case Family::ExplicitJSON: return "json";
  }
  return "?";
}

inline Family parse_family(const std::string& name) {
  for (auto f : {Family::StarPointsP2, Family::PseudostarGeneric, Family::ConeOverStar, Family::Coplanar,
                 Family::SkewPair, Family::Fig2Triple, Family::CollinearPoints, Family::RandomLines,
                 Family::ExplicitJSON}) {
    if (name == to_string(f)) return f;
  }
  throw Error(ErrorKind::Usage, "unknown family \"" + name + "\"");
}

struct GenSpec {
  Family family = Family::SkewPair;
  std::size_t size = 0;  // d for star/pseudostar/cone, n for coplanar/collinear, s for random lines
  std::uint64_t seed = 0;
  FieldSpec field;
  std::string json;  // document for ExplicitJSON
};

namespace detail {

template <Field F>
bool independent(const F& field, std::initializer_list<const Vec<F>*> forms) {
  FieldMatrix<F> m(0, forms.begin()[0]->size(), field.zero());
  for (const auto* f : forms) m.append_row(std::span<const typename F::value_type>(*f));
  return rank(field, m) == forms.size();
}

[[noreturn]] inline void degenerate(const std::string& what) {
  throw Error(ErrorKind::DegenerateDraw,
              what + ": no admissible draw within " + std::to_string(kRetryBudget) + " attempts");
}

/// d forms in `nvars` variables, any three of them independent (for lines of
/// P^2: no two equal, no three concurrent; for planes of P^3: no two equal, no
/// three through a common line).
template <Field F>
std::vector<Vec<F>> general_forms(const F& field, std::mt19937_64& rng, std::size_t d, std::size_t nvars,
                                  const std::string& what) {
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<Vec<F>> forms;
    for (std::size_t i = 0; i < d; ++i) forms.push_back(draw_form(field, rng, nvars));
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i)
      for (std::size_t j = i + 1; j < d && ok; ++j)
        for (std::size_t k = j + 1; k < d && ok; ++k) ok = independent(field, {&forms[i], &forms[j], &forms[k]});
    if (ok) return forms;
  }
  degenerate(what);
}

template <Field F>
std::vector<Vec<F>> embed_planes(const F& field, const std::vector<Vec<F>>& traces) {
  std::vector<Vec<F>> planes;
  for (const auto& l : traces) {
    auto h = l;
    h.push_back(field.zero());
    planes.push_back(std::move(h));
  }
  return planes;
}

template <Field F>
std::vector<LinearComponent<F>> pairwise_meets(const F& field, const std::vector<Vec<F>>& forms) {
  std::vector<LinearComponent<F>> out;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) out.push_back(make_component(field, forms[i], forms[j]));
  return out;
}

/// Components (base, others[i]); fails when two of them coincide.
template <Field F>
std::optional<std::vector<LinearComponent<F>>> pencil_members(const F& field, const Vec<F>& base,
                                                              const std::vector<Vec<F>>& others) {
  std::vector<LinearComponent<F>> out;
  for (const auto& q : others) {
    if (!independent(field, {&base, &q})) return std::nullopt;
    out.push_back(make_component(field, base, q));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (same_component(field, out[i], out[j])) return std::nullopt;
  return out;
}

template <Field F>
std::vector<LinearComponent<F>> pencil_family(const F& field, std::mt19937_64& rng, std::size_t n,
                                              std::size_t nvars, const std::string& what) {
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    auto base = draw_form(field, rng, nvars);
    std::vector<Vec<F>> others;
    for (std::size_t i = 0; i < n; ++i) others.push_back(draw_form(field, rng, nvars));
    if (auto comps = pencil_members(field, base, others)) return std::move(*comps);
  }
  degenerate(what);
}

inline void require_size(const GenSpec& spec, std::size_t min, const char* name) {
  if (spec.size < min) {
    throw Error(ErrorKind::Usage, std::string(to_string(spec.family)) + " needs " + name +
                                      " >= " + std::to_string(min) + ", got " + std::to_string(spec.size));
  }
}

}  // namespace detail

template <Field F>
Configuration<F> parse_config(const F& field, const std::string& text);

/// Builds the configuration described by `spec` over `field` (which must
/// match spec.field). Deterministic in (family, size, seed, field).
template <Field F>
Configuration<F> generate(const F& field, const GenSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const std::string label = std::string(to_string(spec.family)) +
                            (spec.size ? "(" + std::to_string(spec.size) + ")" : std::string()) +
                            " seed=" + std::to_string(spec.seed);
  auto e = [&](std::initializer_list<long> v) { return integer_vector(field, v); };
  switch (spec.family) {
    case Family::StarPointsP2: {
      detail::require_size(spec, 3, "d");
      auto lines = detail::general_forms(field, rng, spec.size, 3, "star points");
      return make_configuration(field, Ambient::P2, detail::pairwise_meets(field, lines), label);
    }
    case Family::PseudostarGeneric: {
      detail::require_size(spec, 3, "d");
      auto planes = detail::general_forms(field, rng, spec.size, 4, "pseudostar");
      return make_configuration(field, Ambient::P3, detail::pairwise_meets(field, planes), label);
    }
    case Family::ConeOverStar: {
      detail::require_size(spec, 3, "d");
      auto traces = detail::general_forms(field, rng, spec.size, 3, "cone");
      return make_configuration(field, Ambient::P3, detail::pairwise_meets(field, detail::embed_planes(field, traces)),
                                label);
    }
    case Family::Coplanar: {
      detail::require_size(spec, 1, "n");
      return make_configuration(field, Ambient::P3, detail::pencil_family(field, rng, spec.size, 4, "coplanar"),
                                label);
    }
    case Family::CollinearPoints: {
      detail::require_size(spec, 1, "n");
      return make_configuration(field, Ambient::P2, detail::pencil_family(field, rng, spec.size, 3, "collinear"),
                                label);
    }
    case Family::SkewPair:
      return make_configuration(field, Ambient::P3,
                                {make_component(field, e({1, 0, 0, 0}), e({0, 1, 0, 0})),
                                 make_component(field, e({0, 0, 1, 0}), e({0, 0, 0, 1}))},
                                "skew");
    case Family::Fig2Triple:
      return make_configuration(field, Ambient::P3,
                                {make_component(field, e({1, 0, 0, 0}), e({0, 0, 1, 0})),
                                 make_component(field, e({0, 1, 0, 0}), e({0, 0, 1, 0})),
                                 make_component(field, e({1, 0, 0, 0}), e({0, 0, 0, 1}))},
                                "fig2");
    case Family::RandomLines: {
      detail::require_size(spec, 1, "s");
      for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        std::vector<LinearComponent<F>> lines;
        bool ok = true;
        for (std::size_t i = 0; i < spec.size && ok; ++i) {
          auto a = draw_form(field, rng, 4);
          auto b = draw_form(field, rng, 4);
          if (!detail::independent(field, {&a, &b})) {
            ok = false;
            break;
          }
          lines.push_back(make_component(field, std::move(a), std::move(b)));
          for (std::size_t j = 0; j + 1 < lines.size() && ok; ++j) ok = !same_component(field, lines[j], lines.back());
        }
        if (ok) return make_configuration(field, Ambient::P3, std::move(lines), label);
      }
      detail::degenerate("random lines");
    }
    case Family::ExplicitJSON:
      return parse_config(field, spec.json);
  }
  throw Error(ErrorKind::Usage, "unsupported family");
}

/// n points on the smooth conic xz = y^2, at distinct seeded parameters.
template <Field F>
Configuration<F> conic_points(const F& field, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::vector<LinearComponent<F>> pts;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const auto s = field.from_int(draw_coefficient(rng));
      const auto u = field.from_int(draw_coefficient(rng));
      HPoint<F> p;
      p.coords = {field.mul(s, s), field.mul(s, u), field.mul(u, u)};
      if (!normalize_projective(field, p.coords)) {
        ok = false;
        break;
      }
      for (const auto& q : pts) ok = ok && !contains(field, q, p);
      if (ok) pts.push_back(point_component(field, p));
    }
    if (ok) return make_configuration(field, Ambient::P2, std::move(pts), "conic(" + std::to_string(n) + ")");
  }
  detail::degenerate("conic points");
}

namespace detail {

inline Json integer_json(const BigInt& n) {
  if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
  return n.get_str();
}

/// Integer coefficients of a form: denominators cleared, no other rescaling,
/// so integer input is reproduced verbatim.
template <Field F>
std::vector<BigInt> form_integers(const F& field, const Vec<F>& form) {
  std::vector<BigInt> out;
  if constexpr (std::is_same_v<F, Rationals>) {
    BigInt den = 1;
    for (const auto& x : form) den = lcm(den, BigInt(x.get_den()));
    for (const auto& x : form) out.push_back(x.get_num() * (den / x.get_den()));
  } else {
    for (const auto& x : form) out.push_back(field.to_integer(x));
  }
  return out;
}

[[noreturn]] inline void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::SchemaError, where + ": " + what);
}

inline BigInt parse_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
    return BigInt(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const auto body = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? s.substr(1) : s;
    if (!body.empty() && body.find_first_not_of("0123456789") == std::string::npos) {
      return BigInt(s[0] == '+' ? body : s);
    }
  }
  schema(where, "expected an integer");
}

}  // namespace detail

inline FieldSpec field_spec_of(const Rationals&) { return {}; }
inline FieldSpec field_spec_of(const PrimeField& f) { return {f.modulus()}; }

inline Json field_json(const FieldSpec& f) {
  if (f.rational()) return "Q";
  return Json{{"GFp", f.prime}};
}

/// Field declared by a configuration document; `fallback` when absent.
inline FieldSpec document_field(const Json& doc, const FieldSpec& fallback) {
  if (!doc.is_object() || !doc.contains("field")) return fallback;
  const auto& f = doc["field"];
  if (f.is_string() && f.get_ref<const std::string&>() == "Q") return {};
  if (f.is_object() && f.size() == 1 && f.contains("GFp")) {
    const auto p = detail::parse_integer(f["GFp"], "field.GFp");
    if (sgn(p) <= 0 || !p.fits_ulong_p()) throw Error(ErrorKind::NonPrimeModulus, p.get_str() + " is not a supported prime");
    PrimeField check(p.get_ui());
    return {p.get_ui()};
  }
  detail::schema("field", "expected \"Q\" or {\"GFp\": p}");
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("invalid JSON: ") + e.what());
  }
}

template <Field F>
Configuration<F> config_from_json(const F& field, const Json& doc) {
  using detail::schema;
  if (!doc.is_object()) schema("document", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "ambient" && key != "field" && key != "label" && key != "components") schema(key, "unknown key");
  }
  if (document_field(doc, field_spec_of(field)) != field_spec_of(field)) {
    schema("field", "document field does not match the requested field " + field.name());
  }
  if (!doc.contains("ambient") || !doc["ambient"].is_string()) schema("ambient", "expected \"P2\" or \"P3\"");
  const auto& amb = doc["ambient"].get_ref<const std::string&>();
  if (amb != "P2" && amb != "P3") schema("ambient", "expected \"P2\" or \"P3\"");
  const Ambient ambient = amb == "P2" ? Ambient::P2 : Ambient::P3;
  const std::size_t n = ambient_vars(ambient);
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) schema("label", "expected a string");
    label = doc["label"].get<std::string>();
  }
  if (!doc.contains("components") || !doc["components"].is_array()) schema("components", "expected an array");
  std::vector<LinearComponent<F>> comps;
  const auto& arr = doc["components"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = "components[" + std::to_string(i) + "]";
    const auto& c = arr[i];
    if (!c.is_object()) schema(at, "expected an object");
    for (const auto& [key, value] : c.items())
      if (key != "kind" && key != "forms") schema(at + "." + key, "unknown key");
    const std::string kind = ambient == Ambient::P2 ? "point" : "line";
    if (!c.contains("kind") || c["kind"] != kind) schema(at + ".kind", "expected \"" + kind + "\"");
    if (!c.contains("forms") || !c["forms"].is_array() || c["forms"].size() != 2) {
      schema(at + ".forms", "expected two linear forms");
    }
    std::array<Vec<F>, 2> forms;
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& f = c["forms"][k];
      const std::string fat = at + ".forms[" + std::to_string(k) + "]";
      if (!f.is_array() || f.size() != n) schema(fat, "expected " + std::to_string(n) + " coefficients");
      for (std::size_t v = 0; v < n; ++v)
        forms[k].push_back(field.from_integer(detail::parse_integer(f[v], fat + "[" + std::to_string(v) + "]")));
    }
    try {
      comps.push_back(make_component(field, std::move(forms[0]), std::move(forms[1])));
    } catch (const Error& e) {
      throw Error(e.kind(), at + ": " + e.detail());
    }
  }
  return make_configuration(field, ambient, std::move(comps), std::move(label));
}

template <Field F>
Configuration<F> parse_config(const F& field, const std::string& text) {
  return config_from_json(field, parse_json(text));
}

template <Field F>
Json config_to_json(const Configuration<F>& config) {
  Json comps = Json::array();
  const char* kind = config.ambient == Ambient::P2 ? "point" : "line";
  for (const auto& c : config.components) {
    Json forms = Json::array();
    for (const auto& f : c.forms) {
      Json row = Json::array();
      for (const auto& x : detail::form_integers(config.field, f)) row.push_back(detail::integer_json(x));
      forms.push_back(std::move(row));
    }
    comps.push_back(Json{{"kind", kind}, {"forms", std::move(forms)}});
  }
  return Json{{"ambient", to_string(config.ambient)},
              {"field", field_json(field_spec_of(config.field))},
              {"label", config.label},
              {"components", std::move(comps)}};
}

template <Field F>
std::string serialize_config(const Configuration<F>& config, int indent = 2) {
  return config_to_json(config).dump(indent);
}

}  // namespace fatlines
