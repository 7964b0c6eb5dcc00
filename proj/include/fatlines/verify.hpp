#pragma once

// Consistency checks of the classification results over the generated
// families, as run by `fatlines verify`. Output is a deterministic table.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fatlines/classify.hpp"
#include "fatlines/configgen.hpp"

namespace fatlines {

struct CheckRow {
  std::string family;
  std::string check;
  bool pass = false;
  std::string detail;
};

struct VerifySummary {
  std::vector<CheckRow> rows;
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.pass ? 0 : 1;
    return n;
  }
  bool all_pass() const { return failures() == 0; }
};

inline std::string type_string(std::size_t a1, std::size_t a2) {
  return "(" + std::to_string(a1) + "," + std::to_string(a2) + ")";
}

template <class T>
std::string list_string(const std::vector<T>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

/// Runs every check for sizes up to `dmax` (>= 3) with generator seed `seed`.
template <Field F>
VerifySummary run_verification(const F& field, std::size_t dmax, std::uint64_t seed) {
  if (dmax < 3) throw Error(ErrorKind::Usage, "--dmax must be at least 3");
  VerifySummary out;
  auto add = [&](std::string family, std::string check, bool pass, std::string detail) {
    out.rows.push_back({std::move(family), std::move(check), pass, std::move(detail)});
  };
  auto gen = [&](Family f, std::size_t n, std::uint64_t s = 0) { return generate(field, GenSpec{f, n, s}); };
  auto name = [](Family f, std::size_t n) { return std::string(to_string(f)) + "(" + std::to_string(n) + ")"; };

  // pseudostars and cones: type (d-1, d), detected, consistent, star sections
  for (auto fam : {Family::PseudostarGeneric, Family::ConeOverStar}) {
    for (std::size_t d = 3; d <= dmax; ++d) {
      const auto c = gen(fam, d, seed);
      const auto r = classify(c, std::nullopt, seed, false);
      const auto fname = name(fam, d);
      add(fname, "type", r.type.alpha1 + 1 == d && r.type.alpha2 == d, type_string(r.type.alpha1, r.type.alpha2));
      const bool detected = r.structure.kind == Structure::Pseudostar && r.structure.star->d == d;
      add(fname, "pseudostar", detected, to_string(r.structure.kind));
      add(fname, "acm", r.acm->consistent(), r.acm->verdict());
      add(fname, "classification", r.theorem_consistent(), r.theorem_consistent() ? "consistent" : "inconsistent");
      const auto s = check_bc_section(c, seed);
      const bool star = s.structure.kind == Structure::Star && s.structure.star->d == d;
      add(fname, "section", star && s.alpha_match && s.chain.value_or(false),
          std::string(to_string(s.structure.kind)) + " " + type_string(s.section_type.alpha1, s.section_type.alpha2));
    }
  }

  for (std::size_t n = 1; n <= dmax; ++n) {
    const auto c = gen(Family::Coplanar, n, seed);
    const auto r = classify(c, std::nullopt, seed, false);
    const auto fname = name(Family::Coplanar, n);
    add(fname, "type", r.type.alpha1 == 1 && r.type.alpha2 == 2, type_string(r.type.alpha1, r.type.alpha2));
    add(fname, "coplanar", r.structure.kind == Structure::Coplanar, to_string(r.structure.kind));
    add(fname, "acm", r.acm->consistent(), r.acm->verdict());
    add(fname, "classification", r.theorem_consistent(), r.theorem_consistent() ? "consistent" : "inconsistent");
    const auto s = check_bc_section(c, seed);
    add(fname, "section", s.structure.kind == Structure::Collinear && s.alpha_match, to_string(s.structure.kind));
  }

  {
    const auto r = classify(gen(Family::SkewPair, 0), std::nullopt, seed, false);
    add("skew", "type", r.type.alpha1 == 2 && r.type.alpha2 == 4, type_string(r.type.alpha1, r.type.alpha2));
    const bool fails1 = r.acm->fails_at == std::size_t{1} && r.acm->comparisons[1].delta == 3 &&
                        r.acm->comparisons[1].section == 2;
    add("skew", "acm", fails1, r.acm->verdict());
    add("skew", "classification", r.theorem_consistent(), to_string(r.structure.kind));
  }
  {
    const auto r = classify(gen(Family::Fig2Triple, 0), std::nullopt, seed, false);
    add("fig2", "type", r.type.alpha1 == 2 && r.type.alpha2 == 4, type_string(r.type.alpha1, r.type.alpha2));
    add("fig2", "classification", r.theorem_consistent(), to_string(r.structure.kind));
  }

  // points of P^2
  for (std::size_t d = 3; d <= dmax + 2; ++d) {
    const auto c = gen(Family::StarPointsP2, d, seed);
    const auto r = classify(c, std::nullopt, seed, false);
    const auto fname = name(Family::StarPointsP2, d);
    add(fname, "type", r.type.alpha1 + 1 == d && r.type.alpha2 == d, type_string(r.type.alpha1, r.type.alpha2));
    add(fname, "star", r.structure.kind == Structure::Star && r.structure.star->d == d, to_string(r.structure.kind));
  }
  for (std::size_t n = 2; n <= dmax + 1; ++n) {
    const auto c = gen(Family::CollinearPoints, n, seed);
    const auto t = type_of(c, false);
    const auto fname = name(Family::CollinearPoints, n);
    add(fname, "type", t.alpha1 == 1 && t.alpha2 == 2, type_string(t.alpha1, t.alpha2));
    const auto diffs = alpha_differences(c, 4);
    add(fname, "differences", diffs == std::vector<std::size_t>(3, 1), list_string(diffs));
  }
  {
    const auto diffs = alpha_differences(conic_points(field, 5, seed), 4);
    add("conic(5)", "differences", diffs == std::vector<std::size_t>(3, 2), list_string(diffs));
  }

  // seeded random lines: the classification never contradicts the type
  for (std::size_t s = 3; s <= std::min<std::size_t>(dmax + 1, 6); ++s) {
    std::size_t bad = 0;
    const std::size_t trials = 5;
    for (std::size_t i = 0; i < trials; ++i) {
      const auto c = gen(Family::RandomLines, s, seed * 1000 + i);
      bad += classify(c, std::nullopt, seed + i, false).theorem_consistent() ? 0 : 1;
    }
    add(name(Family::RandomLines, s), "classification", bad == 0,
        std::to_string(trials - bad) + "/" + std::to_string(trials) + " consistent");
  }
  return out;
}

inline std::string format_summary(const VerifySummary& s) {
  std::ostringstream os;
  std::size_t w1 = 6, w2 = 5;
  for (const auto& r : s.rows) {
    w1 = std::max(w1, r.family.size());
    w2 = std::max(w2, r.check.size());
  }
  auto pad = [](const std::string& x, std::size_t w) { return x + std::string(w - x.size(), ' '); };
  os << pad("family", w1) << "  " << pad("check", w2) << "  result  detail\n";
  for (const auto& r : s.rows)
    os << pad(r.family, w1) << "  " << pad(r.check, w2) << "  " << (r.pass ? "PASS  " : "FAIL  ") << "  " << r.detail
       << '\n';
  os << s.rows.size() - s.failures() << " passed, " << s.failures() << " failed\n";
  return os.str();
}

}  // namespace fatlines
