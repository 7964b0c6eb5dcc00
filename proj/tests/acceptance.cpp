// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// All comparisons are exact (integers and rationals), so every tolerance is zero.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace fatlines;

namespace {

constexpr std::size_t kTolerance = 0;  // exact equality everywhere
constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};
constexpr std::size_t kRandomConfigs = 200;
constexpr std::size_t kOracleLines = 100;
constexpr std::size_t kVerifyDmax = 5;

Rationals Q;
std::size_t configurations_seen = 0;
std::size_t invariant_breaks = 0;
std::ostringstream invariant_log;

Configuration<Rationals> gen(Family f, std::size_t n = 0, std::uint64_t seed = 0) {
  return generate(Q, GenSpec{f, n, seed});
}

/// Records the t >= 1 invariant for every configuration whose type is computed.
TypeReport<Rationals> typed(const Configuration<Rationals>& c) {
  auto t = type_of(c, false);
  ++configurations_seen;
  if (t.t < 1) {
    ++invariant_breaks;
    invariant_log << c.label << " has t=" << t.t << "; ";
  }
  return t;
}

void note_type(const TypeReport<Rationals>& t, const std::string& label) {
  ++configurations_seen;
  if (t.t < 1) {
    ++invariant_breaks;
    invariant_log << label << " has t=" << t.t << "; ";
  }
}

struct Outcome {
  bool pass = true;
  std::ostringstream why;
  void fail(const std::string& s) {
    if (pass) why << s;
    pass = false;
  }
};

bool all_pass = true;

void criterion(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  all_pass = all_pass && o.pass;
  std::printf("%s %2d %s (%.1fs)%s%s\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), secs, o.pass ? "" : ": ",
              o.why.str().c_str());
  std::fflush(stdout);
}

std::string type_str(const TypeReport<Rationals>& t) {
  return "(" + std::to_string(t.alpha1) + "," + std::to_string(t.alpha2) + ")";
}

std::string capture(const std::string& cmd, int& code) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  code = pclose(pipe);
  return out;
}

}  // namespace

int main() {
  criterion(1, "pseudostars d=3..6: alpha = d-1, alpha(2) = d over 5 seeds", [](Outcome& o) {
    for (std::size_t d = 3; d <= 6; ++d)
      for (auto seed : kSeeds) {
        const auto c = gen(Family::PseudostarGeneric, d, seed);
        const auto t = typed(c);
        if (t.alpha1 != d - 1 || t.alpha2 != d) o.fail(c.label + " has type " + type_str(t));
      }
  });

  criterion(2, "star points d=3..7 type (d-1,d); collinear n=2..6 type (1,2)", [](Outcome& o) {
    for (std::size_t d = 3; d <= 7; ++d) {
      const auto c = gen(Family::StarPointsP2, d, d);
      const auto t = typed(c);
      if (t.alpha1 != d - 1 || t.alpha2 != d) o.fail(c.label + " has type " + type_str(t));
    }
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto c = gen(Family::CollinearPoints, n, n);
      const auto t = typed(c);
      if (t.alpha1 != 1 || t.alpha2 != 2) o.fail(c.label + " has type " + type_str(t));
    }
  });

  criterion(3, "skew pair and (x,z),(y,z),(x,w) both of type (2,4)", [](Outcome& o) {
    for (auto f : {Family::SkewPair, Family::Fig2Triple}) {
      const auto c = gen(f);
      const auto t = typed(c);
      if (t.alpha1 != 2 || t.alpha2 != 4) o.fail(c.label + " has type " + type_str(t));
    }
  });

  criterion(4, "pseudostars, cones, coplanar (d<=5): section H equals first difference to s+2, alpha agrees",
            [](Outcome& o) {
              std::vector<Configuration<Rationals>> fams;
              for (std::uint64_t seed : {1, 2, 3}) {
                for (std::size_t d = 3; d <= 5; ++d) {
                  fams.push_back(gen(Family::PseudostarGeneric, d, seed));
                  fams.push_back(gen(Family::ConeOverStar, d, seed));
                }
                for (std::size_t n = 1; n <= 5; ++n) fams.push_back(gen(Family::Coplanar, n, seed));
              }
              std::uint64_t hseed = 100;
              for (const auto& c : fams) {
                const auto cert = acm_certificate(c, c.size() + 2, hseed);
                if (!cert.consistent()) o.fail(c.label + " " + cert.verdict() + "; ");
                for (const auto& cmp : cert.comparisons)
                  if (cmp.delta != cmp.section) o.fail(c.label + " differs at t=" + std::to_string(cmp.t) + "; ");
                const auto pts = point_configuration(Q, std::span<const HPoint<Rationals>>(cert.section.points));
                const auto a_lines = alpha(c, 1, 1, false).degree;
                const auto a_pts = alpha(pts, 1, 1, false).degree;
                if (a_lines != a_pts) o.fail(c.label + " alpha " + std::to_string(a_lines) + " vs section " +
                                             std::to_string(a_pts) + "; ");
                ++hseed;
              }
            });

  criterion(5, "skew pair certificate: FailsAt(1) with 3 vs 2", [](Outcome& o) {
    const auto cert = acm_certificate(gen(Family::SkewPair), 4, 1);
    if (cert.verdict() != "FailsAt(1)") o.fail("verdict " + cert.verdict());
    else if (cert.comparisons[1].delta != 3 || cert.comparisons[1].section != 2)
      o.fail("values " + std::to_string(cert.comparisons[1].delta) + " vs " +
             std::to_string(cert.comparisons[1].section));
    // the first difference comes straight from slice dimensions
    const auto skew = gen(Family::SkewPair);
    if (basis_size(4, 1) - slice_dim(skew, 1, 1) - (basis_size(4, 0) - slice_dim(skew, 1, 0)) != 3)
      o.fail("slice dimensions disagree");
  });

  criterion(6, "classification never contradicts the type (families + 200 random configs)", [](Outcome& o) {
    std::vector<Configuration<Rationals>> all;
    for (std::size_t d = 3; d <= 5; ++d) {
      all.push_back(gen(Family::PseudostarGeneric, d, 7));
      all.push_back(gen(Family::ConeOverStar, d, 7));
    }
    for (std::size_t d = 3; d <= 6; ++d) all.push_back(gen(Family::StarPointsP2, d, 7));
    for (std::size_t n = 1; n <= 5; ++n) {
      all.push_back(gen(Family::Coplanar, n, 7));
      all.push_back(gen(Family::CollinearPoints, n + 1, 7));
    }
    all.push_back(gen(Family::SkewPair));
    all.push_back(gen(Family::Fig2Triple));
    for (std::size_t i = 0; i < kRandomConfigs; ++i) all.push_back(gen(Family::RandomLines, 3 + i % 4, 5000 + i));
    std::size_t bad = 0;
    for (const auto& c : all) {
      const auto r = classify(c, std::nullopt, 11, false);
      note_type(r.type, c.label);
      if (!r.theorem_consistent()) {
        if (bad == 0) o.fail(c.label + " inconsistent");
        ++bad;
      }
    }
    if (bad) o.why << " (" << bad << " of " << all.size() << ")";
  });

  criterion(7, "coordinate-change vs derivative constraints: equal slice dimensions (100 lines, m<=3, d<=8)",
            [](Outcome& o) {
              std::size_t compared = 0;
              for (std::size_t i = 0; i < kOracleLines / 4; ++i) {
                const auto c = gen(Family::RandomLines, 4, 9000 + i);
                for (const auto& l : c.components)
                  for (std::size_t m = 1; m <= 3; ++m)
                    for (std::size_t d = 0; d <= 8; ++d) {
                      const auto ours = component_constraints(Q, l, m, d);
                      const auto ref = oracle::derivative_constraints(l, m, d);
                      const auto a = ours.cols() - rank(Q, ours);
                      const auto b = ref.cols() - rank(Q, ref);
                      ++compared;
                      if (a != b + kTolerance)
                        o.fail(c.label + " m=" + std::to_string(m) + " d=" + std::to_string(d) + ": " +
                               std::to_string(a) + " vs " + std::to_string(b) + "; ");
                    }
              }
              if (compared != kOracleLines * 3 * 9) o.fail("compared " + std::to_string(compared) + " slices");
            });

  criterion(8, "invariants: t >= 1, alpha monotone to m=4, subadditive on star points", [](Outcome& o) {
    std::vector<Configuration<Rationals>> mono{gen(Family::SkewPair), gen(Family::Fig2Triple),
                                               gen(Family::PseudostarGeneric, 3, 1), gen(Family::RandomLines, 4, 3),
                                               gen(Family::StarPointsP2, 4, 2), conic_points(Q, 5, 1)};
    for (const auto& c : mono) {
      typed(c);
      const auto a = alpha_sequence(c, 4);
      for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] < a[i - 1]) o.fail(c.label + " alpha not monotone; ");
    }
    for (std::size_t d = 3; d <= 5; ++d) {
      const auto c = gen(Family::StarPointsP2, d, 3);
      typed(c);
      const auto a = alpha_sequence(c, 6);
      for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n)
          if (a[m + n - 1] > a[m - 1] + a[n - 1])
            o.fail(c.label + " alpha(" + std::to_string(m + n) + ") exceeds sum; ");
    }
    if (invariant_breaks) o.fail(invariant_log.str());
    o.why << " [" << configurations_seen << " configurations typed]";
  });

  criterion(9, "alpha differences: collinear all 1, five conic points all 2 (m<=4)", [](Outcome& o) {
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto c = gen(Family::CollinearPoints, n, 4);
      if (alpha_differences(c, 4) != std::vector<std::size_t>(3, 1)) o.fail(c.label + "; ");
    }
    for (auto seed : kSeeds) {
      const auto c = conic_points(Q, 5, seed);
      const auto diffs = alpha_differences(c, 4);
      if (diffs != std::vector<std::size_t>(3, 2)) o.fail(c.label + " seed " + std::to_string(seed) + "; ");
    }
  });

  criterion(10, "verify run twice with the same seed is byte-identical and all-pass", [](Outcome& o) {
    const std::string cmd = std::string(FATLINES_CLI) + " verify --dmax " + std::to_string(kVerifyDmax) + " --seed 3";
    int c1 = 0, c2 = 0;
    const auto a = capture(cmd, c1);
    const auto b = capture(cmd, c2);
    if (a.empty() || a != b) o.fail("outputs differ or are empty");
    if (c1 != 0 || c2 != 0) o.fail("verify exit status " + std::to_string(c1) + "/" + std::to_string(c2));
  });

  return all_pass ? 0 : 1;
}
