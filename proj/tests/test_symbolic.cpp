#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace fatlines;

namespace {

Rationals Q;

LinearComponent<Rationals> line(std::initializer_list<long> a, std::initializer_list<long> b) {
  return make_component(Q, integer_vector(Q, a), integer_vector(Q, b));
}

Configuration<Rationals> lines(std::vector<LinearComponent<Rationals>> ls) {
  return make_configuration(Q, Ambient::P3, std::move(ls));
}

Configuration<Rationals> gen(Family f, std::size_t n = 0, std::uint64_t seed = 0) {
  return generate(Q, GenSpec{f, n, seed});
}

bool in_kernel(const Matrix<BigRational>& m, const Vec<Rationals>& v) {
  for (const auto& x : multiply(Q, m, std::span<const BigRational>(v)))
    if (x != 0) return false;
  return true;
}

}  // namespace

TEST(ComponentConstraints, SingleLineCounts) {
  // (x, y)^m in degree d has codimension sum_{k<m} (k+1)(d-k+1)
  const auto l = line({1, 0, 0, 0}, {0, 1, 0, 0});
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t d = 0; d <= 6; ++d) {
      std::size_t codim = 0;
      for (std::size_t k = 0; k < m && k <= d; ++k) codim += (k + 1) * (d - k + 1);
      EXPECT_EQ(rank(Q, component_constraints(Q, l, m, d)), codim) << m << " " << d;
    }
}

TEST(ComponentConstraints, MatchesDerivativeOracle) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto c = gen(Family::RandomLines, 2, seed);
    for (const auto& l : c.components)
      for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t d = 1; d <= 5; ++d) {
          const auto ours = component_constraints(Q, l, m, d);
          const auto ref = oracle::derivative_constraints(l, m, d);
          EXPECT_EQ(oracle::full_pivot_rank(oracle::to_rows(ours)), oracle::full_pivot_rank(oracle::to_rows(ref)));
          // same row space: stacking does not raise the rank
          auto both = ours;
          both.append_rows(ref);
          EXPECT_EQ(rank(Q, both), rank(Q, ours));
        }
  }
  const auto pts = gen(Family::StarPointsP2, 4, 1);
  for (const auto& p : pts.components)
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t d = 1; d <= 4; ++d) {
        auto both = component_constraints(Q, p, m, d);
        const auto r = rank(Q, both);
        both.append_rows(oracle::derivative_constraints(p, m, d));
        EXPECT_EQ(rank(Q, both), r);
        EXPECT_EQ(r, std::min(basis_size(3, d), m * (m + 1) / 2));
      }
}

TEST(Slice, SkewPair) {
  const auto skew = gen(Family::SkewPair);
  EXPECT_EQ(slice_dim(skew, 1, 1), 0u);
  EXPECT_EQ(slice_dim(skew, 1, 2), 4u);
  EXPECT_EQ(slice_dim(skew, 2, 3), 0u);
  EXPECT_EQ(slice_dim(skew, 2, 4), 9u);  // (x,y)^2 (z,w)^2
}

TEST(Slice, StarPointsProductWitness) {
  // four general lines of P^2, six star points: each point lies on two lines,
  // so the product of all four vanishes doubly there
  const auto star = gen(Family::StarPointsP2, 4, 5);
  const auto cert = detect_star_points(Q, std::span<const HPoint<Rationals>>(component_points(star)));
  ASSERT_TRUE(cert.has_value());
  std::vector<std::vector<BigRational>> forms;
  for (const auto& h : cert->planes) forms.push_back(h.form);
  const auto product = oracle::product_of_forms(forms, 3);
  EXPECT_TRUE(in_kernel(slice_constraints(star, 2, 4), product));
  EXPECT_FALSE(in_kernel(slice_constraints(star, 3, 4), product));
  const auto three = oracle::product_of_forms({forms[0], forms[1], forms[2]}, 3);
  EXPECT_TRUE(in_kernel(slice_constraints(star, 1, 3), three));
  EXPECT_FALSE(in_kernel(slice_constraints(star, 2, 3), three));
}

TEST(Alpha, Examples) {
  EXPECT_EQ(alpha(lines({line({1, 0, 0, 0}, {0, 1, 0, 0})}), 3).degree, 3u);
  const auto skew = gen(Family::SkewPair);
  EXPECT_EQ(alpha(skew, 1).degree, 2u);
  EXPECT_EQ(alpha(skew, 2).degree, 4u);
  EXPECT_EQ(alpha(skew, 3).degree, 6u);
  const auto cop = gen(Family::Coplanar, 5, 2);
  EXPECT_EQ(alpha(cop, 1).degree, 1u);
  EXPECT_EQ(alpha(cop, 3).degree, 3u);
}

TEST(Alpha, WitnessIsMinimalMember) {
  for (const auto& c : {gen(Family::SkewPair), gen(Family::Fig2Triple), gen(Family::PseudostarGeneric, 4, 1)}) {
    for (std::size_t m = 1; m <= 2; ++m) {
      const auto a = alpha(c, m);
      ASSERT_EQ(a.witness.size(), basis_size(4, a.degree));
      EXPECT_TRUE(in_kernel(slice_constraints(c, m, a.degree), a.witness));
      EXPECT_TRUE(std::any_of(a.witness.begin(), a.witness.end(), [](const BigRational& x) { return x != 0; }));
      EXPECT_EQ(slice_dim(c, m, a.degree - 1), 0u);
      EXPECT_EQ(alpha(c, m, 1, false).degree, a.degree);
    }
  }
}

TEST(Alpha, BoundExceededWhenStartedPastTheCap) {
  const auto skew = gen(Family::SkewPair);
  try {
    alpha(skew, 1, 3);  // degree 3 <= 2 * 1 is never reached
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundExceeded);
  }
}

TEST(Hilbert, LinesBasicValues) {
  const auto one = lines({line({1, 0, 0, 0}, {0, 1, 0, 0})});
  const auto skew = gen(Family::SkewPair);
  for (std::size_t t = 0; t <= 6; ++t) {
    EXPECT_EQ(hilbert(one, 1, t), t + 1);
    EXPECT_EQ(hilbert(skew, 1, t), t == 0 ? 1u : 2 * (t + 1));
  }
  // a double line (x, y)^2: (t+1) + 2t
  for (std::size_t t = 1; t <= 5; ++t) EXPECT_EQ(hilbert(one, 2, t), 3 * t + 1);
}

TEST(Hilbert, PointsMatchInterpolation) {
  for (const auto& c : {gen(Family::StarPointsP2, 4, 1), gen(Family::CollinearPoints, 5, 2), conic_points(Q, 6, 3)}) {
    std::vector<std::vector<BigRational>> pts;
    for (const auto& p : component_points(c)) pts.push_back(p.coords);
    for (std::size_t t = 0; t <= 6; ++t) EXPECT_EQ(hilbert(c, 1, t), oracle::interpolation_hilbert(pts, t)) << t;
  }
}

TEST(Hilbert, SectionEqualsDifferenceForAcmLines) {
  const auto cop = gen(Family::Coplanar, 3, 1);
  const auto h = hilbert_function(cop, 1, 6);
  for (std::size_t t = 1; t <= 6; ++t) EXPECT_EQ(h[t] - h[t - 1], std::min<std::size_t>(t + 1, 3));
}

TEST(Differences, Examples) {
  EXPECT_EQ(alpha_differences(gen(Family::CollinearPoints, 4, 1), 4), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(alpha_differences(conic_points(Q, 5, 1), 4), (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(alpha_differences(gen(Family::SkewPair), 3), (std::vector<std::size_t>{2, 2}));
  EXPECT_THROW(alpha_differences(gen(Family::SkewPair), 1), Error);
}

TEST(Waldschmidt, ExactQuotients) {
  const auto w = waldschmidt_estimates(gen(Family::StarPointsP2, 3, 1), 3);
  // three star points: alpha = 2, 3, 5
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0], BigRational(2));
  EXPECT_EQ(w[1], BigRational(3, 2));
  EXPECT_EQ(w[2], BigRational(5, 3));
  const auto skew = waldschmidt_estimates(gen(Family::SkewPair), 2);
  EXPECT_EQ(skew, (std::vector<BigRational>{2, 2}));
}

TEST(Type, Examples) {
  const auto skew = type_of(gen(Family::SkewPair));
  EXPECT_EQ(skew.alpha1, 2u);
  EXPECT_EQ(skew.alpha2, 4u);
  EXPECT_EQ(skew.t, 2u);
  const auto fig2 = type_of(gen(Family::Fig2Triple));
  EXPECT_EQ(fig2.alpha1, 2u);
  EXPECT_EQ(fig2.alpha2, 4u);
  for (std::size_t d = 3; d <= 4; ++d) {
    const auto ps = type_of(gen(Family::PseudostarGeneric, d, 2), false);
    EXPECT_EQ(ps.alpha1, d - 1);
    EXPECT_EQ(ps.alpha2, d);
    EXPECT_TRUE(ps.witness1.empty());
  }
}

TEST(Type, Invariants) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto c = gen(Family::RandomLines, 3 + seed % 3, seed);
    const auto t = type_of(c, false);
    EXPECT_GE(t.t, 1u);
    EXPECT_LE(t.alpha2, 2 * t.alpha1);
    EXPECT_LE(t.alpha2, 2 * c.size());
    EXPECT_GT(t.alpha2, t.alpha1);
  }
}

TEST(Characteristic, GuardAndAgreement) {
  PrimeField small(3);
  const auto skew3 = generate(small, GenSpec{Family::SkewPair});
  try {
    alpha(skew3, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CharacteristicTooSmall);
  }
  PrimeField big(1000003);
  for (const auto fam : {Family::SkewPair, Family::Fig2Triple}) {
    const auto a = type_of(generate(big, GenSpec{fam}));
    const auto b = type_of(gen(fam));
    EXPECT_EQ(a.alpha1, b.alpha1);
    EXPECT_EQ(a.alpha2, b.alpha2);
  }
  const auto ps = generate(big, GenSpec{Family::PseudostarGeneric, 4, 9});
  EXPECT_EQ(hilbert_function(ps, 2, 5), hilbert_function(gen(Family::PseudostarGeneric, 4, 9), 2, 5));
}

TEST(Configuration, RejectsDuplicates) {
  try {
    lines({line({1, 0, 0, 0}, {0, 1, 0, 0}), line({1, 1, 0, 0}, {0, 1, 0, 0})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateComponent);
  }
}
