#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace fatlines;

namespace {

FieldMatrix<Rationals> random_invertible(std::mt19937_64& rng, std::size_t n) {
  Rationals Q;
  for (;;) {
    FieldMatrix<Rationals> m(n, n, BigRational(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = BigRational(draw_coefficient(rng, 5));
    if (rank(Q, m) == n) return m;
  }
}

oracle::QMatrix rows_of(const FieldMatrix<Rationals>& m) { return oracle::to_rows(m); }

}  // namespace

TEST(MonomialBasis, Sizes) {
  EXPECT_EQ(basis_size(4, 2), 10u);
  EXPECT_EQ(basis_size(3, 0), 1u);
  EXPECT_EQ(basis_size(4, 6), 84u);
  EXPECT_EQ(basis_size(4, 6), binomial(9, 3));
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 0; d <= 8; ++d) EXPECT_EQ(MonomialBasis(n, d).size(), basis_size(n, d));
}

TEST(MonomialBasis, IndexRoundTrip) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 0; d <= 10; ++d) {
      MonomialBasis b(n, d);
      for (std::size_t i = 0; i < b.size(); ++i) {
        EXPECT_EQ(total_degree(b[i]), d);
        EXPECT_EQ(b.index(b[i]), i);
      }
    }
}

TEST(MonomialBasis, OrderMatchesReference) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 0; d <= 5; ++d) {
      MonomialBasis b(n, d);
      const auto ref = oracle::monomials(n, d);
      ASSERT_EQ(ref.size(), b.size());
      for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i], ref[i]);
    }
  MonomialBasis b(4, 2);
  EXPECT_EQ(b[0], (Exponents{2, 0, 0, 0}));
  EXPECT_EQ(b[9], (Exponents{0, 0, 0, 2}));
}

TEST(Substitution, IdentityAndPermutation) {
  Rationals Q;
  for (std::size_t d = 0; d <= 4; ++d)
    EXPECT_EQ(substitution_matrix(Q, identity_matrix(Q, 4), d), identity_matrix(Q, basis_size(4, d)));
  // swap x and z
  FieldMatrix<Rationals> p(4, 4, BigRational(0));
  p(0, 2) = p(2, 0) = p(1, 1) = p(3, 3) = 1;
  const auto s = substitution_matrix(Q, p, 2);
  ASSERT_EQ(s.rows(), 10u);
  MonomialBasis b(4, 2);
  for (std::size_t j = 0; j < 10; ++j) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < 10; ++i) {
      if (s(i, j) == 1) {
        ++ones;
        Exponents e = b[j];
        std::swap(e[0], e[2]);
        EXPECT_EQ(b[i], e);
      } else {
        EXPECT_EQ(s(i, j), 0);
      }
    }
    EXPECT_EQ(ones, 1u);
  }
}

TEST(Substitution, MatchesDirectExpansion) {
  Rationals Q;
  std::mt19937_64 rng(3);
  for (std::size_t d = 0; d <= 3; ++d) {
    const auto m = random_invertible(rng, 4);
    EXPECT_EQ(rows_of(substitution_matrix(Q, m, d)), oracle::expand_substitution(rows_of(m), d));
  }
}

TEST(Substitution, CompositionLaw) {
  Rationals Q;
  std::mt19937_64 rng(9);
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto m1 = random_invertible(rng, 4);
    const auto m2 = random_invertible(rng, 4);
    EXPECT_EQ(substitution_matrix(Q, multiply(Q, m1, m2), d),
              multiply(Q, substitution_matrix(Q, m1, d), substitution_matrix(Q, m2, d)));
  }
  const auto m = random_invertible(rng, 3);
  EXPECT_EQ(rank(Q, substitution_matrix(Q, m, 4)), basis_size(3, 4));
}

TEST(Substitution, SingularChange) {
  Rationals Q;
  FieldMatrix<Rationals> m(4, 4, BigRational(1));
  try {
    substitution_matrix(Q, m, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularChange);
  }
}

TEST(RestrictToLine, Examples) {
  Rationals Q;
  const auto line = make_component(Q, integer_vector(Q, {1, 0, 0, 0}), integer_vector(Q, {0, 1, 0, 0}));
  ASSERT_EQ(line.span[0].coords, integer_vector(Q, {0, 0, 1, 0}));
  ASSERT_EQ(line.span[1].coords, integer_vector(Q, {0, 0, 0, 1}));
  auto restrict = [&](const Vec<Rationals>& f, std::size_t d) {
    return restrict_to_line(Q, std::span<const BigRational>(f), 4, d, std::span<const BigRational>(line.span[0].coords),
                            std::span<const BigRational>(line.span[1].coords));
  };
  EXPECT_EQ(restrict(integer_vector(Q, {1, 0, 0, 0}), 1), integer_vector(Q, {0, 0}));
  EXPECT_EQ(restrict(integer_vector(Q, {0, 0, 1, 0}), 1), integer_vector(Q, {1, 0}));  // s
}

TEST(RestrictToLine, MatchesPointwiseEvaluation) {
  Rationals Q;
  std::mt19937_64 rng(21);
  const std::size_t d = 3;
  for (int trial = 0; trial < 5; ++trial) {
    Vec<Rationals> f;
    for (std::size_t i = 0; i < basis_size(4, d); ++i) f.emplace_back(draw_coefficient(rng, 20));
    const auto a = draw_form(Q, rng, 4, 10);
    const auto b = draw_form(Q, rng, 4, 10);
    const auto g = restrict_to_line(Q, std::span<const BigRational>(f), 4, d, std::span<const BigRational>(a),
                                    std::span<const BigRational>(b));
    ASSERT_EQ(g.size(), d + 1);
    for (long s = -2; s <= static_cast<long>(d) - 1 + 1; ++s) {  // d + 2 sample parameters, t = 1
      std::vector<BigRational> pt(4);
      for (std::size_t i = 0; i < 4; ++i) pt[i] = BigRational(s) * a[i] + b[i];
      BigRational binary = 0, power = 1;
      for (std::size_t k = 0; k <= d; ++k) {  // coefficient of s^(d-k) t^k
        BigRational sp = 1;
        for (std::size_t r = 0; r < d - k; ++r) sp *= s;
        binary += g[k] * sp;
      }
      (void)power;
      EXPECT_EQ(binary, oracle::eval_form(f, 4, d, pt));
    }
  }
}

TEST(RestrictToLine, Linear) {
  Rationals Q;
  std::mt19937_64 rng(4);
  const auto a = draw_form(Q, rng, 4, 10);
  const auto b = draw_form(Q, rng, 4, 10);
  Vec<Rationals> f, g, sum;
  for (std::size_t i = 0; i < basis_size(4, 2); ++i) {
    f.emplace_back(draw_coefficient(rng, 9));
    g.emplace_back(draw_coefficient(rng, 9));
    sum.push_back(f.back() * 3 + g.back());
  }
  auto r = [&](const Vec<Rationals>& h) {
    return restrict_to_line(Q, std::span<const BigRational>(h), 4, 2, std::span<const BigRational>(a),
                            std::span<const BigRational>(b));
  };
  const auto rf = r(f), rg = r(g), rs = r(sum);
  for (std::size_t k = 0; k < rs.size(); ++k) EXPECT_EQ(rs[k], rf[k] * 3 + rg[k]);
}

TEST(Forms, MultiplyAndEvaluate) {
  Rationals Q;
  const auto x = integer_vector(Q, {1, 0, 0});
  const auto y = integer_vector(Q, {0, 1, 0});
  const auto xy = multiply_forms(Q, std::span<const BigRational>(x), 1, std::span<const BigRational>(y), 1, 3);
  EXPECT_EQ(xy, integer_vector(Q, {0, 1, 0, 0, 0, 0}));
  const auto pt = integer_vector(Q, {2, 3, 5});
  EXPECT_EQ(evaluate(Q, std::span<const BigRational>(xy), 3, 2, std::span<const BigRational>(pt)), 6);
}
