#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "wino/error.hpp"
#include "wino/minimal_filter.hpp"
#include "wino/transforms.hpp"

using namespace wino;
using wino::testing::correlate_1d;
using wino::testing::random_rational;

namespace {

Matrix<Rational> rationals(std::initializer_list<std::initializer_list<Rational>> rows) {
  return Matrix<Rational>(rows);
}

// Y = A^T [(B^T d) . (G g)] written out with explicit loops.
std::vector<Rational> evaluate_1d(const TransformSet& ts, const std::vector<Rational>& d,
                                  const std::vector<Rational>& g) {
  const auto alpha = static_cast<std::size_t>(ts.params().alpha());
  const auto m = static_cast<std::size_t>(ts.params().m());
  std::vector<Rational> prod(alpha);
  for (std::size_t i = 0; i < alpha; ++i) {
    Rational bd = 0;
    Rational gg = 0;
    for (std::size_t k = 0; k < alpha; ++k) bd += ts.b()(k, i) * d[k];
    for (std::size_t k = 0; k < g.size(); ++k) gg += ts.g()(i, k) * g[k];
    prod[i] = bd * gg;
  }
  std::vector<Rational> y(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < alpha; ++i) y[j] += ts.a()(i, j) * prod[i];
  return y;
}

}  // namespace

TEST(Transforms, F2x3MatchesCanonicalMatrices) {
  const auto ts = generate_transforms(MinimalParams(2, 3));
  const auto bt = rationals({{1, 0, -1, 0}, {0, 1, 1, 0}, {0, -1, 1, 0}, {0, 1, 0, -1}});
  const auto g = rationals({{1, 0, 0},
                            {Rational(1, 2), Rational(1, 2), Rational(1, 2)},
                            {Rational(1, 2), Rational(-1, 2), Rational(1, 2)},
                            {0, 0, 1}});
  const auto at = rationals({{1, 1, 1, 0}, {0, 1, -1, -1}});
  EXPECT_EQ(ts.b().transposed(), bt);
  EXPECT_EQ(ts.g(), g);
  EXPECT_EQ(ts.a().transposed(), at);
}

TEST(Transforms, ShapesFollowAlpha) {
  for (int m = 1; m <= 6; ++m)
    for (int r = 1; r <= 5; ++r) {
      const auto ts = generate_transforms(MinimalParams(m, r));
      const auto alpha = static_cast<std::size_t>(m + r - 1);
      EXPECT_EQ(ts.a().rows(), alpha);
      EXPECT_EQ(ts.a().cols(), static_cast<std::size_t>(m));
      EXPECT_EQ(ts.b().rows(), alpha);
      EXPECT_EQ(ts.b().cols(), alpha);
      EXPECT_EQ(ts.g().rows(), alpha);
      EXPECT_EQ(ts.g().cols(), static_cast<std::size_t>(r));
    }
}

TEST(Transforms, DefaultPointsSequence) {
  const auto pts = default_interpolation_points(MinimalParams(4, 3));
  const std::vector<Rational> expected{0, 1, -1, 2, -2};
  EXPECT_EQ(pts, expected);
  EXPECT_EQ(generate_transforms(MinimalParams(4, 3)).interpolation_points(), expected);
}

// The identity is bilinear in (d, g), so checking every pair of basis
// vectors proves it for all inputs.
TEST(Transforms, ExactIdentityOnBasisPairs) {
  for (int m = 1; m <= 6; ++m)
    for (int r = 1; r <= 5; ++r) {
      const auto ts = generate_transforms(MinimalParams(m, r));
      const auto alpha = static_cast<std::size_t>(m + r - 1);
      for (std::size_t i = 0; i < alpha; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(r); ++j) {
          std::vector<Rational> d(alpha, 0);
          std::vector<Rational> g(r, 0);
          d[i] = 1;
          g[j] = 1;
          ASSERT_EQ(evaluate_1d(ts, d, g), correlate_1d(d, g)) << ts.params().name() << " i=" << i << " j=" << j;
        }
    }
}

TEST(Transforms, ExactIdentityRandomRationals) {
  std::mt19937_64 rng(7);
  for (int m : {2, 3, 4, 5}) {
    const auto ts = generate_transforms(MinimalParams(m, 3));
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Rational> d(m + 2);
      std::vector<Rational> g(3);
      for (auto& v : d) v = random_rational(rng);
      for (auto& v : g) v = random_rational(rng);
      ASSERT_EQ(evaluate_1d(ts, d, g), correlate_1d(d, g));
    }
  }
}

TEST(Transforms, CustomPointsStillExact) {
  const std::vector<Rational> pts{0, 1, -1, Rational(1, 2), Rational(-1, 2)};
  const auto ts = generate_transforms(MinimalParams(4, 3), pts);
  EXPECT_EQ(ts.interpolation_points(), pts);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> d(6);
    std::vector<Rational> g(3);
    for (auto& v : d) v = random_rational(rng);
    for (auto& v : g) v = random_rational(rng);
    ASSERT_EQ(evaluate_1d(ts, d, g), correlate_1d(d, g));
  }
}

TEST(Transforms, F1IsIdentityForm) {
  const auto ts = generate_transforms(MinimalParams(1, 3));
  EXPECT_TRUE(ts.interpolation_points().empty());
  EXPECT_EQ(ts.b(), rationals({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(ts.g(), rationals({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(ts.a(), rationals({{1}, {1}, {1}}));
}

TEST(Transforms, FloatCopiesMatchExact) {
  const auto ts = generate_transforms(MinimalParams(5, 3));
  const auto& f64 = ts.matrices<double>();
  const auto& f32 = ts.matrices<float>();
  EXPECT_EQ(f64.params, ts.params());
  for (std::size_t i = 0; i < ts.g().values().size(); ++i) {
    EXPECT_DOUBLE_EQ(f64.g.values()[i], to_double(ts.g().values()[i]));
    EXPECT_FLOAT_EQ(f32.g.values()[i], static_cast<float>(to_double(ts.g().values()[i])));
  }
}

TEST(Transforms, RejectsWrongPointCount) {
  try {
    generate_transforms(MinimalParams(2, 3), std::vector<Rational>{0, 1});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), "winograd_core");
  }
}

TEST(Transforms, RejectsDuplicatePoints) {
  EXPECT_THROW(generate_transforms(MinimalParams(2, 3), std::vector<Rational>{0, 1, 1}), Error);
  EXPECT_THROW(generate_transforms(MinimalParams(3, 3), std::vector<Rational>{Rational(1, 2), 2, Rational(2, 4), 0}),
               Error);
}

TEST(Transforms, RejectsInvalidParams) {
  EXPECT_THROW(MinimalParams(0, 3), Error);
  EXPECT_THROW(MinimalParams(2, 0), Error);
  EXPECT_EQ(MinimalParams(4, 3).name(), "F(4,3)");
  EXPECT_EQ(MinimalParams(4, 3).alpha(), 6);
}

TEST(Transforms, RationalTextRoundTrip) {
  EXPECT_EQ(to_string(Rational(-3, 6)), "-1/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Transforms, CsvExport) {
  const auto ts = generate_transforms(MinimalParams(2, 3));
  EXPECT_EQ(matrix_to_csv(ts.g()), "1,0,0\n1/2,1/2,1/2\n1/2,-1/2,1/2\n0,0,1\n");
  const auto dir = std::filesystem::temp_directory_path() / "wino_test_transforms_csv";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  export_transforms_csv(ts, dir);
  std::ifstream at(dir / "AT.csv");
  std::stringstream text;
  text << at.rdbuf();
  EXPECT_EQ(text.str(), "1,1,1,0\n0,1,-1,-1\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "BT.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "G.csv"));
  std::filesystem::remove_all(dir);
}
