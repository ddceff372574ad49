#include "wino/transforms.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "wino/error.hpp"

namespace wino {
namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

Poly multiply_by_linear(const Poly& p, const Rational& root) {
  // p(x) * (x - root)
  Poly out(p.size() + 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] -= p[i] * root;
  }
  return out;
}

Rational power(const Rational& base, int exponent) {
  Rational out(1);
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

int sign_of_first_nonzero(const Poly& p) {
  for (const auto& c : p) {
    if (c != 0) return c > 0 ? 1 : -1;
  }
  return 1;
}

template <typename T>
TransformMatrices<T> convert(const TransformMatrices<Rational>& exact) {
  auto cvt = [](const Rational& v) { return static_cast<T>(to_double(v)); };
  return {exact.params, exact.a.map<T>(cvt), exact.b.map<T>(cvt), exact.g.map<T>(cvt)};
}

TransformMatrices<Rational> identity_form(const MinimalParams& params) {
  // m = 1: the output is a plain dot product of the alpha = r inputs.
  const auto n = static_cast<std::size_t>(params.alpha());
  Matrix<Rational> a(n, 1);
  Matrix<Rational> b(n, n);
  Matrix<Rational> g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, 0) = 1;
    b(i, i) = 1;
    g(i, i) = 1;
  }
  return {params, std::move(a), std::move(b), std::move(g)};
}

TransformMatrices<Rational> cook_toom(const MinimalParams& params, const std::vector<Rational>& points) {
  const auto alpha = static_cast<std::size_t>(params.alpha());
  const auto m = static_cast<std::size_t>(params.m());
  const auto r = static_cast<std::size_t>(params.r());
  const std::size_t finite = alpha - 1;

  Matrix<Rational> a(alpha, m);
  Matrix<Rational> g(alpha, r);
  Matrix<Rational> bt(alpha, alpha);

  for (std::size_t i = 0; i < finite; ++i) {
    Poly basis{Rational(1)};
    Rational scale(1);
    for (std::size_t k = 0; k < finite; ++k) {
      if (k == i) continue;
      basis = multiply_by_linear(basis, points[k]);
      scale *= points[i] - points[k];
    }
    // The Lagrange denominator lives in G with a positive sign; the sign
    // moves into the data-transform row.
    const int sign = scale > 0 ? 1 : -1;
    const Rational magnitude = sign > 0 ? scale : Rational(-scale);
    for (std::size_t j = 0; j < basis.size(); ++j) bt(i, j) = sign * basis[j];
    for (std::size_t j = 0; j < r; ++j) g(i, j) = power(points[i], static_cast<int>(j)) / magnitude;
    for (std::size_t j = 0; j < m; ++j) a(i, j) = power(points[i], static_cast<int>(j));
  }

  // Point at infinity: the leading coefficients, scaled by the full node
  // polynomial. Its sign is normalized so the row starts positive.
  Poly node{Rational(1)};
  for (std::size_t k = 0; k < finite; ++k) node = multiply_by_linear(node, points[k]);
  const int sign = sign_of_first_nonzero(node);
  for (std::size_t j = 0; j < alpha; ++j) bt(finite, j) = sign * node[j];
  g(finite, r - 1) = 1;
  a(finite, m - 1) = sign;

  return {params, std::move(a), bt.transposed(), std::move(g)};
}

}  // namespace

TransformSet::TransformSet(TransformMatrices<Rational> exact, std::vector<Rational> points)
    : exact_(std::move(exact)),
      f64_(convert<double>(exact_)),
      f32_(convert<float>(exact_)),
      points_(std::move(points)) {}

std::vector<Rational> default_interpolation_points(const MinimalParams& params) {
  const int count = params.alpha() - 1;
  std::vector<Rational> points;
  if (count <= 0) return points;
  points.emplace_back(0);
  for (int k = 1; static_cast<int>(points.size()) < count; ++k) {
    points.emplace_back(k);
    if (static_cast<int>(points.size()) < count) points.emplace_back(-k);
  }
  return points;
}

TransformSet generate_transforms(MinimalParams params, std::optional<std::vector<Rational>> points) {
  if (params.alpha() < 1) {
    throw Error("winograd_core", "input tile size m + r - 1 must be at least 1");
  }
  if (!points) {
    if (params.m() == 1) {
      return TransformSet(identity_form(params), {});
    }
    points = default_interpolation_points(params);
  }
  const auto expected = static_cast<std::size_t>(params.alpha() - 1);
  if (points->size() != expected) {
    throw Error("winograd_core", params.name() + " needs " + std::to_string(expected) +
                                     " interpolation points, got " + std::to_string(points->size()));
  }
  std::set<Rational> seen;
  for (const auto& p : *points) {
    if (!seen.insert(p).second) {
      throw Error("winograd_core", "duplicate interpolation point " + to_string(p));
    }
  }
  auto exact = cook_toom(params, *points);
  return TransformSet(std::move(exact), std::move(*points));
}

std::string matrix_to_csv(const Matrix<Rational>& matrix) {
  std::ostringstream out;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (j != 0) out << ',';
      out << to_string(matrix(i, j));
    }
    out << '\n';
  }
  return out.str();
}

void export_transforms_csv(const TransformSet& ts, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, const Matrix<Rational>& mat) {
    std::ofstream file(dir / name);
    if (!file) throw Error("winograd_core", "cannot write " + (dir / name).string());
    file << matrix_to_csv(mat);
  };
  write("AT.csv", ts.a().transposed());
  write("BT.csv", ts.b().transposed());
  write("G.csv", ts.g());
}

}  // namespace wino
