#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wino/matrix.hpp"
#include "wino/minimal_params.hpp"
#include "wino/rational.hpp"

namespace wino {

// The three constant matrices of one F(m, r) instance in a given scalar type.
//   a: alpha x m   (inverse transform, applied as A^T)
//   b: alpha x alpha (data transform, applied as B^T)
//   g: alpha x r   (filter transform)
template <typename T>
struct TransformMatrices {
  MinimalParams params;
  Matrix<T> a;
  Matrix<T> b;
  Matrix<T> g;
};

// Immutable transform set. Synthesized in exact rational arithmetic; the
// floating-point copies are derived once at construction.
class TransformSet {
 public:
  const MinimalParams& params() const noexcept { return exact_.params; }

  // Finite interpolation points; the point at infinity is implicit. Empty for
  // the degenerate m = 1 identity form.
  const std::vector<Rational>& interpolation_points() const noexcept { return points_; }

  const Matrix<Rational>& a() const noexcept { return exact_.a; }
  const Matrix<Rational>& b() const noexcept { return exact_.b; }
  const Matrix<Rational>& g() const noexcept { return exact_.g; }

  template <typename T>
  const TransformMatrices<T>& matrices() const;

 private:
  friend TransformSet generate_transforms(MinimalParams, std::optional<std::vector<Rational>>);
  TransformSet(TransformMatrices<Rational> exact, std::vector<Rational> points);

  TransformMatrices<Rational> exact_;
  TransformMatrices<double> f64_;
  TransformMatrices<float> f32_;
  std::vector<Rational> points_;
};

template <>
inline const TransformMatrices<Rational>& TransformSet::matrices<Rational>() const {
  return exact_;
}
template <>
inline const TransformMatrices<double>& TransformSet::matrices<double>() const {
  return f64_;
}
template <>
inline const TransformMatrices<float>& TransformSet::matrices<float>() const {
  return f32_;
}

// 0, 1, -1, 2, -2, 3, ... truncated to m + r - 2 points.
std::vector<Rational> default_interpolation_points(const MinimalParams& params);

// Cook-Toom synthesis. Without explicit points, m = 1 yields the identity form
// (B = I, G = I, A = ones) with no transform stage at all.
TransformSet generate_transforms(MinimalParams params,
                                 std::optional<std::vector<Rational>> points = std::nullopt);

// Row-major CSV, exact entries rendered as "p/q".
std::string matrix_to_csv(const Matrix<Rational>& matrix);

// Writes AT.csv, BT.csv and G.csv (the matrices as applied) into `dir`.
void export_transforms_csv(const TransformSet& ts, const std::filesystem::path& dir);

}  // namespace wino
