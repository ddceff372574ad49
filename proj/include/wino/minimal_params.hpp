#pragma once

#include <string>

namespace wino {

// The (m, r) pair of a minimal filtering algorithm F(m, r): m outputs per
// dimension from an r-tap kernel, consuming alpha = m + r - 1 inputs.
class MinimalParams {
 public:
  MinimalParams(int m, int r);

  int m() const noexcept { return m_; }
  int r() const noexcept { return r_; }
  int alpha() const noexcept { return m_ + r_ - 1; }

  std::string name() const;  // "F(2,3)"

  friend bool operator==(const MinimalParams&, const MinimalParams&) = default;

 private:
  int m_;
  int r_;
};

}  // namespace wino
