#include "wino/minimal_params.hpp"

#include "wino/error.hpp"

namespace wino {

MinimalParams::MinimalParams(int m, int r) : m_(m), r_(r) {
  if (m < 1 || r < 1) {
    throw Error("winograd_core", "F(m,r) requires m >= 1 and r >= 1, got m=" + std::to_string(m) +
                                     " r=" + std::to_string(r));
  }
}

std::string MinimalParams::name() const {
  return "F(" + std::to_string(m_) + "," + std::to_string(r_) + ")";
}

}  // namespace wino
