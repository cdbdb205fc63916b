#pragma once

#include <cstdio>
#include <string>

#include "mafol/types.hpp"

namespace mafol {

/// Shortest round-trippable text for a double ("%.17g").
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Short human-readable form ("%.6g").
inline std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string point_string(const CPoint& z) {
  std::string out = "(";
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (j) out += ", ";
    out += short_num(z[j].real());
    if (z[j].imag() != 0.0) out += (z[j].imag() < 0 ? "-" : "+") + short_num(std::abs(z[j].imag())) + "i";
  }
  return out + ")";
}

}  // namespace mafol
