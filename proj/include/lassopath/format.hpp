#pragma once

#include <cstdio>
#include <string>

namespace lassopath {

/// Shortest round-trippable decimal form of a double.  Every file the tools
/// write goes through this, so regenerating an instance from the same seed
/// reproduces the bytes, not just the values.
inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace lassopath
