#pragma once

#include <cmath>
#include <string>

namespace hlab::testing {

// "n2_alpha0p75"; gtest names allow only [A-Za-z0-9_].
inline std::string param_name(int n, double alpha) {
  std::string a = std::to_string(std::lround(alpha * 100.0) / 100.0);
  a.erase(a.find_last_not_of('0') + 1);
  if (a.back() == '.') a.pop_back();
  for (char& ch : a) {
    if (ch == '.') ch = 'p';
  }
  return "n" + std::to_string(n) + "_alpha" + a;
}

}  // namespace hlab::testing
