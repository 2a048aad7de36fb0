#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lpnq {

  // Exponents, matrix entries and relative orders are unbounded integers.
  using Integer = boost::multiprecision::cpp_int;

  using Vector = std::vector<Integer>;

  inline std::string to_string(Integer const& x) {
    return x.str();
  }

  inline bool is_zero(Vector const& v) {
    for (auto const& x : v) {
      if (x != 0) {
        return false;
      }
    }
    return true;
  }

  // Floor division and the matching non-negative remainder for b > 0.
  inline Integer floor_div(Integer const& a, Integer const& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
      --q;
    }
    return q;
  }

  inline Integer mod_floor(Integer const& a, Integer const& b) {
    Integer r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) {
      r += b;
    }
    return r;
  }

  // Returns g = gcd(a, b) >= 0 together with s, t such that s*a + t*b = g.
  struct ExtendedGcd {
    Integer g, s, t;
  };

  ExtendedGcd extended_gcd(Integer const& a, Integer const& b);

}  // namespace lpnq
