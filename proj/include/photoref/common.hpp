#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace photoref {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Compensated (Kahan) accumulator.  All grid reductions in this library are
// performed with it, in a fixed index order, so results are deterministic.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Thrown by time propagators when the state stops being finite.
struct DivergenceError : std::runtime_error {
  std::size_t step;
  DivergenceError(const std::string& what, std::size_t step_index)
      : std::runtime_error(what), step(step_index) {}
};

inline double sq(double x) { return x * x; }

}  // namespace photoref
