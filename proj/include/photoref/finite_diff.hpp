#pragma once

#include <cstddef>
#include <vector>

// Eighth-order centered differences, used to measure ODE defects of sampled
// profiles independently of how the samples were produced.

namespace photoref {

// d/dx at sample j (valid for 4 <= j <= n-5).
inline double fd8_first(const std::vector<double>& u, std::size_t j, double h) {
  return (u[j - 4] * (1.0 / 280) + u[j - 3] * (-4.0 / 105) +
          u[j - 2] * (1.0 / 5) + u[j - 1] * (-4.0 / 5) + u[j + 1] * (4.0 / 5) +
          u[j + 2] * (-1.0 / 5) + u[j + 3] * (4.0 / 105) +
          u[j + 4] * (-1.0 / 280)) /
         h;
}

// d^2/dx^2 at sample j (valid for 4 <= j <= n-5).
inline double fd8_second(const std::vector<double>& u, std::size_t j, double h) {
  return (u[j - 4] * (-1.0 / 560) + u[j - 3] * (8.0 / 315) +
          u[j - 2] * (-1.0 / 5) + u[j - 1] * (8.0 / 5) +
          u[j] * (-205.0 / 72) + u[j + 1] * (8.0 / 5) + u[j + 2] * (-1.0 / 5) +
          u[j + 3] * (8.0 / 315) + u[j + 4] * (-1.0 / 560)) /
         (h * h);
}

}  // namespace photoref
