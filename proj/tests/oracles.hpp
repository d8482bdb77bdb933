#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's evaluation paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// |Σ exp(iκΦ)|² with std::complex accumulation.
inline double complex_sum_intensity(std::span<const double> phis, double kappa) {
  std::complex<double> sum{0.0, 0.0};
  for (double phi : phis) sum += std::polar(1.0, kappa * phi);
  return std::norm(sum);
}

// Union of events in an algebra whose only nonempty Venn regions are the
// single-only and pairwise-only cells (no triple overlaps): sum of region
// masses.
inline double venn_union(std::span<const double> singles, const std::function<double(std::size_t, std::size_t)>& pair) {
  const std::size_t n = singles.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double only_i = singles[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) only_i -= pair(std::min(i, j), std::max(i, j));
    }
    total += only_i;
    for (std::size_t j = i + 1; j < n; ++j) total += pair(i, j);
  }
  return total;
}

// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  if (panels % 2 == 1) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t k = 1; k < panels; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
  }
  return sum * h / 3.0;
}

// sin²(n u)/sin²(u), using the Chebyshev form U_{n−1}(cos u)² near the
// removable singularities (where it tends to n²).
inline double grating_intensity(std::size_t n, double u) {
  const double s = std::sin(u);
  if (std::abs(s) > 1e-3) {
    const double r = std::sin(static_cast<double>(n) * u) / s;
    return r * r;
  }
  const double c = std::cos(u);
  double u_prev = 1.0;      // U_0
  double u_curr = 2.0 * c;  // U_1
  if (n == 1) return 1.0;
  for (std::size_t k = 2; k < n; ++k) {
    const double next = 2.0 * c * u_curr - u_prev;
    u_prev = u_curr;
    u_curr = next;
  }
  return u_curr * u_curr;
}

// Free-particle action of the two-leg path source → slit → screen.
inline double two_leg_free_action(double mass, double t0, double x0, double t1, double y, double t2, double x2) {
  const double leg1 = 0.5 * mass * (y - x0) * (y - x0) / (t1 - t0);
  const double leg2 = 0.5 * mass * (x2 - y) * (x2 - y) / (t2 - t1);
  return -(leg1 + leg2);
}

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace oracle
