#include "deit/angular_momentum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace deit::angular {
namespace {

// n! for the small arguments that occur with F <= 5 (exact in double up to 22!).
double factorial(int n) {
  static const auto table = [] {
    std::array<double, 64> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table.at(static_cast<std::size_t>(n));
}

bool is_triangle(int a, int b, int c) {
  // doubled arguments
  if ((a + b + c) % 2 != 0) return false;
  return c >= std::abs(a - b) && c <= a + b;
}

// Triangle coefficient Delta(abc), doubled arguments.
double triangle_coefficient(int a, int b, int c) {
  return factorial((a + b - c) / 2) * factorial((a - b + c) / 2) * factorial((-a + b + c) / 2) /
         factorial((a + b + c) / 2 + 1);
}

int sign_of_power(int n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace

double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0) return 0.0;
  if (!is_triangle(j1, j2, j3)) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  if ((j1 + m1) % 2 != 0 || (j2 + m2) % 2 != 0 || (j3 + m3) % 2 != 0) return 0.0;

  // Racah formula, all quantities halved back to integers.
  const int a = (j1 + j2 - j3) / 2;
  const int b = (j1 - m1) / 2;
  const int c = (j2 + m2) / 2;
  const int d = (j3 - j2 + m1) / 2;
  const int e = (j3 - j1 - m2) / 2;
  const int k_min = std::max({0, -d, -e});
  const int k_max = std::min({a, b, c});

  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double denom = factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k) *
                         factorial(d + k) * factorial(e + k);
    sum += sign_of_power(k) / denom;
  }

  const double pre = std::sqrt(triangle_coefficient(j1, j2, j3) * factorial((j1 + m1) / 2) *
                               factorial((j1 - m1) / 2) * factorial((j2 + m2) / 2) *
                               factorial((j2 - m2) / 2) * factorial((j3 + m3) / 2) *
                               factorial((j3 - m3) / 2));
  return sign_of_power((j1 - j2 - m3) / 2) * pre * sum;
}

double wigner_6j(int j1, int j2, int j3, int j4, int j5, int j6) {
  if (!is_triangle(j1, j2, j3) || !is_triangle(j1, j5, j6) || !is_triangle(j4, j2, j6) ||
      !is_triangle(j4, j5, j3)) {
    return 0.0;
  }
  const int a1 = (j1 + j2 + j3) / 2;
  const int a2 = (j1 + j5 + j6) / 2;
  const int a3 = (j4 + j2 + j6) / 2;
  const int a4 = (j4 + j5 + j3) / 2;
  const int b1 = (j1 + j2 + j4 + j5) / 2;
  const int b2 = (j2 + j3 + j5 + j6) / 2;
  const int b3 = (j3 + j1 + j6 + j4) / 2;
  const int k_min = std::max({a1, a2, a3, a4});
  const int k_max = std::min({b1, b2, b3});

  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double denom = factorial(k - a1) * factorial(k - a2) * factorial(k - a3) *
                         factorial(k - a4) * factorial(b1 - k) * factorial(b2 - k) *
                         factorial(b3 - k);
    sum += sign_of_power(k) * factorial(k + 1) / denom;
  }
  const double pre = std::sqrt(triangle_coefficient(j1, j2, j3) * triangle_coefficient(j1, j5, j6) *
                               triangle_coefficient(j4, j2, j6) * triangle_coefficient(j4, j5, j3));
  return pre * sum;
}

double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
  return sign_of_power((j1 - j2 + M) / 2) * std::sqrt(J + 1.0) * wigner_3j(j1, j2, J, m1, m2, -M);
}

}  // namespace deit::angular
