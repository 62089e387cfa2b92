#include <cmath>

#include "qtk/qcore.hpp"

namespace qtk {

namespace {

// B_{2k} for the asymptotic tails; nine terms reach ~1e-15 once y >= 12.
constexpr double kB2[] = {1.0 / 6,     -1.0 / 30,       1.0 / 42,
                          -1.0 / 30,   5.0 / 66,        -691.0 / 2730,
                          7.0 / 6,     -3617.0 / 510,   43867.0 / 798};

}  // namespace

double classical_psi(double x, int m) {
  if (!(x > 0.0))
    throw error(errc::non_positive_argument, "classical_psi: x must be positive");
  if (m < 0 || m > 3)
    throw error(errc::unsupported_order, "classical_psi: order must be 0..3");

  // shift the argument up until the asymptotic series is trustworthy
  double shift = 0.0;
  double y = x;
  while (y < 12.0) {
    if (m == 0)
      shift -= 1.0 / y;
    else if (m == 1)
      shift += 1.0 / (y * y);
    else if (m == 2)
      shift -= 2.0 / (y * y * y);
    else
      shift += 6.0 / (y * y * y * y);
    y += 1.0;
  }

  const double z = 1.0 / (y * y);
  if (m == 0) {
    double s = std::log(y) - 0.5 / y;
    double zk = z;
    for (int k = 1; k <= 9; ++k) {
      s -= kB2[k - 1] / (2.0 * k) * zk;
      zk *= z;
    }
    return s + shift;
  }
  if (m == 1) {
    double s = 1.0 / y + 0.5 * z;
    double zk = z / y;
    for (int k = 1; k <= 9; ++k) {
      s += kB2[k - 1] * zk;
      zk *= z;
    }
    return s + shift;
  }
  if (m == 2) {
    double s = -z - z / y;
    double zk = z * z;
    for (int k = 1; k <= 9; ++k) {
      s -= (2.0 * k + 1.0) * kB2[k - 1] * zk;
      zk *= z;
    }
    return s + shift;
  }
  double s = 2.0 * z / y + 3.0 * z * z;
  double zk = z * z / y;
  for (int k = 1; k <= 9; ++k) {
    s += (2.0 * k + 1.0) * (2.0 * k + 2.0) * kB2[k - 1] * zk;
    zk *= z;
  }
  return s + shift;
}

}  // namespace qtk
