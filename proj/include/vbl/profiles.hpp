#ifndef VBL_PROFILES_HPP
#define VBL_PROFILES_HPP

// Scalar closures shared across modules: the Cauchy weight, its logarithmic
// derivative, the Gaussian/trigonometric initial-data family, and a smooth
// compactly supported bump used by the weak-form test functions.

#include <cmath>

#include "vbl/fft.hpp"

namespace vbl {

inline double weight_omega(double v) { return 1.0 / (pi * (1.0 + v * v)); }

// alpha = omega'/omega
inline double alpha_of_v(double v) { return -2.0 * v / (1.0 + v * v); }

struct InitialProfile {
  double amplitude = 1.0;
  double epsilon = 0.1;
  int mode = 1;

  double operator()(double x, double v, double x_period) const {
    const double c = std::cos(2.0 * pi * mode * x / x_period);
    return amplitude * (1.0 + epsilon * c) * std::exp(-0.5 * v * v);
  }
};

// C-infinity bump supported on |v - center| < width, normalized to 1 at the
// center. Used as the v-factor of weak-form test functions.
struct Bump {
  double center = 0.0;
  double width = 1.0;

  double value(double v) const {
    const double s = (v - center) / width;
    const double t = 1.0 - s * s;
    if (t <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / t);
  }
  double derivative(double v) const {
    const double s = (v - center) / width;
    const double t = 1.0 - s * s;
    if (t <= 0.0) return 0.0;
    return value(v) * (-2.0 * s / (t * t)) / width;
  }
};

}  // namespace vbl

#endif
