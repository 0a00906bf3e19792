#ifndef VBL_GRID_HPP
#define VBL_GRID_HPP

// Phase-space grid: periodic x in [0, L), uniform v in [-V, V) with a node
// exactly at v = 0. Node pairs (j, nv-j) sit at +/-v, so odd-in-v symmetry
// cancels exactly in quadrature; the lone unpaired node v = -V lies in the
// decay padding region.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbl/fft.hpp"

namespace vbl {

struct GridSpec {
  int nx = 0;
  int nv = 0;
  double x_period = 2.0 * pi;
  double v_halfwidth = 16.0;
  double dt = 0.0;
  double t_final = 0.0;

  static GridSpec make(int nx, int nv, double x_period, double v_halfwidth,
                       double dt, double t_final) {
    GridSpec g{nx, nv, x_period, v_halfwidth, dt, t_final};
    g.validate();
    return g;
  }

  void validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("GridSpec: " + msg); };
    if (nx < 16 || !is_power_of_two(static_cast<std::size_t>(nx)))
      fail("nx must be a power of two, at least 16 (got " + std::to_string(nx) + ")");
    if (nv < 16 || !is_power_of_two(static_cast<std::size_t>(nv)))
      fail("nv must be a power of two, at least 16 (got " + std::to_string(nv) + ")");
    if (!(x_period > 0.0)) fail("x_period must be positive");
    if (!(v_halfwidth > 0.0)) fail("v_halfwidth must be positive");
    if (!(dt > 0.0)) fail("dt must be positive");
    if (!(t_final > 0.0)) fail("t_final must be positive");
    const double ratio = t_final / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-12 * std::max(1.0, ratio))
      fail("dt must divide t_final to 1e-12 relative");
  }

  int steps() const { return static_cast<int>(std::round(t_final / dt)); }
  double dx() const { return x_period / nx; }
  double dv() const { return 2.0 * v_halfwidth / nv; }
  double x(int i) const { return dx() * i; }
  double v(int j) const { return -v_halfwidth + dv() * j; }

  std::vector<double> xs() const {
    std::vector<double> r(nx);
    for (int i = 0; i < nx; ++i) r[i] = x(i);
    return r;
  }
  std::vector<double> vs() const {
    std::vector<double> r(nv);
    for (int j = 0; j < nv; ++j) r[j] = v(j);
    return r;
  }

  bool same_mesh(const GridSpec& o) const {
    return nx == o.nx && nv == o.nv && x_period == o.x_period &&
           v_halfwidth == o.v_halfwidth;
  }
};

}  // namespace vbl

#endif
