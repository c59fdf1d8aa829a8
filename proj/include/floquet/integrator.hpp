#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "floquet/types.hpp"

namespace floquet {

struct StiffnessError : std::runtime_error {
  double x;
  StiffnessError(const std::string& what, double where) : std::runtime_error(what), x(where) {}
};

struct StepControl {
  double rtol = 1e-11;
  double atol = 1e-13;
  long max_steps = 5000000;
};

struct StepStats {
  long accepted = 0;
  long rejected = 0;
};

// Prince-Dormand RK8(7)13M coefficients.
struct RK87Tableau {
  static constexpr int S = 13;
  std::array<double, S> c{};
  std::array<std::array<double, S>, S> a{};
  std::array<double, S> b8{};
  std::array<double, S> b7{};
  RK87Tableau();
};

const RK87Tableau& rk87_tableau();

// Integrates Y' = F(x, Y, dY) for a matrix-valued state from x0 to x1.
// F writes the derivative into its third argument.
template <class Mat, class Rhs>
Mat integrate_rk87(Rhs&& F, double x0, double x1, Mat Y, const StepControl& ctl,
                   StepStats* stats = nullptr) {
  const RK87Tableau& tb = rk87_tableau();
  constexpr int S = RK87Tableau::S;
  std::array<Mat, S> K;
  for (auto& k : K) k.resizeLike(Y);
  Mat Ys(Y.rows(), Y.cols()), Y8(Y.rows(), Y.cols()), E(Y.rows(), Y.cols());

  const double L = x1 - x0;
  const double dir = L >= 0 ? 1.0 : -1.0;
  double h = dir * std::abs(L) / 32.0;
  double x = x0;
  long steps = 0;
  F(x, Y, K[0]);
  while (dir * (x1 - x) > 0) {
    if (++steps > ctl.max_steps) throw StiffnessError("integrate_rk87: step budget exhausted", x);
    if (dir * (x + h - x1) > 0) h = x1 - x;
    for (int s = 1; s < S; ++s) {
      Ys = Y;
      for (int j = 0; j < s; ++j)
        if (tb.a[s][j] != 0.0) Ys += (h * tb.a[s][j]) * K[j];
      F(x + tb.c[s] * h, Ys, K[s]);
    }
    Y8 = Y;
    E.setZero();
    for (int s = 0; s < S; ++s) {
      if (tb.b8[s] != 0.0) Y8 += (h * tb.b8[s]) * K[s];
      const double db = tb.b8[s] - tb.b7[s];
      if (db != 0.0) E += (h * db) * K[s];
    }
    double acc = 0;
    for (Eigen::Index i = 0; i < Y.size(); ++i) {
      const double sc = ctl.atol + ctl.rtol * std::max(std::abs(Y(i)), std::abs(Y8(i)));
      const double r = std::abs(E(i)) / sc;
      acc += r * r;
    }
    const double err = std::sqrt(acc / static_cast<double>(Y.size()));
    if (err <= 1.0) {
      x += h;
      Y = Y8;
      F(x, Y, K[0]);
      if (stats) ++stats->accepted;
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -1.0 / 8.0), 0.2, 5.0);
      h *= fac;
    } else {
      if (stats) ++stats->rejected;
      h *= std::clamp(0.9 * std::pow(err, -1.0 / 8.0), 0.1, 0.9);
      if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x)))
        throw StiffnessError("integrate_rk87: step size underflow at x = " + std::to_string(x), x);
    }
  }
  return Y;
}

}  // namespace floquet
