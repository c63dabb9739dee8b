#pragma once

#include <chrono>
#include <cmath>
#include <utility>
#include <vector>

namespace siglab {

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

inline std::vector<double> geomspace(double a, double b, int n) {
  std::vector<double> v(n);
  const double q = std::pow(b / a, 1.0 / (n - 1));
  double x = a;
  for (int i = 0; i < n; ++i, x *= q) v[i] = x;
  v[n - 1] = b;
  return v;
}

// Least-squares fit y = c0 + c1*x; returns {c0, c1, rms residual}.
struct LineFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double rms = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.c1 = sxx > 0 ? sxy / sxx : 0.0;
  f.c0 = my - f.c1 * mx;
  double ss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - (f.c0 + f.c1 * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

class Stopwatch {
 public:
  Stopwatch() : start_(clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
};

}  // namespace siglab
