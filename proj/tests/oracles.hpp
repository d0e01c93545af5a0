#pragma once

// brute-force oracles used to validate kernels independently of the
// implementation paths under test

#include <functional>
#include <random>

#include "drsdiag/linalg.hpp"

namespace testing_oracles {

inline double golden_min(const std::function<double(double)>& h, double lo, double hi,
                         int iters = 200) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  for (int it = 0; it < iters; ++it) {
    if (h(c) < h(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return 0.5 * (a + b);
}

/// Coarse grid over [lo, hi]^2 followed by coordinate-wise golden polish.
inline std::pair<double, double> grid_min_2d(const std::function<double(double, double)>& h,
                                             double lo, double hi, int cells = 200) {
  double bu = lo, bv = lo, best = h(lo, lo);
  for (int a = 0; a <= cells; ++a) {
    for (int b = 0; b <= cells; ++b) {
      double u = lo + (hi - lo) * a / cells, v = lo + (hi - lo) * b / cells;
      if (double val = h(u, v); val < best) {
        best = val;
        bu = u;
        bv = v;
      }
    }
  }
  double step = (hi - lo) / cells;
  for (int round = 0; round < 60; ++round) {
    bu = golden_min([&](double u) { return h(u, bv); }, std::max(lo, bu - step), bu + step);
    bv = golden_min([&](double v) { return h(bu, v); }, std::max(lo, bv - step), bv + step);
  }
  return {bu, bv};
}

struct Rng {
  std::mt19937_64 gen;
  std::normal_distribution<double> gauss{0.0, 2.0};
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double operator()() { return gauss(gen); }
  drsdiag::Vec vec(std::size_t n) {
    drsdiag::Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = gauss(gen);
    return v;
  }
};

}  // namespace testing_oracles
