#include "drsdiag/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace drsdiag {

void Vec::check_finite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) throw InputError("vector entries must be finite");
  }
}

bool Vec::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

Vec Vec::unit(std::size_t n, std::size_t i, double scale) {
  Vec e(n);
  e[i] = scale;
  return e;
}

Vec& Vec::operator+=(const Vec& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o[i];
  return *this;
}

Vec& Vec::operator*=(double a) {
  for (double& x : data_) x *= a;
  return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(double a, Vec v) { return v *= a; }
Vec operator-(Vec v) { return v *= -1.0; }

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dist(const Vec& a, const Vec& b) { return norm(a - b); }

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw InputError("matrix data size mismatch");
  for (double x : data_) {
    if (!std::isfinite(x)) throw InputError("matrix entries must be finite");
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Mat::apply(const Vec& x) const {
  Vec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

Vec Mat::apply_t(const Vec& y) const {
  Vec x(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) x[j] += data_[i * cols_ + j] * y[i];
  }
  return x;
}

std::size_t SymMat::pack(std::size_t i, std::size_t j) const {
  if (j > i) std::swap(i, j);
  // column j of the lower triangle starts after j full columns
  return j * n_ - j * (j + 1) / 2 + i;
}

SymMat SymMat::from_dense(std::size_t n, const std::vector<double>& d, double sym_tol) {
  if (d.size() != n * n) throw InputError("dense symmetric data size mismatch");
  double scale = 0.0;
  for (double x : d) scale = std::max(scale, std::abs(x));
  SymMat m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double a = d[i * n + j], b = d[j * n + i];
      if (std::abs(a - b) > sym_tol * std::max(1.0, scale)) {
        throw InputError("matrix is not symmetric");
      }
      m.set(i, j, 0.5 * (a + b));
    }
  }
  return m;
}

SymMat SymMat::diag(std::initializer_list<double> d) {
  SymMat m(d.size());
  std::size_t i = 0;
  for (double x : d) {
    m.set(i, i, x);
    ++i;
  }
  return m;
}

double SymMat::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = (*this)(i, j);
      s += (i == j) ? v * v : 2.0 * v * v;
    }
  }
  return std::sqrt(s);
}

namespace {

double offdiag_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
  }
  return std::sqrt(2.0 * s);
}

}  // namespace

EigDecomp eigh(const SymMat& m) {
  const std::size_t n = m.order();
  if (n > 64) throw InputError("eigh supports orders up to 64");

  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double fro = std::max(m.frobenius_norm(), 1e-300);
  const double tol = 1e-15 * fro;
  const int max_sweeps = 100;

  int sweep = 0;
  while (offdiag_norm(a, n) > tol) {
    if (++sweep > max_sweeps) {
      throw NumericalError("Jacobi eigensolver did not converge (bug signal)");
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::abs(apq) <= 1e-300) continue;
        double app = a[p * n + p], aqq = a[q * n + q];
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

  EigDecomp d;
  d.eigenvalues.resize(n);
  d.eigenvectors = Mat(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    d.eigenvalues[c] = a[order[c] * n + order[c]];
    for (std::size_t r = 0; r < n; ++r) d.eigenvectors(r, c) = v[r * n + order[c]];
  }
  return d;
}

std::size_t svec_dim(std::size_t order) { return order * (order + 1) / 2; }

std::size_t svec_index(std::size_t i, std::size_t j, std::size_t order) {
  if (j > i) std::swap(i, j);
  return j * order - j * (j + 1) / 2 + i;
}

Vec svec(const SymMat& m) {
  const std::size_t n = m.order();
  Vec v(svec_dim(n));
  const double s2 = std::sqrt(2.0);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      v[k++] = (i == j) ? m(i, j) : s2 * m(i, j);
    }
  }
  return v;
}

SymMat smat(const Vec& v) {
  // invert n(n+1)/2 = len
  std::size_t n = 0;
  while (svec_dim(n) < v.size()) ++n;
  if (svec_dim(n) != v.size()) {
    throw InputError("smat input length is not a triangular number");
  }
  SymMat m(n);
  const double inv_s2 = 1.0 / std::sqrt(2.0);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      m.set(i, j, (i == j) ? v[k] : inv_s2 * v[k]);
      ++k;
    }
  }
  return m;
}

Vec solve_spd(const Mat& s, const Vec& b) {
  const std::size_t n = s.rows();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = s(i, j);
      for (std::size_t k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (sum <= 0.0) throw NumericalError("matrix not positive definite in Cholesky");
        l[i * n + i] = std::sqrt(sum);
      } else {
        l[i * n + j] = sum / l[j * n + j];
      }
    }
  }
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= l[i * n + k] * y[k];
    y[i] = sum / l[i * n + i];
  }
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double sum = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) sum -= l[k * n + ii] * x[k];
    x[ii] = sum / l[ii * n + ii];
  }
  return x;
}

}  // namespace drsdiag
