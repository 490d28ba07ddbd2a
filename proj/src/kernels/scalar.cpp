#include "kernels_impl.hpp"

namespace dasg::kernels::scalar {

double sum_squares(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void scale(double* x, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

void hadamard(double* x, const double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= c[i];
}

void dual_update(double* lambda, double rho, const double* theta, const double* theta0,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) lambda[i] += rho * (theta[i] - theta0[i]);
}

}  // namespace dasg::kernels::scalar
