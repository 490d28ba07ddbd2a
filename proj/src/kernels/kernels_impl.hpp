#pragma once

#include <cstddef>

namespace dasg::kernels {

#define DASG_KERNEL_DECLS                                                          \
  double sum_squares(const double* x, std::size_t n);                              \
  double squared_distance(const double* a, const double* b, std::size_t n);        \
  double dot(const double* a, const double* b, std::size_t n);                     \
  void scale(double* x, double s, std::size_t n);                                  \
  void hadamard(double* x, const double* c, std::size_t n);                        \
  void dual_update(double* lambda, double rho, const double* theta,                \
                   const double* theta0, std::size_t n);

namespace scalar {
DASG_KERNEL_DECLS
}
namespace avx2 {
DASG_KERNEL_DECLS
}

#undef DASG_KERNEL_DECLS

}  // namespace dasg::kernels
