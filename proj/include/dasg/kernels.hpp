#pragma once

// Data-parallel inner loops of the solver. Each kernel has a portable scalar
// reference and an AVX2/FMA variant; the variant is chosen once at startup
// from CPUID and can be pinned for equivalence testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace dasg::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  double (*sum_squares)(const double* x, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*scale)(double* x, double s, std::size_t n);
  void (*hadamard)(double* x, const double* c, std::size_t n);
  // lambda += rho * (theta - theta0)
  void (*dual_update)(double* lambda, double rho, const double* theta,
                      const double* theta0, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
// Null when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_supports(Isa isa) noexcept;
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;
// Pins the dispatch target; throws UsageError if the CPU lacks `isa`.
void set_isa(Isa isa);

// Restores the previous ISA on scope exit.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active_isa()) { set_isa(isa); }
  ~ScopedIsa() { set_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

const KernelTable& active() noexcept;

inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active().squared_distance(a.data(), b.data(), a.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void scale(std::span<double> x, double s) { active().scale(x.data(), s, x.size()); }
inline void hadamard(std::span<double> x, std::span<const double> c) {
  active().hadamard(x.data(), c.data(), x.size());
}
inline void dual_update(std::span<double> lambda, double rho, std::span<const double> theta,
                        std::span<const double> theta0) {
  active().dual_update(lambda.data(), rho, theta.data(), theta0.data(), lambda.size());
}

}  // namespace dasg::kernels
