#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dasg {

// Reproducible random stream. The engine is std::mt19937_64, whose raw output
// is fixed by the C++ standard; the derived uniform, normal and bounded-integer
// draws are implemented here so they do not depend on the standard library's
// distribution algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // 53-bit uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Standard normal by the Marsaglia polar method.
  double normal();
  // Uniform integer on [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dasg
