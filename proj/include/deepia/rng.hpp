#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "deepia/math.hpp"

namespace deepia {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed and up to three
// stream tags (worker index, round, candidate, ...). Parallel workers seeded
// this way produce the same streams regardless of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t z = master;
  z = mix64(z + 0x9e3779b97f4a7c15ULL + a);
  z = mix64(z + 0x3c6ef372fe94f82aULL + b);
  z = mix64(z + 0x78dde6e5fd29f051ULL + c);
  return z;
}

// Seeded random stream. The engine (mt19937_64) is specified bit-exactly by
// the standard; the uniform and gaussian transforms are coded explicitly
// because the <random> distributions are implementation-defined and would
// break reproducibility across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // One standard normal draw (Box-Muller, no cached second value: every call
  // consumes exactly two engine outputs).
  double gaussian() {
    double u1;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo bias is negligible for the index ranges used
    // here, but stay exact anyway via widening multiply.
    const unsigned __int128 wide = static_cast<unsigned __int128>(eng_()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace deepia
