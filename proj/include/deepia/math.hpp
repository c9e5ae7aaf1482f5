#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef DEEPIA_USE_CBLAS
#include <cblas.h>
extern "C" void openblas_set_num_threads(int);
#endif

namespace deepia {

inline constexpr double kPi = 3.14159265358979323846;

// Row-major dense matrix of doubles. Training runs in 64-bit throughout so
// the finite-difference gradient checks stay tight.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double* row(std::size_t r) { return data.data() + r * cols; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }
  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::size_t size() const { return data.size(); }
  void zero() { std::memset(data.data(), 0, data.size() * sizeof(double)); }
};

namespace detail {

#ifdef DEEPIA_USE_CBLAS
// OpenBLAS mis-detects this host ("unknown" model name -> generic kernel),
// which costs ~6x in dgemm throughput. Pick the widest kernel the CPU
// supports unless the user already chose one. Must run before the first
// BLAS call; no effect on results, only speed.
inline void select_blas_kernel() {
  if (std::getenv("OPENBLAS_CORETYPE") != nullptr) return;
#ifdef __linux__
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("flags", 0) != 0) continue;
    const bool avx512 = line.find(" avx512f") != std::string::npos &&
                        line.find(" avx512vl") != std::string::npos &&
                        line.find(" avx512bw") != std::string::npos &&
                        line.find(" avx512dq") != std::string::npos;
    const bool avx2 = line.find(" avx2") != std::string::npos &&
                      line.find(" fma") != std::string::npos;
    if (avx512)
      ::setenv("OPENBLAS_CORETYPE", "SKYLAKEX", 0);
    else if (avx2)
      ::setenv("OPENBLAS_CORETYPE", "HASWELL", 0);
    break;
  }
#endif
}
#endif

inline void blas_init() {
#ifdef DEEPIA_USE_CBLAS
  static std::once_flag once;
  std::call_once(once, [] {
    select_blas_kernel();
    // Single-threaded BLAS: determinism is trivially scheduling-independent
    // and outer loops (receivers, SFS candidates) carry the parallelism.
    openblas_set_num_threads(1);
  });
#endif
}

}  // namespace detail

// C = alpha * op(A) * op(B) + beta * C
inline void gemm(bool trans_a, bool trans_b, double alpha, const Matrix& a,
                 const Matrix& b, double beta, Matrix& c) {
  const std::size_t m = trans_a ? a.cols : a.rows;
  const std::size_t k = trans_a ? a.rows : a.cols;
  const std::size_t kb = trans_b ? b.cols : b.rows;
  const std::size_t n = trans_b ? b.rows : b.cols;
  if (k != kb || c.rows != m || c.cols != n)
    throw std::invalid_argument("gemm: shape mismatch");
#ifdef DEEPIA_USE_CBLAS
  detail::blas_init();
  cblas_dgemm(CblasRowMajor, trans_a ? CblasTrans : CblasNoTrans,
              trans_b ? CblasTrans : CblasNoTrans, static_cast<int>(m),
              static_cast<int>(n), static_cast<int>(k), alpha, a.data.data(),
              static_cast<int>(a.cols), b.data.data(),
              static_cast<int>(b.cols), beta, c.data.data(),
              static_cast<int>(c.cols));
#else
  // Fallback: fixed-order blocked kernel, deterministic by construction.
  constexpr std::size_t kBlock = 64;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) c.at(i, j) *= beta;
  for (std::size_t kk = 0; kk < k; kk += kBlock) {
    const std::size_t kend = std::min(k, kk + kBlock);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t p = kk; p < kend; ++p) {
        const double av = alpha * (trans_a ? a.at(p, i) : a.at(i, p));
        if (av == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j)
          c.at(i, j) += av * (trans_b ? b.at(j, p) : b.at(p, j));
      }
    }
  }
#endif
}

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }

// Normalizes an angle into [0, 360).
inline double norm360(double deg) {
  double a = std::fmod(deg, 360.0);
  if (a < 0.0) a += 360.0;
  if (a >= 360.0) a = 0.0;  // fmod can round back up to 360 exactly
  return a;
}

}  // namespace deepia
