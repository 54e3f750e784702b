// Thin FFTW wrapper: cached plans, deterministic (FFTW_ESTIMATE) planning,
// thread-safe plan creation. Execution via the new-array interface is safe
// to call concurrently; each call works on caller-owned buffers.
#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <vector>

namespace dbar2d::fft {

namespace detail {

struct PlanKey {
  int n0, n1, sign;
  bool operator<(const PlanKey& o) const {
    if (n0 != o.n0) return n0 < o.n0;
    if (n1 != o.n1) return n1 < o.n1;
    return sign < o.sign;
  }
};

// FFTW planning is not thread-safe; creation is serialized and plans are
// kept for the process lifetime. FFTW_UNALIGNED lets the plan run on any
// caller buffer (std::vector storage included).
inline fftw_plan plan_2d(int n0, int n1, int sign) {
  static std::mutex mu;
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  const PlanKey key{n0, n1, sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> dummy(std::size_t(n0) * n1);
  fftw_plan p = fftw_plan_dft_2d(
      n0, n1, reinterpret_cast<fftw_complex*>(dummy.data()),
      reinterpret_cast<fftw_complex*>(dummy.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

}  // namespace detail

// In-place 2D DFT, n0 rows by n1 columns, sign -1 (forward e^{-i xi x}).
inline void forward_2d(int n0, int n1, std::complex<double>* data) {
  fftw_plan p = detail::plan_2d(n0, n1, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

// In-place 2D inverse DFT including the 1/(n0*n1) normalization.
inline void inverse_2d(int n0, int n1, std::complex<double>* data) {
  fftw_plan p = detail::plan_2d(n0, n1, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
  const double scale = 1.0 / (double(n0) * double(n1));
  const std::size_t total = std::size_t(n0) * n1;
  for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

// Signed integer frequency index for slot k of an n-point DFT.
inline int freq_index(int k, int n) { return k < n / 2 ? k : k - n; }

}  // namespace dbar2d::fft
