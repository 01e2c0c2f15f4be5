#include "gsqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace gsqg {

namespace {

// FFTW plan creation is not thread-safe; execution on per-thread buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plans2D {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

Plans2D& plans_2d(int n) {
  // Leaked intentionally at thread exit; FFTW teardown order is fragile.
  thread_local std::map<int, Plans2D> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::lock_guard<std::mutex> lock(planner_mutex());
  Plans2D p;
  p.buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
  p.fwd = fftw_plan_dft_2d(n, n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(n, n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

struct Plans1D {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
};

Plans1D& plans_1d(int n) {
  thread_local std::map<int, Plans1D> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::lock_guard<std::mutex> lock(planner_mutex());
  Plans1D p;
  p.buf = fftw_alloc_complex(static_cast<std::size_t>(n));
  p.fwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

Spectrum2D to_spectrum(const ScalarField2D& f) {
  const int n = f.grid.n;
  Plans2D& p = plans_2d(n);
  const std::size_t m = f.grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    p.buf[i][0] = f.values[i];
    p.buf[i][1] = 0.0;
  }
  fftw_execute(p.fwd);
  Spectrum2D out(f.grid);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i)
    out.coeffs[i] = std::complex<double>(p.buf[i][0] * scale, p.buf[i][1] * scale);
  return out;
}

ScalarField2D to_field(const Spectrum2D& s) {
  const int n = s.grid.n;
  Plans2D& p = plans_2d(n);
  const std::size_t m = s.grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    p.buf[i][0] = s.coeffs[i].real();
    p.buf[i][1] = s.coeffs[i].imag();
  }
  fftw_execute(p.bwd);
  ScalarField2D out(s.grid);
  for (std::size_t i = 0; i < m; ++i) out.values[i] = p.buf[i][0];
  return out;
}

std::vector<std::complex<double>> dft_1d(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  Plans1D& p = plans_1d(n);
  for (int i = 0; i < n; ++i) {
    p.buf[i][0] = values[i];
    p.buf[i][1] = 0.0;
  }
  fftw_execute(p.fwd);
  std::vector<std::complex<double>> out(n);
  const double scale = 1.0 / n;
  for (int i = 0; i < n; ++i)
    out[i] = std::complex<double>(p.buf[i][0] * scale, p.buf[i][1] * scale);
  return out;
}

}  // namespace gsqg
