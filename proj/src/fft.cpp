#include "pauli_tomograph/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "pauli_tomograph/errors.hpp"

namespace pt {
namespace {

std::mutex plan_mutex;

enum class PlanKind { Forward, Backward, RealForward, RealBackward };

fftw_plan make_plan(std::size_t n, PlanKind kind) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  static std::map<std::pair<std::size_t, PlanKind>, fftw_plan> cache;
  auto key = std::make_pair(n, kind);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const int len = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_complex* c = fftw_alloc_complex(n);
  double* r = fftw_alloc_real(n);
  fftw_plan p = nullptr;
  switch (kind) {
    case PlanKind::Forward: p = fftw_plan_dft_1d(len, c, c, FFTW_FORWARD, flags); break;
    case PlanKind::Backward: p = fftw_plan_dft_1d(len, c, c, FFTW_BACKWARD, flags); break;
    case PlanKind::RealForward: p = fftw_plan_dft_r2c_1d(len, r, c, flags); break;
    case PlanKind::RealBackward: p = fftw_plan_dft_c2r_1d(len, c, r, flags); break;
  }
  fftw_free(c);
  fftw_free(r);
  require(p != nullptr, ErrorKind::Capability, "FFTW plan creation failed");
  cache.emplace(key, p);
  return p;
}

// Per-thread front cache so the hot path never takes the planner lock.
fftw_plan plan_for(std::size_t n, PlanKind kind) {
  thread_local std::map<std::pair<std::size_t, PlanKind>, fftw_plan> local;
  auto key = std::make_pair(n, kind);
  auto it = local.find(key);
  if (it != local.end()) return it->second;
  fftw_plan p = make_plan(n, kind);
  local.emplace(key, p);
  return p;
}

fftw_plan plan_for(std::size_t n, int sign) { return plan_for(n, sign < 0 ? PlanKind::Forward : PlanKind::Backward); }

}  // namespace

void fft(cplx* data, std::size_t n, int sign) {
  if (n <= 1) return;
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan_for(n, sign), d, d);
}

void fft_axis(std::vector<cplx>& data, const std::vector<std::size_t>& shape, std::size_t axis, int sign) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) inner *= shape[i];
  const std::size_t n = shape[axis];
  if (inner == 1) {
    for (std::size_t o = 0; o < outer; ++o) fft(data.data() + o * n, n, sign);
    return;
  }
  std::vector<cplx> line(n);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i) {
      cplx* base = data.data() + o * n * inner + i;
      for (std::size_t j = 0; j < n; ++j) line[j] = base[j * inner];
      fft(line.data(), n, sign);
      for (std::size_t j = 0; j < n; ++j) base[j * inner] = line[j];
    }
}

std::vector<double> wavenumbers(const Axis& a) {
  const std::size_t n = a.count;
  const double dk = 2.0 * std::numbers::pi / a.length();
  std::vector<double> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double idx = (j < (n + 1) / 2) ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    k[j] = idx * dk;
  }
  return k;
}

void apply_multiplier(cplx* line, std::size_t n, const std::vector<cplx>& mult) {
  fft(line, n, -1);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) line[j] *= mult[j] * inv;
  fft(line, n, +1);
}

void translate(cplx* line, const Axis& a, double shift) {
  if (shift == 0.0) return;
  const auto k = wavenumbers(a);
  std::vector<cplx> mult(a.count);
  for (std::size_t j = 0; j < a.count; ++j) mult[j] = std::polar(1.0, -k[j] * shift);
  if (a.count % 2 == 0) mult[a.count / 2] = std::cos(k[a.count / 2] * shift);
  apply_multiplier(line, a.count, mult);
}

void translate(double* line, const Axis& a, double shift) {
  if (shift == 0.0) return;
  const std::size_t n = a.count;
  const std::size_t half = n / 2 + 1;
  thread_local std::vector<cplx> spec;
  spec.resize(half);
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  fftw_execute_dft_r2c(plan_for(n, PlanKind::RealForward), line, c);
  const double dk = 2.0 * std::numbers::pi / a.length();
  const double inv = 1.0 / static_cast<double>(n);
  // Phases by recurrence, reseeded every 32 bins to keep rounding at the 1e-15 level.
  cplx step = std::polar(1.0, -dk * shift), cur = 1.0;
  for (std::size_t j = 0; j < half; ++j) {
    if (j % 32 == 0) cur = std::polar(1.0, -dk * shift * static_cast<double>(j));
    if (n % 2 == 0 && j == n / 2)
      spec[j] *= std::cos(dk * static_cast<double>(j) * shift) * inv;
    else
      spec[j] *= cur * inv;
    cur *= step;
  }
  fftw_execute_dft_c2r(plan_for(n, PlanKind::RealBackward), c, line);
}

}  // namespace pt
