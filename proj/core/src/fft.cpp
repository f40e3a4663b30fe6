#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace gravwave::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

struct ComplexPlans {
  int n = 0;
  std::unique_ptr<fftw_complex, FftwFree> buf;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~ComplexPlans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

struct RealPlans {
  int n = 0;
  std::unique_ptr<double, FftwFree> rbuf;
  std::unique_ptr<fftw_complex, FftwFree> cbuf;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~RealPlans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

ComplexPlans& complex_plans(int n) {
  thread_local std::map<int, std::unique_ptr<ComplexPlans>> cache;
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<ComplexPlans>();
    slot->n = n;
    const std::size_t count = static_cast<std::size_t>(n) * n;
    slot->buf.reset(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count)));
    std::lock_guard lock(planner_mutex());
    slot->fwd = fftw_plan_dft_2d(n, n, slot->buf.get(), slot->buf.get(), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    slot->bwd = fftw_plan_dft_2d(n, n, slot->buf.get(), slot->buf.get(), FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
  }
  return *slot;
}

RealPlans& real_plans(int n) {
  thread_local std::map<int, std::unique_ptr<RealPlans>> cache;
  thread_local RealPlans* last = nullptr;
  if (last && last->n == n) return *last;
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<RealPlans>();
    slot->n = n;
    const std::size_t rcount = static_cast<std::size_t>(n) * n;
    const std::size_t ccount = static_cast<std::size_t>(n) * (n / 2 + 1);
    slot->rbuf.reset(static_cast<double*>(fftw_malloc(sizeof(double) * rcount)));
    slot->cbuf.reset(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * ccount)));
    std::lock_guard lock(planner_mutex());
    slot->r2c = fftw_plan_dft_r2c_2d(n, n, slot->rbuf.get(), slot->cbuf.get(), FFTW_ESTIMATE);
    slot->c2r = fftw_plan_dft_c2r_2d(n, n, slot->cbuf.get(), slot->rbuf.get(), FFTW_ESTIMATE);
  }
  last = slot.get();
  return *slot;
}

}  // namespace

void fft2(std::complex<double>* data, int n, int sign) {
  auto& p = complex_plans(n);
  const std::size_t count = static_cast<std::size_t>(n) * n;
  auto* buf = reinterpret_cast<std::complex<double>*>(p.buf.get());
  std::copy(data, data + count, buf);
  fftw_execute(sign < 0 ? p.fwd : p.bwd);
  std::copy(buf, buf + count, data);
}

void rfft2(const double* in, std::complex<double>* out, int n) {
  auto& p = real_plans(n);
  const std::size_t rcount = static_cast<std::size_t>(n) * n;
  const std::size_t ccount = static_cast<std::size_t>(n) * (n / 2 + 1);
  std::copy(in, in + rcount, p.rbuf.get());
  fftw_execute(p.r2c);
  auto* c = reinterpret_cast<std::complex<double>*>(p.cbuf.get());
  std::copy(c, c + ccount, out);
}

void irfft2(const std::complex<double>* in, double* out, int n) {
  auto& p = real_plans(n);
  const std::size_t rcount = static_cast<std::size_t>(n) * n;
  const std::size_t ccount = static_cast<std::size_t>(n) * (n / 2 + 1);
  auto* c = reinterpret_cast<std::complex<double>*>(p.cbuf.get());
  std::copy(in, in + ccount, c);
  // c2r destroys its input; the copy above keeps the caller's array intact.
  fftw_execute(p.c2r);
  std::copy(p.rbuf.get(), p.rbuf.get() + rcount, out);
}

void* aligned_alloc_bytes(std::size_t bytes) { return fftw_malloc(bytes); }
void aligned_free(void* p) noexcept { fftw_free(p); }

void rfft2_aligned(double* in, std::complex<double>* out, int n) {
  auto& p = real_plans(n);
  fftw_execute_dft_r2c(p.r2c, in, reinterpret_cast<fftw_complex*>(out));
}

void irfft2_aligned(std::complex<double>* in, double* out, int n) {
  auto& p = real_plans(n);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(in), out);
}

void fft2_aligned(std::complex<double>* data, int n, int sign) {
  auto& p = complex_plans(n);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(sign < 0 ? p.fwd : p.bwd, d, d);
}

}  // namespace gravwave::detail
