#pragma once

// Thin FFTW wrappers. Plans are created with FFTW_ESTIMATE so repeated runs
// pick the same algorithm and produce bit-identical output. Each thread keeps
// its own plans and work buffers.

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace gravwave::detail {

/// Unnormalized 2D complex DFT of size n x n, in place on `data`.
/// sign = -1 forward, +1 backward.
void fft2(std::complex<double>* data, int n, int sign);

/// Unnormalized real-to-half-complex 2D DFT: in has n*n reals, out has
/// n*(n/2+1) complex values.
void rfft2(const double* in, std::complex<double>* out, int n);
/// Inverse of rfft2 (unnormalized); `in` is left untouched.
void irfft2(const std::complex<double>* in, double* out, int n);

void* aligned_alloc_bytes(std::size_t bytes);
void aligned_free(void* p) noexcept;

/// Allocator returning FFTW-aligned storage, so the arrays below can be
/// handed straight to the cached plans.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t count) {
    void* p = aligned_alloc_bytes(count * sizeof(T));
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { aligned_free(p); }
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

template <class T>
using AlignedVector = std::vector<T, FftwAllocator<T>>;

/// rfft2 without staging copies; both arrays must come from AlignedVector.
void rfft2_aligned(double* in, std::complex<double>* out, int n);
/// irfft2 without staging copies; `in` is overwritten.
void irfft2_aligned(std::complex<double>* in, double* out, int n);

/// fft2 in place without staging copies; data must come from AlignedVector.
void fft2_aligned(std::complex<double>* data, int n, int sign);

}  // namespace gravwave::detail
