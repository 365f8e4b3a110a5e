#include "bpdd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace bpdd::kernels {

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t len) {
  // Four independent accumulators; matches the reassociation width of the
  // vector backends closely enough that cross-backend drift stays tiny.
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < len; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

void panel_dots_scalar(const double* cols, std::size_t ld, std::size_t rows,
                       std::size_t ncols, const double* y, double* out) {
  for (std::size_t j = 0; j < ncols; ++j)
    out[j] = dot_scalar(cols + j * ld, y, rows);
}

void gram_block_scalar(const double* A, std::size_t lda, std::size_t na,
                       const double* B, std::size_t ldb, std::size_t nb,
                       std::size_t rows, double* C) {
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < na; ++i)
      C[i + j * na] = dot_scalar(A + i * lda, B + j * ldb, rows);
}

#if defined(BPDD_BUILD_AVX2)
double dot_avx2(const double*, const double*, std::size_t);
void axpy_avx2(double, const double*, double*, std::size_t);
void panel_dots_avx2(const double*, std::size_t, std::size_t, std::size_t,
                     const double*, double*);
void gram_block_avx2(const double*, std::size_t, std::size_t, const double*,
                     std::size_t, std::size_t, std::size_t, double*);
#endif
#if defined(BPDD_BUILD_AVX512)
double dot_avx512(const double*, const double*, std::size_t);
void axpy_avx512(double, const double*, double*, std::size_t);
void panel_dots_avx512(const double*, std::size_t, std::size_t, std::size_t,
                       const double*, double*);
void gram_block_avx512(const double*, std::size_t, std::size_t, const double*,
                       std::size_t, std::size_t, std::size_t, double*);
#endif

struct Vtable {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*panel_dots)(const double*, std::size_t, std::size_t, std::size_t,
                     const double*, double*);
  void (*gram_block)(const double*, std::size_t, std::size_t, const double*,
                     std::size_t, std::size_t, std::size_t, double*);
};

constexpr Vtable kScalar{dot_scalar, axpy_scalar, panel_dots_scalar,
                         gram_block_scalar};
#if defined(BPDD_BUILD_AVX2)
constexpr Vtable kAvx2{dot_avx2, axpy_avx2, panel_dots_avx2, gram_block_avx2};
#endif
#if defined(BPDD_BUILD_AVX512)
constexpr Vtable kAvx512{dot_avx512, axpy_avx512, panel_dots_avx512,
                         gram_block_avx512};
#endif

bool cpu_has(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(BPDD_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::avx512:
#if defined(BPDD_BUILD_AVX512) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx512f");
#else
      return false;
#endif
  }
  return false;
}

const Vtable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &kScalar;
#if defined(BPDD_BUILD_AVX2)
    case Backend::avx2:
      return &kAvx2;
#endif
#if defined(BPDD_BUILD_AVX512)
    case Backend::avx512:
      return &kAvx512;
#endif
    default:
      return nullptr;
  }
}

Backend pick_default() {
  if (const char* env = std::getenv("BPDD_KERNELS")) {
    std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && cpu_has(Backend::avx2)) return Backend::avx2;
    if (v == "avx512" && cpu_has(Backend::avx512)) return Backend::avx512;
    // Unknown or unavailable request falls through to auto-detection.
  }
  if (cpu_has(Backend::avx512)) return Backend::avx512;
  if (cpu_has(Backend::avx2)) return Backend::avx2;
  return Backend::scalar;
}

std::atomic<const Vtable*> g_active{nullptr};
std::atomic<Backend> g_active_backend{Backend::scalar};
std::once_flag g_init_once;

const Vtable* active() {
  std::call_once(g_init_once, [] {
    Backend b = pick_default();
    g_active_backend.store(b, std::memory_order_relaxed);
    g_active.store(table_for(b), std::memory_order_release);
  });
  return g_active.load(std::memory_order_acquire);
}

}  // namespace detail

Backend active_backend() {
  detail::active();
  return detail::g_active_backend.load(std::memory_order_relaxed);
}

void set_backend(Backend b) {
  detail::active();
  if (!detail::cpu_has(b))
    throw std::runtime_error("kernel backend not available: " +
                             backend_name(b));
  detail::g_active_backend.store(b, std::memory_order_relaxed);
  detail::g_active.store(detail::table_for(b), std::memory_order_release);
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::avx512})
    if (detail::cpu_has(b)) out.push_back(b);
  return out;
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::avx512:
      return "avx512";
  }
  return "unknown";
}

double dot(const double* x, const double* y, std::size_t len) {
  return detail::active()->dot(x, y, len);
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
  detail::active()->axpy(alpha, x, y, len);
}

void panel_dots(const double* cols, std::size_t ld, std::size_t rows,
                std::size_t ncols, const double* y, double* out) {
  detail::active()->panel_dots(cols, ld, rows, ncols, y, out);
}

void gram_block(const double* A, std::size_t lda, std::size_t na,
                const double* B, std::size_t ldb, std::size_t nb,
                std::size_t rows, double* C) {
  detail::active()->gram_block(A, lda, na, B, ldb, nb, rows, C);
}

}  // namespace bpdd::kernels
