#include <immintrin.h>

#include <cstddef>

namespace bpdd::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot_avx2(const double* x, const double* y, std::size_t len) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  __m256d a2 = _mm256_setzero_pd();
  __m256d a3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= len; i += 16) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
    a2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), a2);
    a3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), a3);
  }
  for (; i + 4 <= len; i += 4)
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double tail = 0.0;
  for (; i < len; ++i) tail += x[i] * y[i];
  return hsum(_mm256_add_pd(_mm256_add_pd(a0, a1), _mm256_add_pd(a2, a3))) + tail;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t len) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i + 4, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4),
                                                _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= len; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < len; ++i) y[i] += alpha * x[i];
}

void panel_dots_avx2(const double* cols, std::size_t ld, std::size_t rows,
                     std::size_t ncols, const double* y, double* out) {
  std::size_t j = 0;
  // Four columns per pass so each y load is reused four times.
  for (; j + 4 <= ncols; j += 4) {
    const double* c0 = cols + (j + 0) * ld;
    const double* c1 = cols + (j + 1) * ld;
    const double* c2 = cols + (j + 2) * ld;
    const double* c3 = cols + (j + 3) * ld;
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd(), a3 = _mm256_setzero_pd();
    std::size_t r = 0;
    for (; r + 4 <= rows; r += 4) {
      __m256d vy = _mm256_loadu_pd(y + r);
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(c0 + r), vy, a0);
      a1 = _mm256_fmadd_pd(_mm256_loadu_pd(c1 + r), vy, a1);
      a2 = _mm256_fmadd_pd(_mm256_loadu_pd(c2 + r), vy, a2);
      a3 = _mm256_fmadd_pd(_mm256_loadu_pd(c3 + r), vy, a3);
    }
    double t0 = 0, t1 = 0, t2 = 0, t3 = 0;
    for (; r < rows; ++r) {
      t0 += c0[r] * y[r];
      t1 += c1[r] * y[r];
      t2 += c2[r] * y[r];
      t3 += c3[r] * y[r];
    }
    out[j + 0] = hsum(a0) + t0;
    out[j + 1] = hsum(a1) + t1;
    out[j + 2] = hsum(a2) + t2;
    out[j + 3] = hsum(a3) + t3;
  }
  for (; j < ncols; ++j) out[j] = dot_avx2(cols + j * ld, y, rows);
}

void gram_block_avx2(const double* A, std::size_t lda, std::size_t na,
                     const double* B, std::size_t ldb, std::size_t nb,
                     std::size_t rows, double* C) {
  // 3x4 register tile: 12 accumulators + 3 A vectors + 1 rotating B vector.
  std::size_t i = 0;
  for (; i + 3 <= na; i += 3) {
    const double* a0 = A + (i + 0) * lda;
    const double* a1 = A + (i + 1) * lda;
    const double* a2 = A + (i + 2) * lda;
    std::size_t j = 0;
    for (; j + 4 <= nb; j += 4) {
      const double* b0 = B + (j + 0) * ldb;
      const double* b1 = B + (j + 1) * ldb;
      const double* b2 = B + (j + 2) * ldb;
      const double* b3 = B + (j + 3) * ldb;
      __m256d c00 = _mm256_setzero_pd(), c01 = _mm256_setzero_pd();
      __m256d c02 = _mm256_setzero_pd(), c03 = _mm256_setzero_pd();
      __m256d c10 = _mm256_setzero_pd(), c11 = _mm256_setzero_pd();
      __m256d c12 = _mm256_setzero_pd(), c13 = _mm256_setzero_pd();
      __m256d c20 = _mm256_setzero_pd(), c21 = _mm256_setzero_pd();
      __m256d c22 = _mm256_setzero_pd(), c23 = _mm256_setzero_pd();
      std::size_t r = 0;
      for (; r + 4 <= rows; r += 4) {
        __m256d va0 = _mm256_loadu_pd(a0 + r);
        __m256d va1 = _mm256_loadu_pd(a1 + r);
        __m256d va2 = _mm256_loadu_pd(a2 + r);
        __m256d vb = _mm256_loadu_pd(b0 + r);
        c00 = _mm256_fmadd_pd(va0, vb, c00);
        c10 = _mm256_fmadd_pd(va1, vb, c10);
        c20 = _mm256_fmadd_pd(va2, vb, c20);
        vb = _mm256_loadu_pd(b1 + r);
        c01 = _mm256_fmadd_pd(va0, vb, c01);
        c11 = _mm256_fmadd_pd(va1, vb, c11);
        c21 = _mm256_fmadd_pd(va2, vb, c21);
        vb = _mm256_loadu_pd(b2 + r);
        c02 = _mm256_fmadd_pd(va0, vb, c02);
        c12 = _mm256_fmadd_pd(va1, vb, c12);
        c22 = _mm256_fmadd_pd(va2, vb, c22);
        vb = _mm256_loadu_pd(b3 + r);
        c03 = _mm256_fmadd_pd(va0, vb, c03);
        c13 = _mm256_fmadd_pd(va1, vb, c13);
        c23 = _mm256_fmadd_pd(va2, vb, c23);
      }
      double t[3][4] = {};
      for (; r < rows; ++r) {
        const double x0 = a0[r], x1 = a1[r], x2 = a2[r];
        t[0][0] += x0 * b0[r]; t[0][1] += x0 * b1[r];
        t[0][2] += x0 * b2[r]; t[0][3] += x0 * b3[r];
        t[1][0] += x1 * b0[r]; t[1][1] += x1 * b1[r];
        t[1][2] += x1 * b2[r]; t[1][3] += x1 * b3[r];
        t[2][0] += x2 * b0[r]; t[2][1] += x2 * b1[r];
        t[2][2] += x2 * b2[r]; t[2][3] += x2 * b3[r];
      }
      C[(i + 0) + (j + 0) * na] = hsum(c00) + t[0][0];
      C[(i + 0) + (j + 1) * na] = hsum(c01) + t[0][1];
      C[(i + 0) + (j + 2) * na] = hsum(c02) + t[0][2];
      C[(i + 0) + (j + 3) * na] = hsum(c03) + t[0][3];
      C[(i + 1) + (j + 0) * na] = hsum(c10) + t[1][0];
      C[(i + 1) + (j + 1) * na] = hsum(c11) + t[1][1];
      C[(i + 1) + (j + 2) * na] = hsum(c12) + t[1][2];
      C[(i + 1) + (j + 3) * na] = hsum(c13) + t[1][3];
      C[(i + 2) + (j + 0) * na] = hsum(c20) + t[2][0];
      C[(i + 2) + (j + 1) * na] = hsum(c21) + t[2][1];
      C[(i + 2) + (j + 2) * na] = hsum(c22) + t[2][2];
      C[(i + 2) + (j + 3) * na] = hsum(c23) + t[2][3];
    }
    for (; j < nb; ++j) {
      C[(i + 0) + j * na] = dot_avx2(a0, B + j * ldb, rows);
      C[(i + 1) + j * na] = dot_avx2(a1, B + j * ldb, rows);
      C[(i + 2) + j * na] = dot_avx2(a2, B + j * ldb, rows);
    }
  }
  for (; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      C[i + j * na] = dot_avx2(A + i * lda, B + j * ldb, rows);
}

}  // namespace bpdd::kernels::detail
