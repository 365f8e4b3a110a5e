#include <immintrin.h>

#include <cstddef>

namespace bpdd::kernels::detail {

namespace {

inline __mmask8 tail_mask(std::size_t remaining) {
  return static_cast<__mmask8>((1u << remaining) - 1u);
}

}  // namespace

double dot_avx512(const double* x, const double* y, std::size_t len) {
  __m512d a0 = _mm512_setzero_pd();
  __m512d a1 = _mm512_setzero_pd();
  __m512d a2 = _mm512_setzero_pd();
  __m512d a3 = _mm512_setzero_pd();
  std::size_t i = 0;
  for (; i + 32 <= len; i += 32) {
    a0 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i), _mm512_loadu_pd(y + i), a0);
    a1 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i + 8), _mm512_loadu_pd(y + i + 8), a1);
    a2 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i + 16), _mm512_loadu_pd(y + i + 16), a2);
    a3 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i + 24), _mm512_loadu_pd(y + i + 24), a3);
  }
  for (; i + 8 <= len; i += 8)
    a0 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i), _mm512_loadu_pd(y + i), a0);
  if (i < len) {
    const __mmask8 m = tail_mask(len - i);
    a1 = _mm512_fmadd_pd(_mm512_maskz_loadu_pd(m, x + i),
                         _mm512_maskz_loadu_pd(m, y + i), a1);
  }
  return _mm512_reduce_add_pd(
      _mm512_add_pd(_mm512_add_pd(a0, a1), _mm512_add_pd(a2, a3)));
}

void axpy_avx512(double alpha, const double* x, double* y, std::size_t len) {
  const __m512d va = _mm512_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8)
    _mm512_storeu_pd(y + i, _mm512_fmadd_pd(va, _mm512_loadu_pd(x + i),
                                            _mm512_loadu_pd(y + i)));
  if (i < len) {
    const __mmask8 m = tail_mask(len - i);
    _mm512_mask_storeu_pd(y + i, m,
                          _mm512_fmadd_pd(va, _mm512_maskz_loadu_pd(m, x + i),
                                          _mm512_maskz_loadu_pd(m, y + i)));
  }
}

void panel_dots_avx512(const double* cols, std::size_t ld, std::size_t rows,
                       std::size_t ncols, const double* y, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= ncols; j += 4) {
    const double* c0 = cols + (j + 0) * ld;
    const double* c1 = cols + (j + 1) * ld;
    const double* c2 = cols + (j + 2) * ld;
    const double* c3 = cols + (j + 3) * ld;
    __m512d a0 = _mm512_setzero_pd(), a1 = _mm512_setzero_pd();
    __m512d a2 = _mm512_setzero_pd(), a3 = _mm512_setzero_pd();
    std::size_t r = 0;
    for (; r + 8 <= rows; r += 8) {
      __m512d vy = _mm512_loadu_pd(y + r);
      a0 = _mm512_fmadd_pd(_mm512_loadu_pd(c0 + r), vy, a0);
      a1 = _mm512_fmadd_pd(_mm512_loadu_pd(c1 + r), vy, a1);
      a2 = _mm512_fmadd_pd(_mm512_loadu_pd(c2 + r), vy, a2);
      a3 = _mm512_fmadd_pd(_mm512_loadu_pd(c3 + r), vy, a3);
    }
    if (r < rows) {
      const __mmask8 m = tail_mask(rows - r);
      __m512d vy = _mm512_maskz_loadu_pd(m, y + r);
      a0 = _mm512_fmadd_pd(_mm512_maskz_loadu_pd(m, c0 + r), vy, a0);
      a1 = _mm512_fmadd_pd(_mm512_maskz_loadu_pd(m, c1 + r), vy, a1);
      a2 = _mm512_fmadd_pd(_mm512_maskz_loadu_pd(m, c2 + r), vy, a2);
      a3 = _mm512_fmadd_pd(_mm512_maskz_loadu_pd(m, c3 + r), vy, a3);
    }
    out[j + 0] = _mm512_reduce_add_pd(a0);
    out[j + 1] = _mm512_reduce_add_pd(a1);
    out[j + 2] = _mm512_reduce_add_pd(a2);
    out[j + 3] = _mm512_reduce_add_pd(a3);
  }
  for (; j < ncols; ++j) out[j] = dot_avx512(cols + j * ld, y, rows);
}

void gram_block_avx512(const double* A, std::size_t lda, std::size_t na,
                       const double* B, std::size_t ldb, std::size_t nb,
                       std::size_t rows, double* C) {
  // 4x6 register tile (24 accumulators + 4 A vectors + 1 rotating B vector)
  // with an unmasked main loop; one masked iteration handles the row tail.
  std::size_t i = 0;
  for (; i + 4 <= na; i += 4) {
    const double* a0 = A + (i + 0) * lda;
    const double* a1 = A + (i + 1) * lda;
    const double* a2 = A + (i + 2) * lda;
    const double* a3 = A + (i + 3) * lda;
    std::size_t j = 0;
    for (; j + 6 <= nb; j += 6) {
      const double* bp[6] = {B + (j + 0) * ldb, B + (j + 1) * ldb,
                             B + (j + 2) * ldb, B + (j + 3) * ldb,
                             B + (j + 4) * ldb, B + (j + 5) * ldb};
      __m512d acc[4][6];
      for (int u = 0; u < 4; ++u)
        for (int w = 0; w < 6; ++w) acc[u][w] = _mm512_setzero_pd();
      std::size_t r = 0;
      for (; r + 8 <= rows; r += 8) {
        const __m512d va0 = _mm512_loadu_pd(a0 + r);
        const __m512d va1 = _mm512_loadu_pd(a1 + r);
        const __m512d va2 = _mm512_loadu_pd(a2 + r);
        const __m512d va3 = _mm512_loadu_pd(a3 + r);
        for (int w = 0; w < 6; ++w) {
          const __m512d vb = _mm512_loadu_pd(bp[w] + r);
          acc[0][w] = _mm512_fmadd_pd(va0, vb, acc[0][w]);
          acc[1][w] = _mm512_fmadd_pd(va1, vb, acc[1][w]);
          acc[2][w] = _mm512_fmadd_pd(va2, vb, acc[2][w]);
          acc[3][w] = _mm512_fmadd_pd(va3, vb, acc[3][w]);
        }
      }
      if (r < rows) {
        const __mmask8 m = tail_mask(rows - r);
        const __m512d va0 = _mm512_maskz_loadu_pd(m, a0 + r);
        const __m512d va1 = _mm512_maskz_loadu_pd(m, a1 + r);
        const __m512d va2 = _mm512_maskz_loadu_pd(m, a2 + r);
        const __m512d va3 = _mm512_maskz_loadu_pd(m, a3 + r);
        for (int w = 0; w < 6; ++w) {
          const __m512d vb = _mm512_maskz_loadu_pd(m, bp[w] + r);
          acc[0][w] = _mm512_fmadd_pd(va0, vb, acc[0][w]);
          acc[1][w] = _mm512_fmadd_pd(va1, vb, acc[1][w]);
          acc[2][w] = _mm512_fmadd_pd(va2, vb, acc[2][w]);
          acc[3][w] = _mm512_fmadd_pd(va3, vb, acc[3][w]);
        }
      }
      for (int u = 0; u < 4; ++u)
        for (int w = 0; w < 6; ++w)
          C[(i + u) + (j + w) * na] = _mm512_reduce_add_pd(acc[u][w]);
    }
    for (; j < nb; ++j) {
      C[(i + 0) + j * na] = dot_avx512(a0, B + j * ldb, rows);
      C[(i + 1) + j * na] = dot_avx512(a1, B + j * ldb, rows);
      C[(i + 2) + j * na] = dot_avx512(a2, B + j * ldb, rows);
      C[(i + 3) + j * na] = dot_avx512(a3, B + j * ldb, rows);
    }
  }
  for (; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      C[i + j * na] = dot_avx512(A + i * lda, B + j * ldb, rows);
}

}  // namespace bpdd::kernels::detail
