// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the runtime CPUID check in dispatch.cpp.
//
// saxpy/adam use mul+add (no FMA) so they are bit-identical to the scalar
// reference; the gemm kernels use FMA and a different accumulation order, so
// they match the reference to rounding only.

#include "kernels/kernels.hpp"

#if defined(S2S_KERNELS_HAVE_AVX2_TU)

#include <immintrin.h>

namespace s2s::kern::detail {

namespace {

inline float hsum8(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  __m128 s = _mm_add_ps(lo, hi);
  s = _mm_add_ps(s, _mm_movehl_ps(s, s));
  s = _mm_add_ss(s, _mm_shuffle_ps(s, s, 1));
  return _mm_cvtss_f32(s);
}

inline void store_combined(float* c, __m256 acc, float alpha, float beta) {
  __m256 va = _mm256_set1_ps(alpha);
  if (beta == 0.f) {
    _mm256_storeu_ps(c, _mm256_mul_ps(acc, va));
  } else {
    __m256 vb = _mm256_set1_ps(beta);
    __m256 old = _mm256_mul_ps(_mm256_loadu_ps(c), vb);
    _mm256_storeu_ps(c, _mm256_add_ps(_mm256_mul_ps(acc, va), old));
  }
}

// 4 rows x 16 columns register tile, full-k accumulation.
void nn_tile_4x16(int k, float alpha, const float* a, int lda, const float* b,
                  int ldb, float beta, float* c, int ldc) {
  __m256 acc[4][2];
  for (auto& row : acc) row[0] = row[1] = _mm256_setzero_ps();
  for (int p = 0; p < k; ++p) {
    const float* brow = b + size_t(p) * ldb;
    __m256 b0 = _mm256_loadu_ps(brow);
    __m256 b1 = _mm256_loadu_ps(brow + 8);
    for (int r = 0; r < 4; ++r) {
      __m256 av = _mm256_set1_ps(a[size_t(r) * lda + p]);
      acc[r][0] = _mm256_fmadd_ps(av, b0, acc[r][0]);
      acc[r][1] = _mm256_fmadd_ps(av, b1, acc[r][1]);
    }
  }
  for (int r = 0; r < 4; ++r) {
    store_combined(c + size_t(r) * ldc, acc[r][0], alpha, beta);
    store_combined(c + size_t(r) * ldc + 8, acc[r][1], alpha, beta);
  }
}

void nn_tile_rx8(int rows, int k, float alpha, const float* a, int lda,
                 const float* b, int ldb, float beta, float* c, int ldc) {
  __m256 acc[4];
  for (int r = 0; r < rows; ++r) acc[r] = _mm256_setzero_ps();
  for (int p = 0; p < k; ++p) {
    __m256 bv = _mm256_loadu_ps(b + size_t(p) * ldb);
    for (int r = 0; r < rows; ++r)
      acc[r] = _mm256_fmadd_ps(_mm256_set1_ps(a[size_t(r) * lda + p]), bv, acc[r]);
  }
  for (int r = 0; r < rows; ++r) store_combined(c + size_t(r) * ldc, acc[r], alpha, beta);
}

void nn_cols_scalar(int rows, int cols, int k, float alpha, const float* a,
                    int lda, const float* b, int ldb, float beta, float* c, int ldc) {
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < cols; ++j) {
      float acc = 0.f;
      for (int p = 0; p < k; ++p) acc += a[size_t(r) * lda + p] * b[size_t(p) * ldb + j];
      float* cp = c + size_t(r) * ldc + j;
      *cp = alpha * acc + (beta == 0.f ? 0.f : beta * *cp);
    }
  }
}

}  // namespace

void sgemm_nn_avx2(int m, int n, int k, float alpha, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc) {
  int i = 0;
  for (; i + 4 <= m; i += 4) {
    const float* arow = a + size_t(i) * lda;
    float* crow = c + size_t(i) * ldc;
    int j = 0;
    for (; j + 16 <= n; j += 16) nn_tile_4x16(k, alpha, arow, lda, b + j, ldb, beta, crow + j, ldc);
    for (; j + 8 <= n; j += 8) nn_tile_rx8(4, k, alpha, arow, lda, b + j, ldb, beta, crow + j, ldc);
    if (j < n) nn_cols_scalar(4, n - j, k, alpha, arow, lda, b + j, ldb, beta, crow + j, ldc);
  }
  if (i < m) {
    int rows = m - i;
    const float* arow = a + size_t(i) * lda;
    float* crow = c + size_t(i) * ldc;
    int j = 0;
    for (; j + 8 <= n; j += 8) nn_tile_rx8(rows, k, alpha, arow, lda, b + j, ldb, beta, crow + j, ldc);
    if (j < n) nn_cols_scalar(rows, n - j, k, alpha, arow, lda, b + j, ldb, beta, crow + j, ldc);
  }
}

void sgemm_nt_avx2(int m, int n, int k, float alpha, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc) {
  const int kv = k & ~7;
  for (int i = 0; i < m; ++i) {
    const float* arow = a + size_t(i) * lda;
    float* crow = c + size_t(i) * ldc;
    int j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256 acc0 = _mm256_setzero_ps(), acc1 = _mm256_setzero_ps();
      __m256 acc2 = _mm256_setzero_ps(), acc3 = _mm256_setzero_ps();
      const float* b0 = b + size_t(j) * ldb;
      const float* b1 = b0 + ldb;
      const float* b2 = b1 + ldb;
      const float* b3 = b2 + ldb;
      for (int p = 0; p < kv; p += 8) {
        __m256 av = _mm256_loadu_ps(arow + p);
        acc0 = _mm256_fmadd_ps(av, _mm256_loadu_ps(b0 + p), acc0);
        acc1 = _mm256_fmadd_ps(av, _mm256_loadu_ps(b1 + p), acc1);
        acc2 = _mm256_fmadd_ps(av, _mm256_loadu_ps(b2 + p), acc2);
        acc3 = _mm256_fmadd_ps(av, _mm256_loadu_ps(b3 + p), acc3);
      }
      float d0 = hsum8(acc0), d1 = hsum8(acc1), d2 = hsum8(acc2), d3 = hsum8(acc3);
      for (int p = kv; p < k; ++p) {
        float av = arow[p];
        d0 += av * b0[p];
        d1 += av * b1[p];
        d2 += av * b2[p];
        d3 += av * b3[p];
      }
      float base0 = beta == 0.f ? 0.f : beta * crow[j + 0];
      float base1 = beta == 0.f ? 0.f : beta * crow[j + 1];
      float base2 = beta == 0.f ? 0.f : beta * crow[j + 2];
      float base3 = beta == 0.f ? 0.f : beta * crow[j + 3];
      crow[j + 0] = alpha * d0 + base0;
      crow[j + 1] = alpha * d1 + base1;
      crow[j + 2] = alpha * d2 + base2;
      crow[j + 3] = alpha * d3 + base3;
    }
    for (; j < n; ++j) {
      const float* brow = b + size_t(j) * ldb;
      __m256 acc = _mm256_setzero_ps();
      for (int p = 0; p < kv; p += 8)
        acc = _mm256_fmadd_ps(_mm256_loadu_ps(arow + p), _mm256_loadu_ps(brow + p), acc);
      float d = hsum8(acc);
      for (int p = kv; p < k; ++p) d += arow[p] * brow[p];
      crow[j] = alpha * d + (beta == 0.f ? 0.f : beta * crow[j]);
    }
  }
}

void sgemm_tn_avx2(int m, int n, int k, float alpha, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc) {
  // beta pass first, then accumulate 4 k-slices per sweep of each C row
  for (int i = 0; i < m; ++i) {
    float* crow = c + size_t(i) * ldc;
    if (beta == 0.f) {
      for (int j = 0; j < n; ++j) crow[j] = 0.f;
    } else if (beta != 1.f) {
      for (int j = 0; j < n; ++j) crow[j] *= beta;
    }
    int p = 0;
    for (; p + 4 <= k; p += 4) {
      __m256 av0 = _mm256_set1_ps(alpha * a[size_t(p + 0) * lda + i]);
      __m256 av1 = _mm256_set1_ps(alpha * a[size_t(p + 1) * lda + i]);
      __m256 av2 = _mm256_set1_ps(alpha * a[size_t(p + 2) * lda + i]);
      __m256 av3 = _mm256_set1_ps(alpha * a[size_t(p + 3) * lda + i]);
      const float* b0 = b + size_t(p + 0) * ldb;
      const float* b1 = b + size_t(p + 1) * ldb;
      const float* b2 = b + size_t(p + 2) * ldb;
      const float* b3 = b + size_t(p + 3) * ldb;
      int j = 0;
      for (; j + 8 <= n; j += 8) {
        __m256 acc = _mm256_loadu_ps(crow + j);
        acc = _mm256_fmadd_ps(av0, _mm256_loadu_ps(b0 + j), acc);
        acc = _mm256_fmadd_ps(av1, _mm256_loadu_ps(b1 + j), acc);
        acc = _mm256_fmadd_ps(av2, _mm256_loadu_ps(b2 + j), acc);
        acc = _mm256_fmadd_ps(av3, _mm256_loadu_ps(b3 + j), acc);
        _mm256_storeu_ps(crow + j, acc);
      }
      for (; j < n; ++j) {
        crow[j] += alpha * (a[size_t(p + 0) * lda + i] * b0[j] + a[size_t(p + 1) * lda + i] * b1[j] +
                            a[size_t(p + 2) * lda + i] * b2[j] + a[size_t(p + 3) * lda + i] * b3[j]);
      }
    }
    for (; p < k; ++p) {
      float av = alpha * a[size_t(p) * lda + i];
      const float* brow = b + size_t(p) * ldb;
      __m256 avv = _mm256_set1_ps(av);
      int j = 0;
      for (; j + 8 <= n; j += 8) {
        __m256 acc = _mm256_fmadd_ps(avv, _mm256_loadu_ps(brow + j), _mm256_loadu_ps(crow + j));
        _mm256_storeu_ps(crow + j, acc);
      }
      for (; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void saxpy_avx2(int64_t n, float a, const float* x, float* y) {
  __m256 av = _mm256_set1_ps(a);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 prod = _mm256_mul_ps(av, _mm256_loadu_ps(x + i));
    _mm256_storeu_ps(y + i, _mm256_add_ps(prod, _mm256_loadu_ps(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void adam_step_avx2(int64_t n, float lr, float b1, float b2, float eps,
                    float bc1, float bc2, const float* g, float* w, float* m, float* v) {
  const __m256 vb1 = _mm256_set1_ps(b1), vb1c = _mm256_set1_ps(1.f - b1);
  const __m256 vb2 = _mm256_set1_ps(b2), vb2c = _mm256_set1_ps(1.f - b2);
  const __m256 vlr = _mm256_set1_ps(lr), veps = _mm256_set1_ps(eps);
  const __m256 vbc1 = _mm256_set1_ps(bc1), vbc2 = _mm256_set1_ps(bc2);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 gi = _mm256_loadu_ps(g + i);
    __m256 mi = _mm256_add_ps(_mm256_mul_ps(vb1, _mm256_loadu_ps(m + i)), _mm256_mul_ps(vb1c, gi));
    __m256 vi = _mm256_add_ps(_mm256_mul_ps(vb2, _mm256_loadu_ps(v + i)),
                              _mm256_mul_ps(vb2c, _mm256_mul_ps(gi, gi)));
    _mm256_storeu_ps(m + i, mi);
    _mm256_storeu_ps(v + i, vi);
    __m256 mhat = _mm256_div_ps(mi, vbc1);
    __m256 vhat = _mm256_div_ps(vi, vbc2);
    __m256 denom = _mm256_add_ps(_mm256_sqrt_ps(vhat), veps);
    __m256 upd = _mm256_div_ps(_mm256_mul_ps(vlr, mhat), denom);
    _mm256_storeu_ps(w + i, _mm256_sub_ps(_mm256_loadu_ps(w + i), upd));
  }
  if (i < n) detail::adam_step_scalar(n - i, lr, b1, b2, eps, bc1, bc2, g + i, w + i, m + i, v + i);
}

}  // namespace s2s::kern::detail

#endif  // S2S_KERNELS_HAVE_AVX2_TU
