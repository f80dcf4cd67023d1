// Reference kernels. Plain loops, no intrinsics; these define the semantics
// the SIMD variants are tested against.

#include <cmath>

#include "kernels/kernels.hpp"

namespace s2s::kern::detail {

namespace {

template <typename T>
void scale_rows(int m, int n, T beta, T* c, int ldc) {
  if (beta == T(1)) return;
  for (int i = 0; i < m; ++i) {
    T* row = c + size_t(i) * ldc;
    if (beta == T(0)) {
      for (int j = 0; j < n; ++j) row[j] = T(0);
    } else {
      for (int j = 0; j < n; ++j) row[j] *= beta;
    }
  }
}

template <typename T>
void gemm_nn_ref(int m, int n, int k, T alpha, const T* a, int lda, const T* b,
                 int ldb, T beta, T* c, int ldc) {
  scale_rows(m, n, beta, c, ldc);
  for (int i = 0; i < m; ++i) {
    T* crow = c + size_t(i) * ldc;
    for (int p = 0; p < k; ++p) {
      T av = alpha * a[size_t(i) * lda + p];
      const T* brow = b + size_t(p) * ldb;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

template <typename T>
void gemm_nt_ref(int m, int n, int k, T alpha, const T* a, int lda, const T* b,
                 int ldb, T beta, T* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    const T* arow = a + size_t(i) * lda;
    T* crow = c + size_t(i) * ldc;
    for (int j = 0; j < n; ++j) {
      const T* brow = b + size_t(j) * ldb;
      T acc = T(0);
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] = alpha * acc + (beta == T(0) ? T(0) : beta * crow[j]);
    }
  }
}

template <typename T>
void gemm_tn_ref(int m, int n, int k, T alpha, const T* a, int lda, const T* b,
                 int ldb, T beta, T* c, int ldc) {
  scale_rows(m, n, beta, c, ldc);
  for (int i = 0; i < m; ++i) {
    T* crow = c + size_t(i) * ldc;
    for (int p = 0; p < k; ++p) {
      T av = alpha * a[size_t(p) * lda + i];
      const T* brow = b + size_t(p) * ldb;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

template <typename T>
void adam_ref(int64_t n, T lr, T b1, T b2, T eps, T bc1, T bc2, const T* g,
              T* w, T* m, T* v) {
  for (int64_t i = 0; i < n; ++i) {
    T gi = g[i];
    m[i] = b1 * m[i] + (T(1) - b1) * gi;
    v[i] = b2 * v[i] + (T(1) - b2) * gi * gi;
    T mhat = m[i] / bc1;
    T vhat = v[i] / bc2;
    w[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

}  // namespace

void sgemm_nn_scalar(int m, int n, int k, float alpha, const float* a, int lda,
                     const float* b, int ldb, float beta, float* c, int ldc) {
  gemm_nn_ref(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
void sgemm_nt_scalar(int m, int n, int k, float alpha, const float* a, int lda,
                     const float* b, int ldb, float beta, float* c, int ldc) {
  gemm_nt_ref(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
void sgemm_tn_scalar(int m, int n, int k, float alpha, const float* a, int lda,
                     const float* b, int ldb, float beta, float* c, int ldc) {
  gemm_tn_ref(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

void saxpy_scalar(int64_t n, float a, const float* x, float* y) {
  for (int64_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void adam_step_scalar(int64_t n, float lr, float b1, float b2, float eps,
                      float bc1, float bc2, const float* g, float* w, float* m, float* v) {
  adam_ref(n, lr, b1, b2, eps, bc1, bc2, g, w, m, v);
}

}  // namespace s2s::kern::detail

namespace s2s::kern {

void dgemm_nn(int m, int n, int k, double alpha, const double* a, int lda,
              const double* b, int ldb, double beta, double* c, int ldc) {
  detail::gemm_nn_ref(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
void dgemm_nt(int m, int n, int k, double alpha, const double* a, int lda,
              const double* b, int ldb, double beta, double* c, int ldc) {
  detail::gemm_nt_ref(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}
void dgemm_tn(int m, int n, int k, double alpha, const double* a, int lda,
              const double* b, int ldb, double beta, double* c, int ldc) {
  detail::gemm_tn_ref(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

void daxpy(int64_t n, double a, const double* x, double* y) {
  for (int64_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void adam_step(int64_t n, double lr, double b1, double b2, double eps,
               double bc1, double bc2, const double* g, double* w, double* m, double* v) {
  detail::adam_ref(n, lr, b1, b2, eps, bc1, bc2, g, w, m, v);
}

}  // namespace s2s::kern
