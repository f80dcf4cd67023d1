#pragma once

#include <cstdint>

// Dense inner-loop kernels behind the tensor and image code. Each operation
// has a scalar reference implementation and, on x86-64, an AVX2+FMA variant.
// The variant is picked once at startup from CPUID; set_backend() overrides
// (used by the equivalence tests and the SKETCH2STATUE_KERNELS env var).
//
// All matrices are row-major. Leading dimensions are element strides between
// consecutive rows.
namespace s2s::kern {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_supported(Backend b);
Backend active_backend();
void set_backend(Backend b);  // throws invalid_input if unsupported

// Number of worker threads large sgemm_nn calls may fan out to (deterministic
// static split). 1 disables threading. Default: min(hardware threads, 4).
void set_gemm_threads(int n);
int gemm_threads();

// C = alpha * A(m x k) * B(k x n) + beta * C
void sgemm_nn(int m, int n, int k, float alpha, const float* a, int lda,
              const float* b, int ldb, float beta, float* c, int ldc);
// C = alpha * A(m x k) * B(n x k)^T + beta * C
void sgemm_nt(int m, int n, int k, float alpha, const float* a, int lda,
              const float* b, int ldb, float beta, float* c, int ldc);
// C = alpha * A(k x m)^T * B(k x n) + beta * C
void sgemm_tn(int m, int n, int k, float alpha, const float* a, int lda,
              const float* b, int ldb, float beta, float* c, int ldc);

// Double versions run the scalar path only; they exist for the double
// instantiation of the network used by the finite-difference tests.
void dgemm_nn(int m, int n, int k, double alpha, const double* a, int lda,
              const double* b, int ldb, double beta, double* c, int ldc);
void dgemm_nt(int m, int n, int k, double alpha, const double* a, int lda,
              const double* b, int ldb, double beta, double* c, int ldc);
void dgemm_tn(int m, int n, int k, double alpha, const double* a, int lda,
              const double* b, int ldb, double beta, double* c, int ldc);

// y += a * x
void saxpy(int64_t n, float a, const float* x, float* y);
void daxpy(int64_t n, double a, const double* x, double* y);

// Fused first-order adaptive-moment update:
//   m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g*g
//   w -= lr * (m/bc1) / (sqrt(v/bc2) + eps)
// bc1/bc2 are the bias corrections 1-b1^t and 1-b2^t.
void adam_step(int64_t n, float lr, float b1, float b2, float eps, float bc1,
               float bc2, const float* g, float* w, float* m, float* v);
void adam_step(int64_t n, double lr, double b1, double b2, double eps, double bc1,
               double bc2, const double* g, double* w, double* m, double* v);

template <typename T>
void gemm_nn(int m, int n, int k, T alpha, const T* a, int lda, const T* b,
             int ldb, T beta, T* c, int ldc) {
  if constexpr (sizeof(T) == sizeof(float))
    sgemm_nn(m, n, k, alpha, (const float*)a, lda, (const float*)b, ldb, beta, (float*)c, ldc);
  else
    dgemm_nn(m, n, k, alpha, (const double*)a, lda, (const double*)b, ldb, beta, (double*)c, ldc);
}
template <typename T>
void gemm_nt(int m, int n, int k, T alpha, const T* a, int lda, const T* b,
             int ldb, T beta, T* c, int ldc) {
  if constexpr (sizeof(T) == sizeof(float))
    sgemm_nt(m, n, k, alpha, (const float*)a, lda, (const float*)b, ldb, beta, (float*)c, ldc);
  else
    dgemm_nt(m, n, k, alpha, (const double*)a, lda, (const double*)b, ldb, beta, (double*)c, ldc);
}
template <typename T>
void gemm_tn(int m, int n, int k, T alpha, const T* a, int lda, const T* b,
             int ldb, T beta, T* c, int ldc) {
  if constexpr (sizeof(T) == sizeof(float))
    sgemm_tn(m, n, k, alpha, (const float*)a, lda, (const float*)b, ldb, beta, (float*)c, ldc);
  else
    dgemm_tn(m, n, k, alpha, (const double*)a, lda, (const double*)b, ldb, beta, (double*)c, ldc);
}

template <typename T>
void axpy(int64_t n, T a, const T* x, T* y) {
  if constexpr (sizeof(T) == sizeof(float))
    saxpy(n, a, (const float*)x, (float*)y);
  else
    daxpy(n, a, (const double*)x, (double*)y);
}

namespace detail {
void sgemm_nn_scalar(int m, int n, int k, float alpha, const float* a, int lda,
                     const float* b, int ldb, float beta, float* c, int ldc);
void sgemm_nt_scalar(int m, int n, int k, float alpha, const float* a, int lda,
                     const float* b, int ldb, float beta, float* c, int ldc);
void sgemm_tn_scalar(int m, int n, int k, float alpha, const float* a, int lda,
                     const float* b, int ldb, float beta, float* c, int ldc);
void saxpy_scalar(int64_t n, float a, const float* x, float* y);
void adam_step_scalar(int64_t n, float lr, float b1, float b2, float eps,
                      float bc1, float bc2, const float* g, float* w, float* m, float* v);

#if defined(__x86_64__) || defined(_M_X64)
#define S2S_KERNELS_HAVE_AVX2_TU 1
void sgemm_nn_avx2(int m, int n, int k, float alpha, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc);
void sgemm_nt_avx2(int m, int n, int k, float alpha, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc);
void sgemm_tn_avx2(int m, int n, int k, float alpha, const float* a, int lda,
                   const float* b, int ldb, float beta, float* c, int ldc);
void saxpy_avx2(int64_t n, float a, const float* x, float* y);
void adam_step_avx2(int64_t n, float lr, float b1, float b2, float eps,
                    float bc1, float bc2, const float* g, float* w, float* m, float* v);
#endif
}  // namespace detail

}  // namespace s2s::kern
