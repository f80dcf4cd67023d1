#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "core/error.hpp"
#include "kernels/kernels.hpp"

namespace s2s::kern {

namespace {

bool cpu_has_avx2() {
#if defined(S2S_KERNELS_HAVE_AVX2_TU) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("SKETCH2STATUE_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::avx2;
    return Backend::scalar;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend> g_backend{initial_backend()};

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return int(hw > 4 ? 4 : hw);
}

std::atomic<int> g_threads{default_threads()};

using GemmFn = void (*)(int, int, int, float, const float*, int, const float*, int, float, float*, int);

GemmFn pick_nn() {
#if defined(S2S_KERNELS_HAVE_AVX2_TU)
  if (g_backend.load(std::memory_order_relaxed) == Backend::avx2) return detail::sgemm_nn_avx2;
#endif
  return detail::sgemm_nn_scalar;
}
GemmFn pick_nt() {
#if defined(S2S_KERNELS_HAVE_AVX2_TU)
  if (g_backend.load(std::memory_order_relaxed) == Backend::avx2) return detail::sgemm_nt_avx2;
#endif
  return detail::sgemm_nt_scalar;
}
GemmFn pick_tn() {
#if defined(S2S_KERNELS_HAVE_AVX2_TU)
  if (g_backend.load(std::memory_order_relaxed) == Backend::avx2) return detail::sgemm_tn_avx2;
#endif
  return detail::sgemm_tn_scalar;
}

// Deterministic column split: thread t handles a fixed contiguous j-range,
// so results do not depend on scheduling.
void run_column_split(GemmFn fn, int m, int n, int k, float alpha, const float* a,
                      int lda, const float* b, int ldb, float beta, float* c, int ldc,
                      bool b_rows_are_j) {
  int nthreads = g_threads.load(std::memory_order_relaxed);
  const int64_t work = int64_t(m) * n * k;
  if (nthreads <= 1 || work < (int64_t(1) << 20) || n < 2 * nthreads) {
    fn(m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
    return;
  }
  if (nthreads > n) nthreads = n;
  std::vector<std::thread> workers;
  workers.reserve(size_t(nthreads - 1));
  auto chunk = [&](int t) {
    int j0 = int(int64_t(n) * t / nthreads);
    int j1 = int(int64_t(n) * (t + 1) / nthreads);
    if (j0 >= j1) return;
    const float* bsub = b_rows_are_j ? b + size_t(j0) * ldb : b + j0;
    fn(m, j1 - j0, k, alpha, a, lda, bsub, ldb, beta, c + j0, ldc);
  };
  for (int t = 1; t < nthreads; ++t) workers.emplace_back(chunk, t);
  chunk(0);
  for (auto& w : workers) w.join();
}

}  // namespace

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) {
  return b == Backend::scalar || cpu_has_avx2();
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw_invalid(std::string("kernel backend not supported on this cpu: ") + backend_name(b));
  g_backend.store(b, std::memory_order_relaxed);
}

void set_gemm_threads(int n) {
  if (n < 1) throw_invalid("gemm thread count must be >= 1");
  g_threads.store(n, std::memory_order_relaxed);
}

int gemm_threads() { return g_threads.load(std::memory_order_relaxed); }

void sgemm_nn(int m, int n, int k, float alpha, const float* a, int lda,
              const float* b, int ldb, float beta, float* c, int ldc) {
  run_column_split(pick_nn(), m, n, k, alpha, a, lda, b, ldb, beta, c, ldc, false);
}

void sgemm_nt(int m, int n, int k, float alpha, const float* a, int lda,
              const float* b, int ldb, float beta, float* c, int ldc) {
  // columns of C correspond to rows of B here
  run_column_split(pick_nt(), m, n, k, alpha, a, lda, b, ldb, beta, c, ldc, true);
}

void sgemm_tn(int m, int n, int k, float alpha, const float* a, int lda,
              const float* b, int ldb, float beta, float* c, int ldc) {
  run_column_split(pick_tn(), m, n, k, alpha, a, lda, b, ldb, beta, c, ldc, false);
}

void saxpy(int64_t n, float a, const float* x, float* y) {
#if defined(S2S_KERNELS_HAVE_AVX2_TU)
  if (g_backend.load(std::memory_order_relaxed) == Backend::avx2) {
    detail::saxpy_avx2(n, a, x, y);
    return;
  }
#endif
  detail::saxpy_scalar(n, a, x, y);
}

void adam_step(int64_t n, float lr, float b1, float b2, float eps, float bc1,
               float bc2, const float* g, float* w, float* m, float* v) {
#if defined(S2S_KERNELS_HAVE_AVX2_TU)
  if (g_backend.load(std::memory_order_relaxed) == Backend::avx2) {
    detail::adam_step_avx2(n, lr, b1, b2, eps, bc1, bc2, g, w, m, v);
    return;
  }
#endif
  detail::adam_step_scalar(n, lr, b1, b2, eps, bc1, bc2, g, w, m, v);
}

}  // namespace s2s::kern
