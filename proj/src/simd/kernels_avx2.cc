#include "crisis_pulse/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CRISIS_PULSE_HAVE_AVX2_TU 1
#endif

namespace crisis_pulse::simd {

#if CRISIS_PULSE_HAVE_AVX2_TU
namespace {

// AVX2 without FMA: a fused multiply-add would round differently from the
// scalar reference.
#define AVX2_FN __attribute__((target("avx2")))

AVX2_FN void gibbs_topic_weights(const double* doc_topic, const double* word_topic,
                                 const double* topic_total, double alpha, double beta,
                                 double vocab_beta, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vvb = _mm256_set1_pd(vocab_beta);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d left = _mm256_add_pd(_mm256_loadu_pd(doc_topic + k), va);
    const __m256d right = _mm256_add_pd(_mm256_loadu_pd(word_topic + k), vb);
    const __m256d denom = _mm256_add_pd(_mm256_loadu_pd(topic_total + k), vvb);
    _mm256_storeu_pd(out + k, _mm256_div_pd(_mm256_mul_pd(left, right), denom));
  }
  for (; k < n; ++k) {
    out[k] = ((doc_topic[k] + alpha) * (word_topic[k] + beta)) / (topic_total[k] + vocab_beta);
  }
}

AVX2_FN void foldin_topic_weights(const double* doc_topic, const double* phi_column, double alpha,
                                  double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d left = _mm256_add_pd(_mm256_loadu_pd(doc_topic + k), va);
    _mm256_storeu_pd(out + k, _mm256_mul_pd(left, _mm256_loadu_pd(phi_column + k)));
  }
  for (; k < n; ++k) out[k] = (doc_topic[k] + alpha) * phi_column[k];
}

AVX2_FN inline double combine_lanes(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

AVX2_FN double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t blocks = n - n % 4;
  for (std::size_t i = 0; i < blocks; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double total = combine_lanes(acc);
  for (std::size_t i = blocks; i < n; ++i) total = total + a[i] * b[i];
  return total;
}

AVX2_FN double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t blocks = n - n % 4;
  for (std::size_t i = 0; i < blocks; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double total = combine_lanes(acc);
  for (std::size_t i = blocks; i < n; ++i) total = total + a[i];
  return total;
}

AVX2_FN double centered_dot(const double* a, double mean_a, const double* b, double mean_b,
                            std::size_t n) {
  const __m256d ma = _mm256_set1_pd(mean_a);
  const __m256d mb = _mm256_set1_pd(mean_b);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t blocks = n - n % 4;
  for (std::size_t i = 0; i < blocks; i += 4) {
    const __m256d da = _mm256_sub_pd(_mm256_loadu_pd(a + i), ma);
    const __m256d db = _mm256_sub_pd(_mm256_loadu_pd(b + i), mb);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(da, db));
  }
  double total = combine_lanes(acc);
  for (std::size_t i = blocks; i < n; ++i) total = total + (a[i] - mean_a) * (b[i] - mean_b);
  return total;
}

AVX2_FN void divide(double* a, double divisor, std::size_t n) {
  const __m256d vd = _mm256_set1_pd(divisor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(a + i, _mm256_div_pd(_mm256_loadu_pd(a + i), vd));
  for (; i < n; ++i) a[i] = a[i] / divisor;
}

#undef AVX2_FN

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{"avx2",       gibbs_topic_weights, foldin_topic_weights, dot, sum,
                                 centered_dot, divide};
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace crisis_pulse::simd
