#include "crisis_pulse/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace crisis_pulse::simd {

#if defined(__aarch64__)
namespace {

// Two float64x2 registers stand in for the four reduction lanes:
// lo holds lanes (0, 1), hi holds lanes (2, 3).

void gibbs_topic_weights(const double* doc_topic, const double* word_topic, const double* topic_total,
                         double alpha, double beta, double vocab_beta, double* out, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  const float64x2_t vvb = vdupq_n_f64(vocab_beta);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t left = vaddq_f64(vld1q_f64(doc_topic + k), va);
    const float64x2_t right = vaddq_f64(vld1q_f64(word_topic + k), vb);
    const float64x2_t denom = vaddq_f64(vld1q_f64(topic_total + k), vvb);
    vst1q_f64(out + k, vdivq_f64(vmulq_f64(left, right), denom));
  }
  for (; k < n; ++k) {
    out[k] = ((doc_topic[k] + alpha) * (word_topic[k] + beta)) / (topic_total[k] + vocab_beta);
  }
}

void foldin_topic_weights(const double* doc_topic, const double* phi_column, double alpha, double* out,
                          std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    vst1q_f64(out + k, vmulq_f64(vaddq_f64(vld1q_f64(doc_topic + k), va), vld1q_f64(phi_column + k)));
  }
  for (; k < n; ++k) out[k] = (doc_topic[k] + alpha) * phi_column[k];
}

inline double combine(float64x2_t lo, float64x2_t hi) {
  return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) + (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
  const std::size_t blocks = n - n % 4;
  for (std::size_t i = 0; i < blocks; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double total = combine(lo, hi);
  for (std::size_t i = blocks; i < n; ++i) total = total + a[i] * b[i];
  return total;
}

double sum(const double* a, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
  const std::size_t blocks = n - n % 4;
  for (std::size_t i = 0; i < blocks; i += 4) {
    lo = vaddq_f64(lo, vld1q_f64(a + i));
    hi = vaddq_f64(hi, vld1q_f64(a + i + 2));
  }
  double total = combine(lo, hi);
  for (std::size_t i = blocks; i < n; ++i) total = total + a[i];
  return total;
}

double centered_dot(const double* a, double mean_a, const double* b, double mean_b, std::size_t n) {
  const float64x2_t ma = vdupq_n_f64(mean_a), mb = vdupq_n_f64(mean_b);
  float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
  const std::size_t blocks = n - n % 4;
  for (std::size_t i = 0; i < blocks; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vsubq_f64(vld1q_f64(a + i), ma), vsubq_f64(vld1q_f64(b + i), mb)));
    hi = vaddq_f64(hi, vmulq_f64(vsubq_f64(vld1q_f64(a + i + 2), ma), vsubq_f64(vld1q_f64(b + i + 2), mb)));
  }
  double total = combine(lo, hi);
  for (std::size_t i = blocks; i < n; ++i) total = total + (a[i] - mean_a) * (b[i] - mean_b);
  return total;
}

void divide(double* a, double divisor, std::size_t n) {
  const float64x2_t vd = vdupq_n_f64(divisor);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(a + i, vdivq_f64(vld1q_f64(a + i), vd));
  for (; i < n; ++i) a[i] = a[i] / divisor;
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{"neon",       gibbs_topic_weights, foldin_topic_weights, dot, sum,
                                 centered_dot, divide};
  return &table;
}

#else

const KernelTable* neon_kernels() { return nullptr; }

#endif

}  // namespace crisis_pulse::simd
