#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops shared by the sampler, TF-IDF weighting and the
// correlation code. Every backend must produce results bit-identical to the
// scalar reference: elementwise kernels use the same unfused mul/add/div
// sequence, and reductions accumulate in four lanes (lane j takes elements
// i = j mod 4 of the full blocks), combine as (l0 + l1) + (l2 + l3), then add
// the tail sequentially. Seeded runs are therefore reproducible regardless of
// which backend the CPU selects.
namespace crisis_pulse::simd {

struct KernelTable {
  std::string_view name;

  // out[k] = (doc_topic[k] + alpha) * (word_topic[k] + beta) / (topic_total[k] + vocab_beta)
  void (*gibbs_topic_weights)(const double* doc_topic, const double* word_topic,
                              const double* topic_total, double alpha, double beta,
                              double vocab_beta, double* out, std::size_t n);

  // out[k] = (doc_topic[k] + alpha) * phi_column[k]
  void (*foldin_topic_weights)(const double* doc_topic, const double* phi_column, double alpha,
                               double* out, std::size_t n);

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);

  // sum over i of (a[i] - mean_a) * (b[i] - mean_b)
  double (*centered_dot)(const double* a, double mean_a, const double* b, double mean_b,
                         std::size_t n);

  // a[i] /= divisor
  void (*divide)(double* a, double divisor, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the backend was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best available backend, chosen once. CRISIS_PULSE_SIMD=scalar forces the
// reference path.
const KernelTable& active_kernels();

inline void gibbs_topic_weights(std::span<const double> doc_topic, std::span<const double> word_topic,
                                std::span<const double> topic_total, double alpha, double beta,
                                double vocab_beta, std::span<double> out) {
  active_kernels().gibbs_topic_weights(doc_topic.data(), word_topic.data(), topic_total.data(), alpha,
                                       beta, vocab_beta, out.data(), out.size());
}

inline void foldin_topic_weights(std::span<const double> doc_topic, std::span<const double> phi_column,
                                 double alpha, std::span<double> out) {
  active_kernels().foldin_topic_weights(doc_topic.data(), phi_column.data(), alpha, out.data(),
                                        out.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}

inline double sum(std::span<const double> a) { return active_kernels().sum(a.data(), a.size()); }

inline double centered_dot(std::span<const double> a, double mean_a, std::span<const double> b,
                           double mean_b) {
  return active_kernels().centered_dot(a.data(), mean_a, b.data(), mean_b, a.size());
}

inline void divide(std::span<double> a, double divisor) {
  active_kernels().divide(a.data(), divisor, a.size());
}

}  // namespace crisis_pulse::simd
