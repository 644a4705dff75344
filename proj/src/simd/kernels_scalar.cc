#include "crisis_pulse/simd/kernels.hpp"

namespace crisis_pulse::simd {
namespace {

void gibbs_topic_weights(const double* doc_topic, const double* word_topic, const double* topic_total,
                         double alpha, double beta, double vocab_beta, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double left = doc_topic[k] + alpha;
    const double right = word_topic[k] + beta;
    const double denom = topic_total[k] + vocab_beta;
    out[k] = (left * right) / denom;
  }
}

void foldin_topic_weights(const double* doc_topic, const double* phi_column, double alpha, double* out,
                          std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = (doc_topic[k] + alpha) * phi_column[k];
}

template <typename Term>
double lane_reduce(std::size_t n, Term term) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t blocks = n - n % 4;
  for (std::size_t i = 0; i < blocks; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) lane[j] = lane[j] + term(i + j);
  }
  double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = blocks; i < n; ++i) total = total + term(i);
  return total;
}

double dot(const double* a, const double* b, std::size_t n) {
  return lane_reduce(n, [&](std::size_t i) { return a[i] * b[i]; });
}

double sum(const double* a, std::size_t n) {
  return lane_reduce(n, [&](std::size_t i) { return a[i]; });
}

double centered_dot(const double* a, double mean_a, const double* b, double mean_b, std::size_t n) {
  return lane_reduce(n, [&](std::size_t i) { return (a[i] - mean_a) * (b[i] - mean_b); });
}

void divide(double* a, double divisor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] = a[i] / divisor;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",     gibbs_topic_weights, foldin_topic_weights, dot, sum,
                                 centered_dot, divide};
  return table;
}

}  // namespace crisis_pulse::simd
