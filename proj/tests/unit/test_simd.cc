#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "crisis_pulse/simd/kernels.hpp"

using namespace crisis_pulse::simd;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<const KernelTable*> vector_backends() {
  std::vector<const KernelTable*> out;
  if (const auto* t = avx2_kernels()) out.push_back(t);
  if (const auto* t = neon_kernels()) out.push_back(t);
  return out;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels compute the documented formulas") {
  const auto& k = scalar_kernels();
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> b = {2, 0.5, -1, 1, 2};
  CHECK(k.dot(a.data(), b.data(), a.size()) == doctest::Approx(2 + 1 - 3 + 4 + 10));
  CHECK(k.sum(a.data(), a.size()) == 15.0);
  CHECK(k.centered_dot(a.data(), 3.0, a.data(), 3.0, a.size()) == 10.0);

  const std::vector<double> dt = {1, 0, 2};
  const std::vector<double> wt = {0, 3, 1};
  const std::vector<double> tt = {10, 20, 30};
  std::vector<double> out(3);
  k.gibbs_topic_weights(dt.data(), wt.data(), tt.data(), 0.1, 0.01, 0.5, out.data(), 3);
  CHECK(out[0] == doctest::Approx((1.1 * 0.01) / 10.5));
  CHECK(out[1] == doctest::Approx((0.1 * 3.01) / 20.5));
  CHECK(out[2] == doctest::Approx((2.1 * 1.01) / 30.5));

  const std::vector<double> phi = {0.5, 0.25, 0.25};
  k.foldin_topic_weights(dt.data(), phi.data(), 0.1, out.data(), 3);
  CHECK(out[0] == doctest::Approx(1.1 * 0.5));
  CHECK(out[2] == doctest::Approx(2.1 * 0.25));

  std::vector<double> d = {2, 4, 6};
  k.divide(d.data(), 2.0, d.size());
  CHECK(d == std::vector<double>{1, 2, 3});
}

TEST_CASE("vector backends are bit-identical to scalar") {
  const auto& ref = scalar_kernels();
  const auto backends = vector_backends();
  if (backends.empty()) MESSAGE("no vector backend on this machine; scalar only");
  std::mt19937_64 rng(2024);
  for (const KernelTable* k : backends) {
    CAPTURE(k->name);
    for (std::size_t n = 0; n <= 67; ++n) {
      const auto a = random_vector(rng, n, -50, 50);
      const auto b = random_vector(rng, n, -50, 50);
      const auto counts = random_vector(rng, n, 0, 100);
      const auto counts2 = random_vector(rng, n, 0, 100);
      const auto totals = random_vector(rng, n, 100, 1000);
      CHECK(same_bits(k->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)));
      CHECK(same_bits(k->sum(a.data(), n), ref.sum(a.data(), n)));
      CHECK(same_bits(k->centered_dot(a.data(), 0.3, b.data(), -1.7, n),
                      ref.centered_dot(a.data(), 0.3, b.data(), -1.7, n)));

      std::vector<double> x(n), y(n);
      k->gibbs_topic_weights(counts.data(), counts2.data(), totals.data(), 0.1, 0.01, 1.0, x.data(), n);
      ref.gibbs_topic_weights(counts.data(), counts2.data(), totals.data(), 0.1, 0.01, 1.0, y.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(x[i], y[i]));

      k->foldin_topic_weights(counts.data(), b.data(), 0.1, x.data(), n);
      ref.foldin_topic_weights(counts.data(), b.data(), 0.1, y.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(x[i], y[i]));

      x = a;
      y = a;
      k->divide(x.data(), 3.7, n);
      ref.divide(y.data(), 3.7, n);
      for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(x[i], y[i]));
    }
  }
}

TEST_CASE("active backend is one of the known tables") {
  const auto& active = active_kernels();
  bool known = &active == &scalar_kernels();
  for (const auto* k : vector_backends()) known = known || &active == k;
  CHECK(known);
}
