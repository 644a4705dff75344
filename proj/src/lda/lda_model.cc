#include "crisis_pulse/lda/lda_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/csv.hpp"

namespace crisis_pulse::lda {

std::string LdaModel::serialize() const {
  std::ostringstream out;
  out << "crisis-pulse-lda 1\n";
  out << "topics " << num_topics << '\n';
  out << "vocabulary " << vocab_size << '\n';
  out << "alpha " << format_double(alpha) << '\n';
  out << "beta " << format_double(beta) << '\n';
  out << "seed " << seed << '\n';
  out << "iterations " << iterations << '\n';
  out << "phi\n";
  for (size_t k = 0; k < num_topics; ++k) {
    const auto row = topic_row(k);
    for (size_t w = 0; w < row.size(); ++w) {
      if (w) out << ' ';
      out << format_double(row[w]);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

template <typename T>
T expect_field(std::istringstream& in, const std::string& name) {
  std::string key;
  T value{};
  if (!(in >> key >> value) || key != name) throw FormatError("lda model: expected field '" + name + "'");
  return value;
}

double expect_double(std::istringstream& in, const std::string& name) {
  const auto text = expect_field<std::string>(in, name);
  const auto v = parse_double(text);
  if (!v) throw FormatError("lda model: bad value for " + name);
  return *v;
}

}  // namespace

LdaModel LdaModel::deserialize(std::string_view contents) {
  std::istringstream in{std::string(contents)};
  std::string magic, version;
  if (!(in >> magic >> version) || magic != "crisis-pulse-lda" || version != "1") {
    throw FormatError("lda model: missing or unsupported header");
  }
  LdaModel model;
  model.num_topics = expect_field<size_t>(in, "topics");
  model.vocab_size = expect_field<size_t>(in, "vocabulary");
  model.alpha = expect_double(in, "alpha");
  model.beta = expect_double(in, "beta");
  model.seed = expect_field<std::uint64_t>(in, "seed");
  model.iterations = expect_field<size_t>(in, "iterations");
  std::string marker;
  if (!(in >> marker) || marker != "phi") throw FormatError("lda model: expected phi block");
  model.phi.reserve(model.num_topics * model.vocab_size);
  std::string token;
  for (size_t i = 0; i < model.num_topics * model.vocab_size; ++i) {
    if (!(in >> token)) throw FormatError("lda model: phi block truncated");
    const auto v = parse_double(token);
    if (!v) throw FormatError("lda model: bad phi entry '" + token + "'");
    model.phi.push_back(*v);
  }
  if (in >> token) throw FormatError("lda model: trailing data after phi");
  return model;
}

std::vector<std::pair<corpus::TokenId, double>> top_terms(const LdaModel& model, size_t topic, size_t n) {
  if (topic >= model.num_topics) {
    throw TopicOutOfRange("topic " + std::to_string(topic) + " of " + std::to_string(model.num_topics));
  }
  const auto row = model.topic_row(topic);
  std::vector<corpus::TokenId> ids(row.size());
  std::iota(ids.begin(), ids.end(), corpus::TokenId{0});
  n = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n), ids.end(),
                    [&](corpus::TokenId a, corpus::TokenId b) {
                      if (row[a] != row[b]) return row[a] > row[b];
                      return a < b;
                    });
  std::vector<std::pair<corpus::TokenId, double>> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.emplace_back(ids[i], row[ids[i]]);
  return out;
}

}  // namespace crisis_pulse::lda
