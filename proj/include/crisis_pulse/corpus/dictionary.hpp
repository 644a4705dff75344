#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crisis_pulse/text/preprocess.hpp"

namespace crisis_pulse::corpus {

using TokenId = std::uint32_t;

struct DictionaryParams {
  std::uint64_t min_docs = 15;  // doc_freq < min_docs is dropped
  double max_frac = 0.5;        // doc_freq / D > max_frac is dropped
  std::uint64_t keep_n = 100000;
};

// Token <-> id map after frequency filtering. Ids are dense and assigned by
// rank: total_freq descending, then token ascending.
class Dictionary {
 public:
  Dictionary() = default;

  size_t size() const { return tokens_.size(); }
  std::uint64_t num_docs() const { return num_docs_; }
  const DictionaryParams& params() const { return params_; }

  std::optional<TokenId> find(std::string_view token) const;
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  std::uint64_t doc_freq(TokenId id) const { return doc_freq_.at(id); }
  std::uint64_t total_freq(TokenId id) const { return total_freq_.at(id); }

  // Fills doc.token_ids with the ids of in-dictionary tokens, in order.
  void attach(text::TokenizedDoc& doc) const;

  // Tab-separated: a "#crisis-pulse-dictionary" header line with D and the
  // parameters, then "id\ttoken\tdoc_freq\ttotal_freq" rows in id order.
  std::string serialize() const;
  static Dictionary deserialize(std::string_view contents);

  friend Dictionary build_dictionary(std::span<const text::TokenizedDoc>, const DictionaryParams&);

 private:
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> doc_freq_;
  std::vector<std::uint64_t> total_freq_;
  std::unordered_map<std::string, TokenId> index_;
  std::uint64_t num_docs_ = 0;
  DictionaryParams params_;
};

// Throws EmptyCorpus when docs is empty.
Dictionary build_dictionary(std::span<const text::TokenizedDoc> docs, const DictionaryParams& params = {});

}  // namespace crisis_pulse::corpus
