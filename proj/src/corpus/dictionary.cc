#include "crisis_pulse/corpus/dictionary.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/csv.hpp"

namespace crisis_pulse::corpus {

std::optional<TokenId> Dictionary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Dictionary::attach(text::TokenizedDoc& doc) const {
  doc.token_ids.clear();
  for (const auto& t : doc.tokens) {
    if (auto id = find(t)) doc.token_ids.push_back(*id);
  }
}

Dictionary build_dictionary(std::span<const text::TokenizedDoc> docs, const DictionaryParams& params) {
  if (docs.empty()) throw EmptyCorpus("cannot build a dictionary from zero documents");

  struct Counts {
    std::uint64_t docs = 0;
    std::uint64_t total = 0;
  };
  std::unordered_map<std::string, Counts> counts;
  std::unordered_set<std::string_view> seen_in_doc;
  for (const auto& doc : docs) {
    seen_in_doc.clear();
    for (const auto& t : doc.tokens) {
      auto& c = counts[t];
      ++c.total;
      if (seen_in_doc.insert(t).second) ++c.docs;
    }
  }

  const double num_docs = static_cast<double>(docs.size());
  struct Survivor {
    const std::string* token;
    Counts counts;
  };
  std::vector<Survivor> kept;
  for (const auto& [token, c] : counts) {
    if (c.docs < params.min_docs) continue;
    if (static_cast<double>(c.docs) / num_docs > params.max_frac) continue;
    kept.push_back({&token, c});
  }
  std::sort(kept.begin(), kept.end(), [](const Survivor& a, const Survivor& b) {
    if (a.counts.total != b.counts.total) return a.counts.total > b.counts.total;
    return *a.token < *b.token;
  });
  if (kept.size() > params.keep_n) kept.resize(params.keep_n);

  Dictionary dict;
  dict.num_docs_ = docs.size();
  dict.params_ = params;
  for (const auto& s : kept) {
    const auto id = static_cast<TokenId>(dict.tokens_.size());
    dict.tokens_.push_back(*s.token);
    dict.doc_freq_.push_back(s.counts.docs);
    dict.total_freq_.push_back(s.counts.total);
    dict.index_.emplace(*s.token, id);
  }
  return dict;
}

std::string Dictionary::serialize() const {
  std::ostringstream out;
  out << "#crisis-pulse-dictionary\tversion=1\tnum_docs=" << num_docs_ << "\tmin_docs=" << params_.min_docs
      << "\tmax_frac=" << format_double(params_.max_frac) << "\tkeep_n=" << params_.keep_n << '\n';
  for (size_t id = 0; id < tokens_.size(); ++id) {
    out << id << '\t' << tokens_[id] << '\t' << doc_freq_[id] << '\t' << total_freq_[id] << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    fields.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  try {
    size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(std::string("dictionary: bad ") + what + " '" + s + "'");
  }
}

}  // namespace

Dictionary Dictionary::deserialize(std::string_view contents) {
  const auto lines = split_lines(contents);
  if (lines.empty()) throw FormatError("dictionary: empty file");
  const auto header = split_tabs(lines[0]);
  if (header.empty() || header[0] != "#crisis-pulse-dictionary") throw FormatError("dictionary: missing header");
  std::map<std::string, std::string> kv;
  for (size_t i = 1; i < header.size(); ++i) {
    const auto eq = header[i].find('=');
    if (eq == std::string::npos) throw FormatError("dictionary: bad header field " + header[i]);
    kv[header[i].substr(0, eq)] = header[i].substr(eq + 1);
  }
  if (kv["version"] != "1") throw FormatError("dictionary: unsupported version");
  Dictionary dict;
  dict.num_docs_ = parse_u64(kv["num_docs"], "num_docs");
  dict.params_.min_docs = parse_u64(kv["min_docs"], "min_docs");
  dict.params_.keep_n = parse_u64(kv["keep_n"], "keep_n");
  const auto max_frac = parse_double(kv["max_frac"]);
  if (!max_frac) throw FormatError("dictionary: bad max_frac");
  dict.params_.max_frac = *max_frac;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_tabs(lines[i]);
    if (f.size() != 4) throw FormatError("dictionary: line " + std::to_string(i + 1) + " needs 4 fields");
    const auto id = parse_u64(f[0], "id");
    if (id != dict.tokens_.size()) throw FormatError("dictionary: ids must be dense and ordered");
    if (!dict.index_.emplace(f[1], static_cast<TokenId>(id)).second) {
      throw FormatError("dictionary: duplicate token " + f[1]);
    }
    dict.tokens_.push_back(f[1]);
    dict.doc_freq_.push_back(parse_u64(f[2], "doc_freq"));
    dict.total_freq_.push_back(parse_u64(f[3], "total_freq"));
  }
  return dict;
}

}  // namespace crisis_pulse::corpus
