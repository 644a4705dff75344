#include "crisis_pulse/pipeline/stages.hpp"

#include <algorithm>
#include <charconv>
#include <json.hpp>
#include <set>

#include "crisis_pulse/align/activity.hpp"
#include "crisis_pulse/align/align.hpp"
#include "crisis_pulse/align/correlate.hpp"
#include "crisis_pulse/align/plot_data.hpp"
#include "crisis_pulse/classify/baseline.hpp"
#include "crisis_pulse/classify/filter.hpp"
#include "crisis_pulse/classify/lexicon.hpp"
#include "crisis_pulse/corpus/bow.hpp"
#include "crisis_pulse/corpus/dictionary.hpp"
#include "crisis_pulse/corpus/term_stats.hpp"
#include "crisis_pulse/error.hpp"
#include "crisis_pulse/lda/gibbs_sampler.hpp"
#include "crisis_pulse/lda/inference.hpp"
#include "crisis_pulse/lda/rng.hpp"
#include "crisis_pulse/synop/climate_frame.hpp"
#include "crisis_pulse/text/message.hpp"
#include "crisis_pulse/text/preprocess.hpp"
#include "crisis_pulse/util/csv.hpp"
#include "crisis_pulse/util/digest.hpp"

namespace crisis_pulse::pipeline {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kMessagesArtifact = "messages.jsonl";
constexpr const char* kTokensArtifact = "tokens.jsonl";
constexpr const char* kDictionaryArtifact = "dictionary.tsv";
constexpr const char* kIngestSummary = "ingest_summary.json";
constexpr const char* kTermsArtifact = "term_frequencies.csv";
constexpr const char* kBigramsArtifact = "key_bigrams.csv";
constexpr const char* kFilteredArtifact = "filtered_sets.json";
constexpr const char* kSentimentArtifact = "sentiment.csv";
constexpr const char* kTopicsArtifact = "topics.json";
constexpr const char* kBehaviorSummary = "behavioral_summary.csv";
constexpr const char* kClimateArtifact = "climate.csv";
constexpr const char* kSynopDiagnostics = "synop_diagnostics.json";
constexpr const char* kAlignedJson = "aligned.json";
constexpr const char* kCorrelations = "correlations.csv";

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(std::string(what) + ": bad count '" + s + "'");
  }
  return v;
}

std::string ranked_to_csv(const char* column, const corpus::RankedTerms& terms) {
  std::string out = std::string(column) + ",count\n";
  for (const auto& [t, n] : terms) out += join_csv_line({t, std::to_string(n)}) + "\n";
  return out;
}

corpus::RankedTerms ranked_from_csv(const std::string& text, const char* what) {
  corpus::RankedTerms out;
  const auto lines = split_lines(text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 2) throw FormatError(std::string(what) + ": expected 2 fields");
    out.emplace_back(f[0], parse_u64(f[1], what));
  }
  return out;
}

std::string tokens_to_jsonl(const std::vector<text::TokenizedDoc>& docs) {
  std::string out;
  for (const auto& d : docs) {
    ordered_json j;
    j["id"] = d.message_id;
    j["tokens"] = d.tokens;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<text::TokenizedDoc> tokens_from_jsonl(const std::string& text) {
  std::vector<text::TokenizedDoc> docs;
  for (const auto& line : split_lines(text)) {
    if (line.empty()) continue;
    const auto j = parse_json(line, kTokensArtifact);
    text::TokenizedDoc d;
    d.message_id = j.at("id").get<std::string>();
    d.tokens = j.at("tokens").get<std::vector<std::string>>();
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<text::RawMessage> load_ingested(const ArtifactStore& store) {
  auto result = text::parse_messages_jsonl(store.read(kMessagesArtifact));
  if (!result.rejected.empty()) throw FormatError("messages.jsonl artifact contains invalid lines");
  return std::move(result.messages);
}

std::map<std::string, std::string> sentiment_from_csv(const std::string& text) {
  std::map<std::string, std::string> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 2) throw FormatError("sentiment.csv: expected 2 fields");
    out[f[0]] = f[1];
  }
  return out;
}

std::vector<std::string> ids_of(const json& j, const std::string& category) {
  return j.at("sets").at(category).at("ids").get<std::vector<std::string>>();
}

// ---- stages -------------------------------------------------------------

void stage_ingest(const PipelineConfig& c, ArtifactStore& store) {
  store.record_input(c.messages);
  store.record_input(c.stopwords);
  store.record_input(c.smileys);
  const auto ingested = text::load_messages(c.messages);
  if (ingested.messages.empty()) throw EmptyCorpus("no valid messages in " + c.messages.filename().string());

  text::StopwordSet stopwords = c.stopwords.empty() ? text::default_stopwords() : text::load_stopwords(c.stopwords);
  text::SmileyTable smileys = c.smileys.empty() ? text::default_smileys() : text::load_smileys(c.smileys);
  text::PreprocessOptions options;
  options.stopwords = &stopwords;
  options.smileys = &smileys;
  options.min_token_length = c.min_token_length;
  const auto docs = text::preprocess_all(ingested.messages, options);
  const auto dict = corpus::build_dictionary(docs, c.dictionary);

  std::string rejected = "line,reason\n";
  for (const auto& r : ingested.rejected) rejected += join_csv_line({std::to_string(r.line_number), r.reason}) + "\n";

  store.write(kStageIngest, kMessagesArtifact, text::to_jsonl(ingested.messages));
  store.write(kStageIngest, "rejected.csv", rejected);
  store.write(kStageIngest, kTokensArtifact, tokens_to_jsonl(docs));
  store.write(kStageIngest, kDictionaryArtifact, dict.serialize());
  store.write(kStageIngest, kTermsArtifact, ranked_to_csv("term", corpus::term_frequencies(docs, c.top_terms)));
  store.write(kStageIngest, kBigramsArtifact,
              ranked_to_csv("bigram", corpus::key_bigrams(docs, c.bigram_min_count, c.top_bigrams)));
  ordered_json summary;
  summary["messages"] = ingested.messages.size();
  summary["rejected_lines"] = ingested.rejected.size();
  summary["dictionary_size"] = dict.size();
  store.write(kStageIngest, kIngestSummary, summary.dump(2) + "\n");
}

void stage_filter(const PipelineConfig& c, ArtifactStore& store) {
  store.record_input_tree(c.lexicons);
  store.record_input(c.accounts);
  const auto msgs = load_ingested(store);
  const auto docs = tokens_from_jsonl(store.read(kTokensArtifact));
  if (docs.size() != msgs.size()) throw FormatError("tokens.jsonl and messages.jsonl differ in length");
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].message_id != msgs[i].id) throw FormatError("tokens.jsonl out of step with messages.jsonl");
  }
  const auto lexicons = classify::LexiconSet::load(c.lexicons);
  const auto result = classify::filter_pipeline(msgs, docs, lexicons, c.classifier);
  classify::FilteredSet known{std::string("known_accounts"), {}, classify::SetSource::kKnownAccount};
  if (!c.accounts.empty()) known = classify::flag_known_accounts(msgs, classify::load_accounts(c.accounts));

  ordered_json j;
  j["source"] = classify::to_string(result.source);
  j["fallback_reason"] = result.fallback_reason ? ordered_json(*result.fallback_reason) : ordered_json();
  j["sets"] = ordered_json::object();
  for (auto name : {classify::kDisaster, classify::kDisasterMedical, classify::kDisasterHumanitarian,
                    classify::kPositive}) {
    const auto& set = result.sets.at(std::string(name));
    j["sets"][std::string(name)] = {{"source", classify::to_string(set.source)}, {"ids", set.message_ids}};
  }
  j["known_accounts"] = {{"category", known.category},
                         {"source", classify::to_string(known.source)},
                         {"ids", known.message_ids}};
  store.write(kStageFilter, kFilteredArtifact, j.dump(2) + "\n");

  std::string sentiment = "id,sentiment\n";
  for (std::size_t i = 0; i < msgs.size(); ++i) sentiment += join_csv_line({msgs[i].id, result.sentiment[i]}) + "\n";
  store.write(kStageFilter, kSentimentArtifact, sentiment);
}

void stage_topics(const PipelineConfig& c, ArtifactStore& store) {
  if (!c.lda_enabled) {
    store.write(kStageTopics, kTopicsArtifact, "{\n  \"enabled\": false\n}\n");
    return;
  }
  if (!c.seed) throw ConfigError("'seed' is required when LDA is enabled");
  const auto dict = corpus::Dictionary::deserialize(store.read(kDictionaryArtifact));
  auto docs = tokens_from_jsonl(store.read(kTokensArtifact));
  const auto filtered = parse_json(store.read(kFilteredArtifact), kFilteredArtifact);
  const auto disaster_ids = ids_of(filtered, std::string(classify::kDisaster));
  const std::set<std::string> wanted(disaster_ids.begin(), disaster_ids.end());

  std::vector<std::string> ids;
  std::vector<corpus::BowVector> bows;
  for (auto& d : docs) {
    if (!wanted.count(d.message_id)) continue;
    dict.attach(d);
    auto bow = corpus::to_bow(d, dict);
    if (bow.entries.empty()) continue;
    ids.push_back(d.message_id);
    bows.push_back(std::move(bow));
  }
  if (bows.empty()) throw EmptyCorpus("no disaster-set message has an in-vocabulary token");
  if (c.variant == CorpusVariant::kTfidf) bows = corpus::tfidf_corpus(bows, dict);

  lda::TrainParams params;
  params.num_topics = c.num_topics;
  params.alpha = c.alpha;
  params.beta = c.beta;
  params.iterations = c.iterations;
  params.seed = *c.seed;
  const auto model = lda::train_lda(bows, dict.size(), params);
  store.write(kStageTopics, "lda_model.txt", model.serialize());

  const lda::TopicInferencer inferencer(model);
  std::vector<std::uint64_t> per_topic(model.num_topics, 0);
  std::string assignments = "id,topic,probability\n";
  for (std::size_t d = 0; d < bows.size(); ++d) {
    const auto a = inferencer.infer(bows[d], c.fold_iterations, lda::mix_seed(*c.seed, d));
    ++per_topic[a.topic_id];
    assignments += join_csv_line({ids[d], std::to_string(a.topic_id), format_double(a.probability)}) + "\n";
  }
  store.write(kStageTopics, "topic_assignments.csv", assignments);

  ordered_json j;
  j["enabled"] = true;
  j["corpus"] = c.variant == CorpusVariant::kBow ? "bow" : "tfidf";
  j["documents"] = bows.size();
  auto& topics = j["topics"] = ordered_json::array();
  for (std::size_t k = 0; k < model.num_topics; ++k) {
    ordered_json terms = ordered_json::array();
    for (const auto& [id, w] : lda::top_terms(model, k, c.terms_per_topic)) {
      terms.push_back({{"term", dict.token(id)}, {"weight", w}});
    }
    topics.push_back({{"topic", k}, {"documents", per_topic[k]}, {"terms", terms}});
  }
  store.write(kStageTopics, kTopicsArtifact, j.dump(2) + "\n");
}

// Uniform scores carry no lexicon evidence; the tie-break label would
// otherwise inflate the first label of every indicator in the summary.
constexpr const char* kUndecided = "undecided";

bool is_uniform(const classify::ClassScores& s) {
  const double first = s.scores.begin()->second;
  return std::all_of(s.scores.begin(), s.scores.end(), [&](const auto& kv) { return kv.second == first; });
}

void stage_behave(const PipelineConfig& c, ArtifactStore& store) {
  store.record_input_tree(c.lexicons);
  const auto docs = tokens_from_jsonl(store.read(kTokensArtifact));
  const auto lexicons = classify::LexiconSet::load(c.lexicons);
  std::vector<std::string> columns = classify::behavioral_indicators();
  columns.emplace_back(classify::kPhase);

  std::map<std::string, std::map<std::string, std::uint64_t>> counts;
  for (const auto& col : columns) {
    for (const auto& label : classify::labels_for(col)) counts[col][label] = 0;
    counts[col][kUndecided] = 0;
  }
  std::vector<std::string> header = {"id"};
  header.insert(header.end(), columns.begin(), columns.end());
  std::string rows = join_csv_line(header) + "\n";
  for (const auto& d : docs) {
    auto profile = classify::behavioral_profile(d, lexicons);
    profile.emplace(std::string(classify::kPhase), classify::phase_categorize(d, lexicons));
    std::vector<std::string> row = {d.message_id};
    for (const auto& col : columns) {
      const auto& scores = profile.at(col);
      ++counts[col][is_uniform(scores) ? std::string(kUndecided) : scores.dominant];
      row.push_back(scores.dominant);
    }
    rows += join_csv_line(row) + "\n";
  }
  store.write(kStageBehave, "behavioral.csv", rows);

  std::string summary = "indicator,label,count\n";
  for (const auto& col : columns) {
    for (const auto& [label, n] : counts[col]) summary += join_csv_line({col, label, std::to_string(n)}) + "\n";
  }
  store.write(kStageBehave, kBehaviorSummary, summary);
}

void stage_synop(const PipelineConfig& c, ArtifactStore& store) {
  store.record_input(c.synop);
  synop::BulletinOptions options;
  options.ref_year = c.synop_ref_year;
  options.ref_month = c.synop_ref_month;
  const auto parsed = synop::parse_bulletin(read_file(c.synop), options);
  auto frame = synop::restrict_stations(synop::observations_frame(parsed.reports), c.stations);
  frame.malformed_messages = parsed.malformed;
  if (frame.rows.empty()) throw NoReportsFound("no reports from the configured stations");
  store.write(kStageSynop, kClimateArtifact, synop::climate_to_csv(frame));

  ordered_json j;
  j["reports"] = parsed.reports.size();
  j["observations"] = frame.rows.size();
  j["stations"] = std::vector<std::string>(frame.stations.begin(), frame.stations.end());
  j["malformed_messages"] = frame.malformed_messages;
  j["duplicates"] = frame.duplicates;
  j["sanity_rejections"] = frame.sanity_rejections;
  j["malformed_groups"] = frame.malformed_groups;
  store.write(kStageSynop, kSynopDiagnostics, j.dump(2) + "\n");
}

void stage_align(const PipelineConfig& c, ArtifactStore& store) {
  const auto msgs = load_ingested(store);
  const auto labels = sentiment_from_csv(store.read(kSentimentArtifact));
  const auto climate = synop::climate_from_csv(store.read(kClimateArtifact));
  const auto activity = align::bucket_activity(msgs, labels, c.bucket);
  store.write(kStageAlign, "activity.csv", align::activity_to_csv(activity));

  const auto frame = align::align_frames(activity, climate, c.variables);
  store.write(kStageAlign, "aligned.csv", align::emit_plot_data(frame));
  store.write(kStageAlign, kAlignedJson, align::emit_plot_json(frame));

  std::string corr = "activity,variable,r\n";
  const std::size_t activity_series = 1 + activity.labels.size();
  for (std::size_t a = 0; a < activity_series; ++a) {
    for (std::size_t v = activity_series; v < frame.series.size(); ++v) {
      std::string r;
      try {
        r = format_double(align::correlate(frame.series[a].values, frame.series[v].values));
      } catch (const DegenerateSeries&) {
        r.clear();
      }
      corr += join_csv_line({frame.series[a].name, frame.series[v].name, r}) + "\n";
    }
  }
  store.write(kStageAlign, kCorrelations, corr);
}

void stage_report(const PipelineConfig&, ArtifactStore& store) {
  const RunReport report = collect_report(store);
  store.write(kStageReport, "report.txt", render_text(report));
  store.write(kStageReport, "report.json", render_json(report));
}

std::vector<Requirement> requirements(const std::string& stage) {
  if (stage == kStageIngest) return {Requirement::kMessages};
  if (stage == kStageFilter) return {Requirement::kLexicons, Requirement::kAccounts};
  if (stage == kStageBehave) return {Requirement::kLexicons};
  if (stage == kStageSynop) return {Requirement::kSynop};
  return {};
}

void execute(const std::string& stage, const PipelineConfig& c, ArtifactStore& store) {
  store.begin_stage(stage);
  try {
    if (stage == kStageIngest) {
      stage_ingest(c, store);
    } else if (stage == kStageFilter) {
      stage_filter(c, store);
    } else if (stage == kStageTopics) {
      stage_topics(c, store);
    } else if (stage == kStageBehave) {
      stage_behave(c, store);
    } else if (stage == kStageSynop) {
      stage_synop(c, store);
    } else if (stage == kStageAlign) {
      stage_align(c, store);
    } else if (stage == kStageReport) {
      stage_report(c, store);
    } else {
      throw ConfigError("unknown stage '" + stage + "'");
    }
  } catch (const std::exception& e) {
    store.fail_stage(stage, e.what());
    throw StageFailure(stage, e.what());
  }
  store.complete_stage(stage);
}

}  // namespace

const std::vector<std::string>& stage_order() {
  static const std::vector<std::string> order = {kStageIngest, kStageFilter, kStageTopics, kStageBehave,
                                                 kStageSynop,  kStageAlign,  kStageReport};
  return order;
}

std::string config_sha256(const PipelineConfig& config) { return sha256_hex(canonical_config(config)); }

void run_stage(const std::string& stage, const PipelineConfig& config) {
  if (std::find(stage_order().begin(), stage_order().end(), stage) == stage_order().end()) {
    throw ConfigError("unknown stage '" + stage + "'");
  }
  auto needs = requirements(stage);
  PipelineConfig checked = config;
  if (stage != kStageTopics) checked.lda_enabled = false;  // the seed only matters to topics
  validate(checked, needs);
  ArtifactStore store(config.out_dir, config_sha256(config));
  execute(stage, config, store);
}

RunReport run_pipeline(const PipelineConfig& config) {
  validate(config, {Requirement::kMessages, Requirement::kSynop, Requirement::kLexicons, Requirement::kAccounts});
  ArtifactStore store(config.out_dir, config_sha256(config));
  for (const auto& stage : stage_order()) execute(stage, config, store);
  return collect_report(store);
}

RunReport collect_report(const ArtifactStore& store) {
  RunReport r;
  const auto summary = parse_json(store.read(kIngestSummary), kIngestSummary);
  r.total_messages = summary.at("messages").get<std::uint64_t>();
  r.rejected_lines = summary.at("rejected_lines").get<std::uint64_t>();
  r.term_frequencies = ranked_from_csv(store.read(kTermsArtifact), kTermsArtifact);
  r.key_bigrams = ranked_from_csv(store.read(kBigramsArtifact), kBigramsArtifact);

  const auto filtered = parse_json(store.read(kFilteredArtifact), kFilteredArtifact);
  r.classifier_source = filtered.at("source").get<std::string>();
  if (!filtered.at("fallback_reason").is_null()) r.fallback_reason = filtered.at("fallback_reason").get<std::string>();
  const auto positive_ids = ids_of(filtered, std::string(classify::kPositive));
  const std::set<std::string> positive(positive_ids.begin(), positive_ids.end());
  r.positive_messages = positive.size();
  for (auto name : {classify::kDisaster, classify::kDisasterMedical, classify::kDisasterHumanitarian}) {
    CategoryLine line;
    line.category = std::string(name);
    for (const auto& id : ids_of(filtered, line.category)) {
      ++line.count;
      line.positive += positive.count(id);
    }
    r.categories.push_back(line);
  }
  const auto disaster_ids = ids_of(filtered, std::string(classify::kDisaster));
  const std::set<std::string> disaster(disaster_ids.begin(), disaster_ids.end());
  for (const auto& id : filtered.at("known_accounts").at("ids")) {
    ++r.known_account_flags;
    if (!disaster.count(id.get<std::string>())) ++r.known_account_outside_disaster;
  }

  if (store.exists(kTopicsArtifact)) {
    const auto topics = parse_json(store.read(kTopicsArtifact), kTopicsArtifact);
    r.topics_present = topics.value("enabled", false);
    if (r.topics_present) {
      for (const auto& t : topics.at("topics")) {
        TopicLine line;
        line.topic = t.at("topic").get<std::size_t>();
        line.documents = t.at("documents").get<std::uint64_t>();
        for (const auto& term : t.at("terms")) {
          line.terms.emplace_back(term.at("term").get<std::string>(), term.at("weight").get<double>());
        }
        r.topics.push_back(std::move(line));
      }
    }
  }

  if (store.exists(kBehaviorSummary)) {
    const auto lines = split_lines(store.read(kBehaviorSummary));
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto f = split_csv_line(lines[i]);
      if (f.size() != 3) throw FormatError("behavioral_summary.csv: expected 3 fields");
      r.behavioral[f[0]][f[1]] = parse_u64(f[2], kBehaviorSummary);
    }
  }

  if (store.exists(kSynopDiagnostics)) {
    const auto d = parse_json(store.read(kSynopDiagnostics), kSynopDiagnostics);
    r.synop_rows = d.at("observations").get<std::uint64_t>();
    r.synop_stations = d.at("stations").get<std::vector<std::string>>();
    r.synop_malformed = d.at("malformed_messages").get<std::uint64_t>();
    r.synop_duplicates = d.at("duplicates").get<std::uint64_t>();
    r.synop_sanity_rejections = d.at("sanity_rejections").get<std::uint64_t>();
  }

  if (store.exists(kAlignedJson)) {
    const auto frame = align::parse_plot_json(store.read(kAlignedJson));
    r.aligned_present = true;
    r.aligned_points = frame.timestamps.size();
    r.aligned_dropped = frame.dropped;
    r.aligned_candidates = frame.candidates;
    for (const auto& s : frame.series) r.aligned_series.push_back(s.name);
    if (!frame.timestamps.empty()) {
      r.aligned_first = format_iso8601(frame.timestamps.front());
      r.aligned_last = format_iso8601(frame.timestamps.back());
    }
  }
  if (store.exists(kCorrelations)) {
    const auto lines = split_lines(store.read(kCorrelations));
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto f = split_csv_line(lines[i]);
      if (f.size() != 3) throw FormatError("correlations.csv: expected 3 fields");
      CorrelationLine line{f[0], f[1], std::nullopt};
      if (!f[2].empty()) line.r = parse_double(f[2]);
      r.correlations.push_back(line);
    }
  }
  return r;
}

}  // namespace crisis_pulse::pipeline
