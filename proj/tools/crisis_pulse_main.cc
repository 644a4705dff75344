#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/pipeline/config.hpp"
#include "crisis_pulse/pipeline/stages.hpp"
#include "crisis_pulse/synop/fetch.hpp"
#include "crisis_pulse/util/digest.hpp"
#include "crisis_pulse/util/time.hpp"

namespace {

using crisis_pulse::pipeline::PipelineConfig;

constexpr int kExitStageFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string classifier;
  std::string bucket;
  std::string out;
  std::string stations;
  std::vector<std::string> overrides;  // key=value
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config, "Pipeline configuration file (key = value)");
  app->add_option("--seed", f.seed, "Random seed for topic modelling");
  app->add_option("--classifier", f.classifier, "baseline | remote=URL[,fallback]");
  app->add_option("--bucket", f.bucket, "Alignment bucket width, e.g. 1h or 30m");
  app->add_option("--out", f.out, "Output directory");
  app->add_option("--stations", f.stations, "Comma-separated station ids to keep");
  app->add_option("--set", f.overrides, "Override any configuration key (key=value)");
}

PipelineConfig resolve_config(const CommonFlags& f) {
  using namespace crisis_pulse::pipeline;
  PipelineConfig c = f.config.empty() ? default_config() : load_config(f.config);
  for (const auto& kv : f.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw crisis_pulse::ConfigError("--set expects key=value, got '" + kv + "'");
    set_option(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (f.seed) set_option(c, "seed", std::to_string(*f.seed));
  if (!f.classifier.empty()) set_option(c, "classifier", f.classifier);
  if (!f.bucket.empty()) set_option(c, "bucket", f.bucket);
  if (!f.out.empty()) set_option(c, "out", f.out);
  if (!f.stations.empty()) set_option(c, "stations", f.stations);
  apply_environment(c);
  return c;
}

std::optional<crisis_pulse::UtcTime> parse_when(const std::string& text) {
  if (auto t = crisis_pulse::parse_iso8601(text)) return t;
  if (text.size() == 12 && text.find_first_not_of("0123456789") == std::string::npos) {
    return crisis_pulse::make_utc(std::stoi(text.substr(0, 4)), std::stoi(text.substr(4, 2)),
                                  std::stoi(text.substr(6, 2)), std::stoi(text.substr(8, 2)),
                                  std::stoi(text.substr(10, 2)));
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crisis-pulse: disaster message analysis aligned with SYNOP climate data"};
  app.require_subcommand(1);
  CommonFlags flags;

  struct StageCommand {
    CLI::App* app;
    std::string stage;
  };
  std::vector<StageCommand> stage_commands;
  const auto add_stage = [&](const char* name, const char* stage, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, flags);
    stage_commands.push_back({sub, stage});
    return sub;
  };
  add_stage("ingest", crisis_pulse::pipeline::kStageIngest, "Ingest, pre-process and build the dictionary");
  add_stage("filter", crisis_pulse::pipeline::kStageFilter, "Classify messages into filtered sets");
  add_stage("topics", crisis_pulse::pipeline::kStageTopics, "Train LDA on the disaster set and assign topics");
  add_stage("behave", crisis_pulse::pipeline::kStageBehave, "Behavioural indicators and disaster phases");
  add_stage("align", crisis_pulse::pipeline::kStageAlign, "Bucket activity and align it with climate data");
  add_stage("report", crisis_pulse::pipeline::kStageReport, "Write the run report from existing artifacts");

  CLI::App* run = app.add_subcommand("run", "Run every stage in order");
  add_common(run, flags);

  CLI::App* synop = app.add_subcommand("synop", "SYNOP decoding and retrieval");
  synop->require_subcommand(1);
  CLI::App* decode = synop->add_subcommand("decode", "Decode SYNOP input into climate.csv");
  add_common(decode, flags);
  std::string decode_input, ref_month;
  decode->add_option("--input", decode_input, "Raw FM-12 or getsynop export file (overrides 'synop')");
  decode->add_option("--ref-month", ref_month, "YYYY-MM for raw FM-12 messages");

  CLI::App* fetch = synop->add_subcommand("fetch", "Download a getsynop export verbatim");
  crisis_pulse::synop::FetchRequest request;
  std::string begin, end, fetch_output;
  fetch->add_option("--block", request.block, "WMO block or station id")->required();
  fetch->add_option("--begin", begin, "Start, ISO 8601 or YYYYMMDDHHmm")->required();
  fetch->add_option("--end", end, "End, ISO 8601 or YYYYMMDDHHmm")->required();
  fetch->add_option("--endpoint", request.endpoint, "getsynop URL");
  fetch->add_option("--output", fetch_output, "Destination file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (fetch->parsed()) {
      const auto b = parse_when(begin);
      const auto e = parse_when(end);
      if (!b || !e) throw crisis_pulse::ConfigError("--begin/--end must be ISO 8601 or YYYYMMDDHHmm");
      request.begin = *b;
      request.end = *e;
      const std::string body = crisis_pulse::synop::fetch_getsynop(request);
      crisis_pulse::write_file(fetch_output, body);
      std::cout << "wrote " << body.size() << " bytes to " << fetch_output << "\n";
      return 0;
    }

    PipelineConfig config = resolve_config(flags);
    if (decode->parsed()) {
      if (!decode_input.empty()) crisis_pulse::pipeline::set_option(config, "synop", decode_input);
      if (!ref_month.empty()) crisis_pulse::pipeline::set_option(config, "synop_ref_month", ref_month);
      crisis_pulse::pipeline::run_stage(crisis_pulse::pipeline::kStageSynop, config);
      std::cout << "wrote " << (config.out_dir / "climate.csv").string() << "\n";
      return 0;
    }
    if (run->parsed()) {
      const auto report = crisis_pulse::pipeline::run_pipeline(config);
      std::cout << crisis_pulse::pipeline::render_text(report);
      return 0;
    }
    for (const auto& cmd : stage_commands) {
      if (!cmd.app->parsed()) continue;
      crisis_pulse::pipeline::run_stage(cmd.stage, config);
      if (cmd.stage == crisis_pulse::pipeline::kStageReport) {
        std::cout << crisis_pulse::read_file(config.out_dir / "report.txt");
      } else {
        std::cout << "stage " << cmd.stage << " complete in " << config.out_dir.string() << "\n";
      }
      return 0;
    }
  } catch (const crisis_pulse::pipeline::StageFailure& e) {
    std::cerr << "crisis-pulse: " << e.what() << "\n";
    return kExitStageFailure;
  } catch (const crisis_pulse::ConfigError& e) {
    std::cerr << "crisis-pulse: configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const crisis_pulse::Error& e) {
    std::cerr << "crisis-pulse: " << e.what() << "\n";
    return kExitStageFailure;
  }
  return 0;
}
