#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "crisis_pulse/pipeline/artifacts.hpp"
#include "crisis_pulse/pipeline/config.hpp"
#include "crisis_pulse/pipeline/report.hpp"

namespace crisis_pulse::pipeline {

// Stage names as they appear in the MANIFEST, in execution order.
inline constexpr const char* kStageIngest = "ingest";
inline constexpr const char* kStageFilter = "filter";
inline constexpr const char* kStageTopics = "topics";
inline constexpr const char* kStageBehave = "behave";
inline constexpr const char* kStageSynop = "synop-decode";
inline constexpr const char* kStageAlign = "align";
inline constexpr const char* kStageReport = "report";

const std::vector<std::string>& stage_order();

// Raised when a stage aborts; the MANIFEST has already been marked.
class StageFailure : public std::runtime_error {
 public:
  StageFailure(std::string stage, std::string cause)
      : std::runtime_error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

std::string config_sha256(const PipelineConfig& config);

// Runs one stage from its inputs and earlier-stage artifacts in the output
// directory. Validates the stage's inputs first.
void run_stage(const std::string& stage, const PipelineConfig& config);

// Validates everything up front, then runs every stage in order.
RunReport run_pipeline(const PipelineConfig& config);

// Assembles the run report from artifacts already in the output directory.
RunReport collect_report(const ArtifactStore& store);

}  // namespace crisis_pulse::pipeline
