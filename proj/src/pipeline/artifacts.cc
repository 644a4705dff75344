#include "crisis_pulse/pipeline/artifacts.hpp"

#include <algorithm>
#include <json.hpp>

#include "crisis_pulse/error.hpp"
#include "crisis_pulse/util/digest.hpp"

namespace crisis_pulse::pipeline {

bool Manifest::complete() const {
  return std::all_of(stages.begin(), stages.end(), [](const auto& kv) { return kv.second.status == "complete"; });
}

std::string Manifest::serialize() const {
  nlohmann::ordered_json j;
  j["tool"] = "crisis-pulse";
  j["tool_version"] = tool_version;
  j["config_sha256"] = config_sha256;
  j["complete"] = complete();
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : inputs) j["inputs"][k] = v;
  j["artifacts"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : artifacts) j["artifacts"][k] = v;
  j["stages"] = nlohmann::ordered_json::object();
  for (const auto& [name, rec] : stages) {
    nlohmann::ordered_json s;
    s["status"] = rec.status;
    if (!rec.error.empty()) s["error"] = rec.error;
    s["artifacts"] = rec.artifacts;
    j["stages"][name] = s;
  }
  return j.dump(2) + "\n";
}

Manifest Manifest::deserialize(std::string_view text) {
  Manifest m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config_sha256 = j.at("config_sha256").get<std::string>();
    m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    m.artifacts = j.at("artifacts").get<std::map<std::string, std::string>>();
    for (const auto& [name, s] : j.at("stages").items()) {
      StageRecord rec;
      rec.status = s.at("status").get<std::string>();
      rec.error = s.value("error", "");
      rec.artifacts = s.at("artifacts").get<std::vector<std::string>>();
      m.stages[name] = rec;
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("MANIFEST: ") + e.what());
  }
  return m;
}

ArtifactStore::ArtifactStore(std::filesystem::path out_dir, std::string config_sha256) : dir_(std::move(out_dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  if (std::filesystem::exists(dir_ / kManifestName)) {
    try {
      manifest_ = Manifest::deserialize(read_file(dir_ / kManifestName));
    } catch (const FormatError&) {
      manifest_ = Manifest{};
    }
    // A different configuration invalidates earlier provenance.
    if (manifest_.config_sha256 != config_sha256) manifest_ = Manifest{};
  }
  manifest_.tool_version = kToolVersion;
  manifest_.config_sha256 = std::move(config_sha256);
}

void ArtifactStore::record_input(const std::filesystem::path& file) {
  if (file.empty()) return;
  manifest_.inputs[file.filename().string()] = sha256_hex(read_file(file));
}

void ArtifactStore::record_input_tree(const std::filesystem::path& dir) {
  if (dir.empty()) return;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  const std::string prefix = dir.filename().empty() ? dir.parent_path().filename().string() : dir.filename().string();
  for (const auto& f : files) {
    manifest_.inputs[prefix + "/" + std::filesystem::relative(f, dir).generic_string()] = sha256_hex(read_file(f));
  }
}

void ArtifactStore::write(std::string_view stage, std::string_view name, std::string_view bytes) {
  write_file(path(name), bytes);
  manifest_.artifacts[std::string(name)] = sha256_hex(bytes);
  auto& list = manifest_.stages[std::string(stage)].artifacts;
  if (std::find(list.begin(), list.end(), name) == list.end()) list.emplace_back(name);
}

std::string ArtifactStore::read(std::string_view name) const {
  const auto p = path(name);
  if (!std::filesystem::exists(p)) {
    throw IoError("missing artifact " + p.string() + " (run the producing stage first)");
  }
  return read_file(p);
}

bool ArtifactStore::exists(std::string_view name) const { return std::filesystem::exists(path(name)); }

void ArtifactStore::begin_stage(std::string_view stage) {
  StageRecord& rec = manifest_.stages[std::string(stage)];
  rec = StageRecord{};
  rec.status = "failed";
  rec.error = "incomplete";
  flush();
}

void ArtifactStore::complete_stage(std::string_view stage) {
  StageRecord& rec = manifest_.stages[std::string(stage)];
  rec.status = "complete";
  rec.error.clear();
  flush();
}

void ArtifactStore::fail_stage(std::string_view stage, std::string_view error) {
  StageRecord& rec = manifest_.stages[std::string(stage)];
  rec.status = "failed";
  rec.error = std::string(error);
  flush();
}

void ArtifactStore::flush() const { write_file(dir_ / kManifestName, manifest_.serialize()); }

}  // namespace crisis_pulse::pipeline
