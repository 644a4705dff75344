#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace crisis_pulse::pipeline {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kManifestName = "MANIFEST";

struct StageRecord {
  std::string status;  // "complete" or "failed"
  std::string error;   // empty unless failed
  std::vector<std::string> artifacts;
};

// Provenance for an output directory. Contains no timestamps or absolute
// paths, so unchanged inputs give a byte-identical MANIFEST.
struct Manifest {
  std::string tool_version = kToolVersion;
  std::string config_sha256;
  std::map<std::string, std::string> inputs;     // file name -> sha256
  std::map<std::string, std::string> artifacts;  // artifact name -> sha256
  std::map<std::string, StageRecord> stages;

  // True when every recorded stage completed.
  bool complete() const;

  std::string serialize() const;
  static Manifest deserialize(std::string_view text);
};

// Writes artifacts under one output directory and keeps the MANIFEST in step.
// An existing MANIFEST is loaded so standalone stages extend earlier runs.
class ArtifactStore {
 public:
  ArtifactStore(std::filesystem::path out_dir, std::string config_sha256);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(std::string_view name) const { return dir_ / std::string(name); }

  // Hashes an input file and records it under its file name.
  void record_input(const std::filesystem::path& file);
  // Hashes every regular file below a directory, recorded as dir/relative.
  void record_input_tree(const std::filesystem::path& dir);

  void write(std::string_view stage, std::string_view name, std::string_view bytes);
  std::string read(std::string_view name) const;
  bool exists(std::string_view name) const;

  void begin_stage(std::string_view stage);
  void complete_stage(std::string_view stage);
  void fail_stage(std::string_view stage, std::string_view error);

  const Manifest& manifest() const { return manifest_; }
  void flush() const;

 private:
  std::filesystem::path dir_;
  Manifest manifest_;
};

}  // namespace crisis_pulse::pipeline
