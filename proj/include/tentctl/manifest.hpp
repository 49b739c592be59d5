#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tentctl {

inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility record written beside every file output: re-running the
// recorded command with the recorded parameters reproduces an output with
// the same digest.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string tool_version = kToolVersion;
  std::string output_digest;
};

// FNV-1a 64-bit, hex encoded.
std::string fnv1a_hex(std::string_view data);

std::string manifest_to_json(const RunManifest& manifest);

void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace tentctl
