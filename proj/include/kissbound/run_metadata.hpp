#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kissbound {

std::string_view version();

// CRC-32 of an artifact, as 8 lowercase hex digits.
std::string checksum(std::string_view bytes);

// Provenance that accompanies every artifact written by the CLI. Kept out of
// the artifacts themselves so that those stay byte-identical across runs.
struct RunMetadata {
  std::string command_line;
  std::vector<std::pair<std::string, std::string>> config;
  std::string version;
  double wall_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> checksums;  // artifact name -> crc32

  std::string emit() const;
};

}  // namespace kissbound
