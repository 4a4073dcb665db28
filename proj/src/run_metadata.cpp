#include "kissbound/run_metadata.hpp"

#include <boost/crc.hpp>
#include <cstdio>
#include <sstream>

namespace kissbound {

std::string_view version() { return "0.3.0"; }

std::string checksum(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

std::string RunMetadata::emit() const {
  std::ostringstream out;
  out << "command_line: " << command_line << '\n' << "version: " << version << '\n';
  for (const auto& [k, v] : config) out << "config." << k << ": " << v << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", wall_seconds);
  out << "wall_seconds: " << buf << '\n';
  for (const auto& [k, v] : checksums) out << "checksum." << k << ": crc32:" << v << '\n';
  return out.str();
}

}  // namespace kissbound
