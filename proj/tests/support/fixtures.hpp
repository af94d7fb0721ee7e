#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace k4ring::testing {

inline std::filesystem::path source_dir() { return K4RING_SOURCE_DIR; }
inline std::filesystem::path sample_rings_dir() { return source_dir() / "data" / "rings"; }
inline std::filesystem::path malformed_dir() { return source_dir() / "tests" / "data" / "malformed"; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::filesystem::path> ring_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".ring") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct ExpectedPosition {
  std::size_t line = 0;
  std::size_t column = 0;
};

// Malformed fixtures start with "# expect L:C".
inline ExpectedPosition expected_position(const std::string& text) {
  ExpectedPosition pos;
  std::istringstream in(text);
  std::string hash, word;
  char colon = 0;
  in >> hash >> word >> pos.line >> colon >> pos.column;
  return pos;
}

}  // namespace k4ring::testing
