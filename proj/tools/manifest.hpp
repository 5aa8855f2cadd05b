#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "nlslab/io.hpp"

namespace nlslab::cli {

std::string sha256_file(const std::filesystem::path& path);

// One manifest.json per output directory: tool version, parameter echo,
// grid, wall clock and the SHA-256 of every output written there.
class Manifest {
 public:
  Manifest(std::string command, json parameters);

  void set_grid(const GridSpec& grid) { grid_ = to_json(grid); }
  void add_output(const std::filesystem::path& path) { outputs_.push_back(path); }
  // Writes <dir>/manifest.json for every directory that received outputs.
  void write() const;

 private:
  std::string command_;
  json parameters_;
  json grid_;
  std::vector<std::filesystem::path> outputs_;
  std::chrono::steady_clock::time_point start_;
  std::chrono::system_clock::time_point started_at_;
};

}  // namespace nlslab::cli
