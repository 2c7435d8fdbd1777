#pragma once
// Helpers for loading the JSON diagram fixtures shipped under fixtures/.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "skein/diagram.hpp"

#ifndef SKEIN_FIXTURE_DIR
#error "SKEIN_FIXTURE_DIR must be defined by the build"
#endif

namespace fixtures {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string path(const std::string& stem) {
  return std::string(SKEIN_FIXTURE_DIR) + "/" + stem + ".json";
}

inline std::string text(const std::string& stem) { return read_file(path(stem)); }

inline skein::Diagram load(const std::string& stem) {
  return skein::Diagram::from_json_text(text(stem));
}

}  // namespace fixtures
