#pragma once

#include "shiftlab/system_file.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

// A known value attached to a fixture. `source` is "published", "trivial" or
// "derived"; derived facts name the independent oracle that produced them.
struct Fact {
  std::string key;
  std::optional<std::string> word;
  std::optional<int> n;
  nlohmann::json value;
  double tolerance = 0.0;
  std::string source;
  std::string oracle;
};

// A fixture file is a SystemFile document with an extra "facts" array.
struct Fixture {
  std::string name;
  std::string path;
  SystemFile system;
  std::vector<Fact> facts;

  const Fact* find(const std::string& key, const std::optional<std::string>& word = std::nullopt) const;
  std::vector<const Fact*> all(const std::string& key) const;
};

Fixture load_fixture(const std::string& path);
std::vector<Fact> facts_from_json(const nlohmann::json& j);

// SHIFTLAB_FIXTURES when set, else the directory configured at build time.
std::string default_fixture_dir();
// Every *.json fixture in `dir` (default_fixture_dir() when empty), sorted by name.
std::vector<Fixture> registry(const std::string& dir = "");
const Fixture& fixture(const std::vector<Fixture>& reg, const std::string& name);

}  // namespace shiftlab
