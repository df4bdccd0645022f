#include "shiftlab/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef SHIFTLAB_FIXTURE_DIR
#define SHIFTLAB_FIXTURE_DIR "fixtures"
#endif

namespace shiftlab {

using nlohmann::json;

const Fact* Fixture::find(const std::string& key, const std::optional<std::string>& word) const {
  for (const auto& f : facts)
    if (f.key == key && (!word || f.word == word)) return &f;
  return nullptr;
}

std::vector<const Fact*> Fixture::all(const std::string& key) const {
  std::vector<const Fact*> out;
  for (const auto& f : facts)
    if (f.key == key) out.push_back(&f);
  return out;
}

std::vector<Fact> facts_from_json(const json& j) {
  std::vector<Fact> out;
  if (!j.is_array()) throw ValidationError("facts: must be an array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = "facts[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_object() || !e.contains("key") || !e.contains("value") || !e.contains("source"))
      throw ValidationError(field + ": needs key, value and source");
    Fact f;
    f.key = e.at("key").get<std::string>();
    f.value = e.at("value");
    f.source = e.at("source").get<std::string>();
    if (e.contains("word")) f.word = e.at("word").get<std::string>();
    if (e.contains("n")) f.n = e.at("n").get<int>();
    if (e.contains("tolerance")) f.tolerance = e.at("tolerance").get<double>();
    if (e.contains("oracle")) f.oracle = e.at("oracle").get<std::string>();
    if (f.source != "published" && f.source != "trivial" && f.source != "derived")
      throw ValidationError(field + ".source: must be published, trivial or derived");
    if (f.source == "derived" && f.oracle.empty()) throw ValidationError(field + ".oracle: derived facts name their oracle");
    out.push_back(std::move(f));
  }
  return out;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  Fixture fx;
  fx.path = path;
  fx.system = load_system(path);
  const json j = json::parse(text);
  fx.name = std::filesystem::path(path).stem().string();
  if (j.contains("facts")) {
    try {
      fx.facts = facts_from_json(j.at("facts"));
    } catch (const ValidationError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  return fx;
}

std::string default_fixture_dir() {
  if (const char* env = std::getenv("SHIFTLAB_FIXTURES"); env && *env) return env;
  return SHIFTLAB_FIXTURE_DIR;
}

std::vector<Fixture> registry(const std::string& dir) {
  const std::filesystem::path root = dir.empty() ? default_fixture_dir() : dir;
  if (!std::filesystem::is_directory(root)) throw InvalidArgument("fixture directory not found: " + root.string());
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(root))
    if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path().string());
  std::vector<Fixture> out;
  for (const auto& p : paths) out.push_back(load_fixture(p));
  std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return out;
}

const Fixture& fixture(const std::vector<Fixture>& reg, const std::string& name) {
  for (const auto& f : reg)
    if (f.name == name) return f;
  throw InvalidArgument("no fixture named " + name);
}

}  // namespace shiftlab
