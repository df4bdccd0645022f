#include "shiftlab/system_file.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace shiftlab {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  throw ValidationError(field + ": " + msg);
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) invalid(key, "missing");
  return j.at(key);
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) invalid(key, "must be a string");
  return v.get<std::string>();
}

long long as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) invalid(field, "must be an integer");
  return v.get<long long>();
}

std::vector<long long> integer_list(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_array()) invalid(key, "must be an array");
  std::vector<long long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_integer(v[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

Alphabet read_alphabet(const json& j, const char* key, bool required, int default_size) {
  if (!j.contains(key)) {
    if (required) invalid(key, "missing");
    return Alphabet::numbered(default_size);
  }
  const json& v = j.at(key);
  if (!v.is_array() || v.empty()) invalid(key, "must be a nonempty array of strings");
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) invalid(std::string(key) + "[" + std::to_string(i) + "]", "must be a string");
    tokens.push_back(v[i].get<std::string>());
  }
  try {
    return Alphabet(std::move(tokens));
  } catch (const Error& e) {
    invalid(key, e.what());
  }
}

int symbol_of(const Alphabet& a, const json& v, const std::string& field) {
  if (!v.is_string()) invalid(field, "must be a symbol token");
  const auto id = a.find(v.get<std::string>());
  if (!id) invalid(field, "unknown symbol '" + v.get<std::string>() + "'");
  return *id;
}

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json alphabet_json(const Alphabet& a) { return json(a.tokens()); }

}  // namespace

std::string to_string(SystemType t) {
  switch (t) {
    case SystemType::Sft: return "sft";
    case SystemType::Sofic: return "sofic";
    case SystemType::Forbidden: return "forbidden";
    case SystemType::CountableStencil: return "countable-stencil";
    case SystemType::Builtin: return "builtin";
  }
  return "sft";
}

SystemFile system_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("document: must be an object");
  SystemFile s;
  const std::string type = require_string(j, "type");
  if (j.contains("name")) {
    if (!j.at("name").is_string()) invalid("name", "must be a string");
    s.name = j.at("name").get<std::string>();
  }
  if (type == "sft") {
    s.type = SystemType::Sft;
    const json& rows = require(j, "matrix");
    if (!rows.is_array() || rows.empty()) invalid("matrix", "must be a nonempty array of rows");
    const int n = static_cast<int>(rows.size());
    s.matrix = NonnegMatrix(n);
    for (int i = 0; i < n; ++i) {
      const std::string rf = "matrix[" + std::to_string(i) + "]";
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) invalid(rf, "must have " + std::to_string(n) + " entries");
      for (int k = 0; k < n; ++k) {
        const std::string f = rf + "[" + std::to_string(k) + "]";
        const long long e = as_integer(rows[i][k], f);
        if (e != 0 && e != 1) invalid(f, "entry must be 0 or 1");
        s.matrix.set(i, k, e);
      }
    }
    s.alphabet = read_alphabet(j, "alphabet", false, n);
    if (s.alphabet.size() != n) invalid("alphabet", "size differs from matrix dimension");
  } else if (type == "sofic") {
    s.type = SystemType::Sofic;
    s.alphabet = read_alphabet(j, "alphabet", true, 0);
    const long long nv = as_integer(require(j, "vertices"), "vertices");
    if (nv < 1 || nv > 1'000'000) invalid("vertices", "must be a positive count");
    s.graph.vertices = static_cast<int>(nv);
    s.graph.alphabet = s.alphabet;
    const json& edges = require(j, "edges");
    if (!edges.is_array() || edges.empty()) invalid("edges", "must be a nonempty array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string f = "edges[" + std::to_string(i) + "]";
      const json& e = edges[i];
      if (!e.is_object()) invalid(f, "must be an object with from, to, label");
      LabeledEdge le;
      le.from = static_cast<int>(as_integer(e.contains("from") ? e.at("from") : json(), f + ".from"));
      le.to = static_cast<int>(as_integer(e.contains("to") ? e.at("to") : json(), f + ".to"));
      if (le.from < 0 || le.from >= nv) invalid(f + ".from", "vertex out of range");
      if (le.to < 0 || le.to >= nv) invalid(f + ".to", "vertex out of range");
      le.label = symbol_of(s.alphabet, e.contains("label") ? e.at("label") : json(), f + ".label");
      s.graph.edges.push_back(le);
    }
  } else if (type == "forbidden") {
    s.type = SystemType::Forbidden;
    s.alphabet = read_alphabet(j, "alphabet", true, 0);
    const json& words = require(j, "forbidden");
    if (!words.is_array()) invalid("forbidden", "must be an array of words");
    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::string f = "forbidden[" + std::to_string(i) + "]";
      if (!words[i].is_string()) invalid(f, "must be a word string");
      try {
        Word w = s.alphabet.parse(words[i].get<std::string>());
        if (w.empty()) invalid(f, "empty word");
        s.forbidden.push_back(std::move(w));
      } catch (const ValidationError&) {
        throw;
      } catch (const Error& e) {
        invalid(f, e.what());
      }
    }
    int longest = 0;
    for (const auto& w : s.forbidden) longest = std::max(longest, static_cast<int>(w.size()));
    s.horizon = j.contains("horizon") ? static_cast<int>(as_integer(j.at("horizon"), "horizon")) : longest;
    if (s.horizon < longest) invalid("horizon", "shorter than the longest forbidden word");
  } else if (type == "countable-stencil") {
    s.type = SystemType::CountableStencil;
    s.offsets = integer_list(j, "offsets");
    s.values = integer_list(j, "values");
    if (s.offsets.empty()) invalid("offsets", "must be nonempty");
    if (s.offsets.size() != s.values.size()) invalid("values", "length differs from offsets");
    for (std::size_t i = 0; i < s.values.size(); ++i)
      if (s.values[i] < 0) invalid("values[" + std::to_string(i) + "]", "must be nonnegative");
    s.root = j.contains("root") ? as_integer(j.at("root"), "root") : 0;
    if (j.contains("min_index")) {
      s.min_index = as_integer(j.at("min_index"), "min_index");
      if (s.root < *s.min_index) invalid("root", "below min_index");
    }
  } else if (type == "builtin") {
    s.type = SystemType::Builtin;
    s.builtin = require_string(j, "name");
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), s.builtin) == names.end()) invalid("name", "unknown builtin '" + s.builtin + "'");
    s.name = s.builtin;
  } else {
    invalid("type", "unknown system type '" + type + "'");
  }
  return s;
}

SystemFile parse_system(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  return system_from_json(j);
}

SystemFile load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_system(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json to_json(const SystemFile& s) {
  json j;
  j["type"] = to_string(s.type);
  if (!s.name.empty()) j["name"] = s.name;
  switch (s.type) {
    case SystemType::Sft: {
      json rows = json::array();
      for (int i = 0; i < s.matrix.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < s.matrix.dim(); ++k) row.push_back(static_cast<long long>(s.matrix(i, k)));
        rows.push_back(row);
      }
      j["matrix"] = rows;
      j["alphabet"] = alphabet_json(s.alphabet);
      break;
    }
    case SystemType::Sofic: {
      j["alphabet"] = alphabet_json(s.alphabet);
      j["vertices"] = s.graph.vertices;
      json edges = json::array();
      for (const auto& e : s.graph.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"label", s.alphabet.token(e.label)}});
      j["edges"] = edges;
      break;
    }
    case SystemType::Forbidden: {
      j["alphabet"] = alphabet_json(s.alphabet);
      json words = json::array();
      for (const auto& w : s.forbidden) words.push_back(s.alphabet.format(w));
      j["forbidden"] = words;
      j["horizon"] = s.horizon;
      break;
    }
    case SystemType::CountableStencil:
      j["offsets"] = s.offsets;
      j["values"] = s.values;
      j["root"] = s.root;
      if (s.min_index) j["min_index"] = *s.min_index;
      break;
    case SystemType::Builtin:
      j["name"] = s.builtin;
      break;
  }
  return j;
}

std::string dump_system(const SystemFile& s) { return to_json(s).dump(2) + "\n"; }

std::vector<std::string> builtin_names() { return {"context-free", "golden-mean-cover", "random-walk-z"}; }

SystemFile export_builtin(const std::string& name) {
  SystemFile s;
  if (name == "random-walk-z") {
    s.type = SystemType::CountableStencil;
    s.name = name;
    s.offsets = {1, -1};
    s.values = {1, 1};
    s.root = 0;
  } else if (name == "golden-mean-cover") {
    const KriegerCover c = golden_mean_cover();
    s.type = SystemType::Sofic;
    s.name = name;
    s.graph = *c.graph;
    s.alphabet = c.graph->alphabet;
  } else if (name == "context-free") {
    s.type = SystemType::Builtin;
    s.name = name;
    s.builtin = name;
  } else {
    throw ValidationError("name: unknown builtin '" + name + "'");
  }
  return s;
}

std::string digest_text(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResolvedSystem resolve(const SystemFile& file) {
  SystemFile s = file.type == SystemType::Builtin ? export_builtin(file.builtin) : file;
  ResolvedSystem r;
  r.digest = digest_text(dump_system(s));
  r.name = s.name.empty() ? to_string(s.type) : s.name;
  switch (s.type) {
    case SystemType::Sft:
      r.kind = ResolvedSystem::Kind::Sft;
      r.matrix = s.matrix;
      r.alphabet = s.alphabet;
      break;
    case SystemType::Sofic:
      r.kind = ResolvedSystem::Kind::Sofic;
      r.graph = s.graph;
      r.alphabet = s.alphabet;
      try {
        r.graph.validate();
      } catch (const Error& e) {
        throw ValidationError(std::string("edges: ") + e.what());
      }
      break;
    case SystemType::Forbidden: {
      r.kind = ResolvedSystem::Kind::Forbidden;
      r.alphabet = s.alphabet;
      r.forbidden = ForbiddenSetShift::from_words(r.name, s.alphabet, s.forbidden);
      r.forbidden.horizon = std::max(r.forbidden.horizon, s.horizon);
      KriegerOptions ko;
      ko.depth = r.forbidden.horizon + 1;
      ko.max_radius = r.forbidden.horizon + 2;
      r.cover = krieger_cover(r.forbidden, ko);
      r.graph = *r.cover->graph;
      break;
    }
    case SystemType::CountableStencil:
      r.kind = ResolvedSystem::Kind::Countable;
      r.countable = stencil_spec(r.name, s.offsets, s.values, s.root, s.min_index);
      break;
    case SystemType::Builtin:
      r.kind = ResolvedSystem::Kind::ContextFree;
      r.alphabet = Alphabet({"a", "b", "c"});
      r.forbidden = context_free_shift();
      r.cover = cf_cover();
      r.countable = r.cover->spec;
      break;
  }
  return r;
}

ResolvedSystem resolve_source(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    SystemFile s;
    s.type = SystemType::Builtin;
    s.builtin = source.substr(prefix.size());
    s.name = s.builtin;
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), s.builtin) == names.end())
      throw ValidationError("name: unknown builtin '" + s.builtin + "'");
    return resolve(s);
  }
  return resolve(load_system(source));
}

}  // namespace shiftlab
