#pragma once

#include "shiftlab/core.hpp"
#include "shiftlab/countable.hpp"
#include "shiftlab/krieger.hpp"
#include "shiftlab/oracle.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

// Malformed document (CLI exit 2).
class ParseError : public Error { using Error::Error; };
// Well-formed document with invalid content (CLI exit 3).
class ValidationError : public Error { using Error::Error; };

enum class SystemType { Sft, Sofic, Forbidden, CountableStencil, Builtin };
std::string to_string(SystemType t);

struct SystemFile {
  SystemType type = SystemType::Sft;
  std::string name;
  Alphabet alphabet;
  NonnegMatrix matrix;          // sft
  LabeledGraph graph;           // sofic
  std::vector<Word> forbidden;  // forbidden
  int horizon = 0;
  std::vector<long long> offsets;  // countable-stencil
  std::vector<long long> values;
  StateId root = 0;
  std::optional<StateId> min_index;
  std::string builtin;  // builtin
};

SystemFile parse_system(std::string_view text);
SystemFile system_from_json(const nlohmann::json& j);
SystemFile load_system(const std::string& path);
nlohmann::json to_json(const SystemFile& s);
// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump_system(const SystemFile& s);

std::vector<std::string> builtin_names();
// Concrete SystemFile equivalent of a builtin; families without a finite
// description (context-free) stay builtin.
SystemFile export_builtin(const std::string& name);

// A SystemFile turned into the objects the modules operate on.
struct ResolvedSystem {
  enum class Kind { Sft, Sofic, Forbidden, Countable, ContextFree };
  Kind kind = Kind::Sft;
  std::string name;
  Alphabet alphabet;
  NonnegMatrix matrix;
  LabeledGraph graph;
  ForbiddenSetShift forbidden;
  CountableMatrixSpec countable;
  std::optional<KriegerCover> cover;
  std::string digest;  // of the canonical exported document
};
ResolvedSystem resolve(const SystemFile& s);
// File path, or "builtin:<name>".
ResolvedSystem resolve_source(const std::string& source);

// 64-bit FNV-1a, hex.
std::string digest_text(std::string_view text);

}  // namespace shiftlab
