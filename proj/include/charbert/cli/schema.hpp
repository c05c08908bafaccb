#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "../errors.hpp"

namespace charbert::cli {

using json = nlohmann::ordered_json;

// Malformed job or fixture documents; exit code 3.
class SchemaError : public Error {
 public:
  using Error::Error;
};

struct FlagsSpec {
  bool domain = false;
  bool complete_intersection = false;
  bool cohen_macaulay = false;
  std::optional<int> codimension;
  bool operator==(const FlagsSpec&) const = default;
};

// "QQ", "ZZ" (with a distinguished prime) or "GF(p)"
struct RingSpec {
  std::string coefficients;
  std::vector<std::string> variables;
  std::vector<std::string> relations;
  FlagsSpec flags;
  std::optional<long> prime;
  bool operator==(const RingSpec&) const = default;
};

// A named quotient of the base ring by extra relations.
struct SectionSpec {
  std::string name;
  std::vector<std::string> relations;
  FlagsSpec flags;
  bool operator==(const SectionSpec&) const = default;
};

struct NamedIdeal {
  std::string name;
  std::vector<std::string> generators;
  bool operator==(const NamedIdeal&) const = default;
};

struct CheckSpec {
  std::string op;
  std::optional<std::string> ring;  // a section name; the base ring otherwise
  json args = json::object();
  json expect = json::object();
  std::string note;
  bool operator==(const CheckSpec&) const = default;
};

// Everything the expressions of a check may refer to.
struct Setting {
  RingSpec ring;
  std::vector<SectionSpec> sections;
  std::vector<NamedIdeal> ideals;
  bool operator==(const Setting&) const = default;
};

struct Fixture {
  std::string name;
  std::vector<std::string> tags;
  std::string description;
  Setting setting;
  std::vector<CheckSpec> checks;
  bool operator==(const Fixture&) const = default;
};

// A single-operation job for the char, control, symbolic-power and
// bertini-search subcommands.
struct Job {
  std::string command;
  Setting setting;
  json args = json::object();
  json expect = json::object();
  bool operator==(const Job&) const = default;
};

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return field(j, key, where).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get<T>(j, key, where);
}

inline void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known |= k == key;
    if (!known) throw SchemaError(where + ": unknown field '" + k + "'");
  }
}

}  // namespace detail

inline FlagsSpec flags_from_json(const json& j, const std::string& where) {
  detail::only_keys(j, {"domain", "complete_intersection", "cohen_macaulay", "codimension"}, where);
  FlagsSpec f;
  f.domain = detail::get_or(j, "domain", false, where);
  f.complete_intersection = detail::get_or(j, "complete_intersection", false, where);
  f.cohen_macaulay = detail::get_or(j, "cohen_macaulay", false, where);
  if (j.contains("codimension")) f.codimension = detail::get<int>(j, "codimension", where);
  return f;
}

inline json to_json(const FlagsSpec& f) {
  json j = json::object();
  if (f.domain) j["domain"] = true;
  if (f.complete_intersection) j["complete_intersection"] = true;
  if (f.cohen_macaulay) j["cohen_macaulay"] = true;
  if (f.codimension) j["codimension"] = *f.codimension;
  return j;
}

inline RingSpec ring_from_json(const json& j) {
  const std::string w = "ring";
  detail::only_keys(j, {"coefficients", "variables", "relations", "flags", "prime"}, w);
  RingSpec r;
  r.coefficients = detail::get<std::string>(j, "coefficients", w);
  r.variables = detail::get<std::vector<std::string>>(j, "variables", w);
  r.relations = detail::get_or(j, "relations", std::vector<std::string>{}, w);
  if (j.contains("flags")) r.flags = flags_from_json(j.at("flags"), w + ".flags");
  if (j.contains("prime")) r.prime = detail::get<long>(j, "prime", w);
  if (r.coefficients == "ZZ" && !r.prime) throw SchemaError("ring: integer coefficients need a prime");
  if (r.variables.empty()) throw SchemaError("ring: no variables");
  return r;
}

inline json to_json(const RingSpec& r) {
  json j;
  j["coefficients"] = r.coefficients;
  j["variables"] = r.variables;
  if (!r.relations.empty()) j["relations"] = r.relations;
  if (auto f = to_json(r.flags); !f.empty()) j["flags"] = f;
  if (r.prime) j["prime"] = *r.prime;
  return j;
}

inline Setting setting_from_json(const json& j) {
  Setting s;
  s.ring = ring_from_json(detail::field(j, "ring", "document"));
  if (j.contains("sections")) {
    for (const auto& [name, v] : j.at("sections").items()) {
      std::string w = "sections." + name;
      detail::only_keys(v, {"relations", "flags"}, w);
      SectionSpec sec{name, detail::get<std::vector<std::string>>(v, "relations", w), {}};
      if (v.contains("flags")) sec.flags = flags_from_json(v.at("flags"), w + ".flags");
      s.sections.push_back(std::move(sec));
    }
  }
  if (j.contains("ideals")) {
    for (const auto& [name, v] : j.at("ideals").items()) {
      try {
        s.ideals.push_back({name, v.get<std::vector<std::string>>()});
      } catch (const json::exception& e) {
        throw SchemaError("ideals." + name + ": " + e.what());
      }
    }
  }
  return s;
}

inline void put_setting(json& j, const Setting& s) {
  j["ring"] = to_json(s.ring);
  if (!s.sections.empty()) {
    json secs = json::object();
    for (const auto& sec : s.sections) {
      json v;
      v["relations"] = sec.relations;
      if (auto f = to_json(sec.flags); !f.empty()) v["flags"] = f;
      secs[sec.name] = v;
    }
    j["sections"] = secs;
  }
  if (!s.ideals.empty()) {
    json ids = json::object();
    for (const auto& I : s.ideals) ids[I.name] = I.generators;
    j["ideals"] = ids;
  }
}

inline CheckSpec check_from_json(const json& j, const std::string& where) {
  detail::only_keys(j, {"op", "ring", "args", "expect", "note"}, where);
  CheckSpec c;
  c.op = detail::get<std::string>(j, "op", where);
  if (j.contains("ring")) c.ring = detail::get<std::string>(j, "ring", where);
  c.args = j.value("args", json::object());
  c.expect = j.value("expect", json::object());
  c.note = detail::get_or<std::string>(j, "note", "", where);
  if (!c.args.is_object() || !c.expect.is_object()) throw SchemaError(where + ": args and expect must be objects");
  return c;
}

inline json to_json(const CheckSpec& c) {
  json j;
  j["op"] = c.op;
  if (c.ring) j["ring"] = *c.ring;
  if (!c.args.empty()) j["args"] = c.args;
  if (!c.expect.empty()) j["expect"] = c.expect;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline Fixture fixture_from_json(const json& j) {
  detail::only_keys(j, {"name", "tags", "description", "ring", "sections", "ideals", "checks"}, "fixture");
  Fixture f;
  f.name = detail::get<std::string>(j, "name", "fixture");
  f.tags = detail::get_or(j, "tags", std::vector<std::string>{}, "fixture");
  f.description = detail::get_or<std::string>(j, "description", "", "fixture");
  f.setting = setting_from_json(j);
  const json& checks = detail::field(j, "checks", "fixture");
  if (!checks.is_array() || checks.empty()) throw SchemaError(f.name + ": checks must be a nonempty array");
  for (std::size_t i = 0; i < checks.size(); ++i)
    f.checks.push_back(check_from_json(checks[i], f.name + ".checks[" + std::to_string(i) + "]"));
  return f;
}

inline json to_json(const Fixture& f) {
  json j;
  j["name"] = f.name;
  if (!f.tags.empty()) j["tags"] = f.tags;
  if (!f.description.empty()) j["description"] = f.description;
  put_setting(j, f.setting);
  j["checks"] = json::array();
  for (const auto& c : f.checks) j["checks"].push_back(to_json(c));
  return j;
}

inline Job job_from_json(const json& j) {
  detail::only_keys(j, {"command", "ring", "sections", "ideals", "args", "expect"}, "job");
  Job job;
  job.command = detail::get<std::string>(j, "command", "job");
  job.setting = setting_from_json(j);
  job.args = j.value("args", json::object());
  job.expect = j.value("expect", json::object());
  if (!job.args.is_object() || !job.expect.is_object()) throw SchemaError("job: args and expect must be objects");
  return job;
}

inline json to_json(const Job& job) {
  json j;
  j["command"] = job.command;
  put_setting(j, job.setting);
  if (!job.args.empty()) j["args"] = job.args;
  if (!job.expect.empty()) j["expect"] = job.expect;
  return j;
}

inline json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

// A fixture file, or every *.json in a directory sorted by file name.
inline std::vector<Fixture> load_fixtures(const std::filesystem::path& path) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& e : std::filesystem::directory_iterator(path))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<Fixture> out;
  for (const auto& f : files) out.push_back(fixture_from_json(read_json(f)));
  return out;
}

}  // namespace charbert::cli
