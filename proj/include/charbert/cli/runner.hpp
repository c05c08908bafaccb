#pragma once

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ops.hpp"

namespace charbert::cli {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_cap = 2, exit_schema = 3 };

struct CheckOutcome {
  std::string op;
  std::string note;
  bool passed = false;
  json result;
  std::vector<std::string> mismatches;
  std::optional<std::string> error;  // kind and message of an unexpected error
};

struct FixtureOutcome {
  std::string name;
  bool passed = true;
  double seconds = 0;
  std::vector<CheckOutcome> checks;
};

template <CoefficientDomain D>
CheckOutcome run_check(const Context<D>& ctx, const CheckSpec& spec) {
  const auto& table = op_table<D>();
  auto op = table.find(spec.op);
  if (op == table.end()) throw SchemaError("unknown op '" + spec.op + "'");
  CheckOutcome out{spec.op, spec.note, false, json::object(), {}, std::nullopt};
  Expectations x(spec.expect);
  std::optional<std::string> want_error;
  if (x.has("error")) {
    if (spec.expect.size() != 1) throw SchemaError(spec.op + ": an expected error excludes other expectations");
    want_error = x.at("error").get<std::string>();
  }
  auto R = ctx.ring(spec.ring);
  try {
    out.result = op->second(OpCall<D>{ctx, R, spec.args, x});
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    std::string kind = error_kind(e);
    if (want_error && *want_error == kind) {
      out.passed = true;
      out.result = {{"error", kind}, {"message", e.what()}};
      return out;
    }
    if (dynamic_cast<const CapExceeded*>(&e)) throw;
    if (dynamic_cast<const ParseError*>(&e)) throw SchemaError(spec.op + ": " + e.what());
    out.error = kind + ": " + e.what();
    return out;
  }
  if (want_error) {
    out.mismatches.push_back("expected a " + *want_error + " error, got " + out.result.dump());
    return out;
  }
  x.finish();
  out.mismatches = x.mismatches();
  out.passed = out.mismatches.empty();
  return out;
}

// Ring construction failures are document errors.
template <CoefficientDomain D>
Context<D> make_context(const Setting& s, D domain, const Options& opt) {
  try {
    return Context<D>(s, std::move(domain), opt);
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("ring: ") + e.what());
  }
}

inline FixtureOutcome run_fixture(const Fixture& f, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  FixtureOutcome out{f.name, true, 0, {}};
  with_domain(f.setting.ring, [&](auto domain) {
    auto ctx = make_context(f.setting, domain, opt);
    for (const auto& c : f.checks) {
      out.checks.push_back(run_check(ctx, c));
      out.passed = out.passed && out.checks.back().passed;
    }
  });
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline bool fixture_selected(const Fixture& f, const std::string& filter) {
  if (filter.empty() || f.name.find(filter) != std::string::npos) return true;
  for (const auto& t : f.tags)
    if (t == filter) return true;
  return false;
}

inline json to_json(const CheckOutcome& c) {
  json j = {{"op", c.op}, {"passed", c.passed}};
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.mismatches.empty()) j["mismatches"] = c.mismatches;
  if (c.error) j["error"] = *c.error;
  j["result"] = c.result;
  return j;
}

inline json to_json(const FixtureOutcome& f) {
  json checks = json::array();
  for (const auto& c : f.checks) checks.push_back(to_json(c));
  return {{"name", f.name}, {"passed", f.passed}, {"seconds", f.seconds}, {"checks", checks}};
}

inline std::string failure_lines(const CheckOutcome& c, std::size_t index) {
  std::string head = "  check " + std::to_string(index + 1) + " " + c.op + (c.note.empty() ? "" : " (" + c.note + ")");
  std::string out;
  if (c.error) out += head + ": " + *c.error + "\n";
  for (const auto& m : c.mismatches) out += head + ": " + m + "\n";
  return out;
}

struct SuiteReport {
  std::vector<FixtureOutcome> fixtures;
  int exit_code = exit_ok;

  json to_json() const {
    json fx = json::array();
    std::size_t passed = 0;
    for (const auto& f : fixtures) {
      fx.push_back(cli::to_json(f));
      passed += f.passed;
    }
    return {{"command", "verify-paper"},
            {"fixtures", fx},
            {"summary", {{"fixtures", fixtures.size()}, {"passed", passed}, {"failed", fixtures.size() - passed}}},
            {"exit", exit_code}};
  }

  std::string to_text() const {
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& f : fixtures) {
      char secs[32];
      std::snprintf(secs, sizeof secs, "%.2f s", f.seconds);
      os << (f.passed ? "PASS " : "FAIL ") << f.name << "  (" << f.checks.size() << " checks, " << secs << ")\n";
      if (!f.passed)
        for (std::size_t i = 0; i < f.checks.size(); ++i)
          if (!f.checks[i].passed) os << failure_lines(f.checks[i], i);
      passed += f.passed;
    }
    os << "summary: " << fixtures.size() << " fixtures, " << passed << " passed, " << fixtures.size() - passed
       << " failed\n";
    return os.str();
  }
};

inline SuiteReport verify_paper(const std::vector<Fixture>& fixtures, const std::string& filter, const Options& opt) {
  SuiteReport r;
  for (const auto& f : fixtures) {
    if (!fixture_selected(f, filter)) continue;
    r.fixtures.push_back(run_fixture(f, opt));
    if (!r.fixtures.back().passed) r.exit_code = exit_check_failed;
  }
  return r;
}

// Subcommand name -> the operation a job runs.
inline std::string job_op(const std::string& command) {
  if (command == "char") return "char";
  if (command == "control") return "control-check";
  if (command == "symbolic-power") return "symbolic-power";
  if (command == "bertini-search") return "enumerate-sections";
  throw SchemaError("unknown command '" + command + "'");
}

struct JobReport {
  std::string command;
  CheckOutcome outcome;
  int exit_code = exit_ok;

  json to_json() const {
    json j = {{"command", command}, {"passed", outcome.passed}};
    if (!outcome.mismatches.empty()) j["mismatches"] = outcome.mismatches;
    if (outcome.error) j["error"] = *outcome.error;
    j["result"] = outcome.result;
    j["exit"] = exit_code;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& [k, v] : outcome.result.items()) {
      if (k == "rows" || k == "elements" || k == "checks") continue;
      os << k << ": " << scalar(v) << "\n";
    }
    if (outcome.result.contains("rows")) {
      os << "point\tverdict\tfailing\n";
      for (const auto& r : outcome.result["rows"]) {
        std::string failing;
        for (const auto& n : r["failing"]) failing += (failing.empty() ? "" : ", ") + n.get<std::string>();
        os << r["point"].get<std::string>() << "\t" << r["verdict"].get<std::string>() << "\t"
           << (failing.empty() ? "-" : failing) << "\n";
      }
    }
    if (outcome.result.contains("elements")) {
      os << "x\tchecked\tincluded\n";
      for (const auto& e : outcome.result["elements"])
        os << e["x"].get<std::string>() << "\t" << e["checked"].dump() << "\t"
           << (e.contains("included") ? e["included"].dump() : "- (" + e["reason"].get<std::string>() + ")") << "\n";
    }
    if (outcome.error) os << "error: " << *outcome.error << "\n";
    for (const auto& m : outcome.mismatches) os << "mismatch: " << m << "\n";
    return os.str();
  }
};

inline JobReport run_job(const Job& job, const std::string& command, const Options& opt) {
  if (job.command != command)
    throw SchemaError("job is for '" + job.command + "' but the '" + command + "' subcommand was invoked");
  CheckSpec spec{job_op(command), std::nullopt, job.args, job.expect, ""};
  JobReport r;
  r.command = command;
  with_domain(job.setting.ring, [&](auto domain) {
    auto ctx = make_context(job.setting, domain, opt);
    r.outcome = run_check(ctx, spec);
  });
  r.exit_code = r.outcome.passed || (!r.outcome.error && r.outcome.mismatches.empty()) ? exit_ok : exit_check_failed;
  return r;
}

}  // namespace charbert::cli
