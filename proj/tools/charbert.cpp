#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "charbert/cli/runner.hpp"

using namespace charbert;
using namespace charbert::cli;

namespace {

struct Invocation {
  std::string input;
  std::string format = "text";
  std::string filter;
  Options options;
  unsigned precision = 0;
};

void add_common(CLI::App* sub, Invocation& inv, bool input_required) {
  auto* in = sub->add_option("--input", inv.input, "job or fixture file (verify-paper: file or directory)");
  if (input_required) in->required()->check(CLI::ExistingFile);
  else in->check(CLI::ExistingPath);
  sub->add_option("--format", inv.format, "output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--jobs", inv.options.jobs, "parallel workers")->check(CLI::Range(1u, 256u));
  sub->add_option("--precision", inv.precision, "Teichmüller precision N")->check(CLI::Range(1u, 64u));
  sub->add_option("--cap-points", inv.options.cap_points, "enumeration cap")->check(CLI::PositiveNumber);
  sub->add_option("--cap-valuation", inv.options.cap_valuation, "valuation search cap")->check(CLI::PositiveNumber);
}

template <class Report>
int emit(const Report& r, const std::string& format) {
  if (format == "json") std::cout << r.to_json().dump(2) << "\n";
  else std::cout << r.to_text();
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic ideals and local Bertini sections"};
  app.require_subcommand(1);
  Invocation inv;

  auto* verify = app.add_subcommand("verify-paper", "run the bundled worked-example fixtures");
  add_common(verify, inv, false);
  verify->add_option("--filter", inv.filter, "fixture name substring or tag");

  const char* commands[][2] = {{"bertini-search", "enumerate and certify hyperplane sections"},
                               {"char", "characteristic ideal of a module"},
                               {"control", "compare specialized characteristic ideals over a family"},
                               {"symbolic-power", "symbolic power of a prime"}};
  std::vector<CLI::App*> job_commands;
  for (auto& [name, help] : commands) {
    job_commands.push_back(app.add_subcommand(name, help));
    add_common(job_commands.back(), inv, true);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_schema;
  }
  if (inv.precision) inv.options.precision = inv.precision;

  try {
    if (verify->parsed()) {
      std::string path = inv.input.empty() ? std::string(CHARBERT_FIXTURE_DIR) + "/paper" : inv.input;
      auto report = verify_paper(load_fixtures(path), inv.filter, inv.options);
      if (report.fixtures.empty()) throw SchemaError("no fixture matches filter '" + inv.filter + "'");
      return emit(report, inv.format);
    }
    for (auto* sub : job_commands)
      if (sub->parsed()) return emit(run_job(job_from_json(read_json(inv.input)), sub->get_name(), inv.options), inv.format);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return exit_schema;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return exit_cap;
  } catch (const Error& e) {
    std::cerr << error_kind(e) << ": " << e.what() << "\n";
    return exit_check_failed;
  }
  return exit_schema;
}
