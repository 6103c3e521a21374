// Prints one PASS/FAIL line per acceptance criterion and exits non-zero when
// any criterion fails. Usage: radnls_acceptance [--work <dir>] [ids...]

#include "radnls/acceptance.hpp"
#include "radnls/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string work = "acceptance_work";
  std::vector<int> ids;
  std::string json_out;
  app.add_option("--work", work, "directory for scenario outputs");
  app.add_option("--json", json_out, "also write all measurements to this file");
  app.add_option("ids", ids, "criterion ids (default: all)");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty()) ids = radnls::acceptance::all_criteria();

  int failures = 0;
  radnls::Json all = radnls::Json::array();
  for (int id : ids) {
    const auto start = std::chrono::steady_clock::now();
    const auto o = radnls::acceptance::run_criterion(id, work);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << radnls::acceptance::format_line(o) << "  (" << static_cast<int>(secs + 0.5)
              << " s)" << std::endl;
    failures += !o.pass;
    radnls::Json j;
    j["id"] = o.id;
    j["name"] = o.name;
    j["pass"] = o.pass;
    j["summary"] = o.summary;
    j["data"] = o.data;
    all.push_back(j);
  }
  if (!json_out.empty()) radnls::write_file(json_out, radnls::dump_json(all) + "\n");
  std::cout << (ids.size() - failures) << "/" << ids.size() << " criteria pass" << std::endl;
  return failures ? 1 : 0;
}
