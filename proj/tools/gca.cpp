// gca: invariants of the generalized Cuntz algebra attached to fusion
// data. Subcommands: analyze, catalog, verify. Exit codes: 0 all checks
// pass, 1 verification failure, 2 input error.

#include "CLI11.hpp"

#include "gca/analysis.hpp"
#include "gca/document.hpp"
#include "gca/pathalg.hpp"
#include "gca/spectral.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gca::DocumentError("cannot open \"" + path + "\"");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_analyze(const std::string& path, const gca::AnalysisOptions& options,
                const std::string& format) {
  const auto doc = gca::parse_document(slurp(path));
  const auto report = gca::analyze(doc, options);
  if (format == "machine")
    std::cout << gca::report_to_json(report).dump(2) << "\n";
  else
    std::cout << gca::report_to_table(report);
  return report.passed ? 0 : 1;
}

int run_verify(const std::string& path, const gca::AnalysisOptions& options) {
  const auto doc = gca::parse_document(slurp(path));
  const auto checks = gca::run_verification(doc, options);
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    std::cout << "[" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "  (residual "
              << c.residual << "; " << c.detail << ")\n";
  }
  std::cout << (all ? "verification passed" : "verification FAILED") << "\n";
  return all ? 0 : 1;
}

int run_catalog(const std::string& name) {
  if (name.empty()) {
    for (const auto& entry : gca::catalog_names())
      std::cout << entry.name << "\t" << entry.description << "\n";
    return 0;
  }
  std::cout << gca::emit_document(gca::catalog_get(name)).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariants of generalized Cuntz algebras from fusion data"};
  app.require_subcommand(1);

  gca::AnalysisOptions options;
  std::string file;
  std::string format = "table";
  std::string catalog_name;

  auto* analyze = app.add_subcommand("analyze", "full analysis report for one document");
  analyze->add_option("file", file, "input document (JSON)")->required();
  analyze->add_option("--order", options.order, "series truncation order")
      ->capture_default_str();
  analyze->add_option("--tolerance", options.tolerance, "spectral tolerance")
      ->capture_default_str();
  analyze->add_option("--max-path-len", options.max_path_length, "path enumeration cap")
      ->capture_default_str();
  analyze->add_option("--format", format, "table|machine")
      ->check(CLI::IsMember({"table", "machine"}))
      ->capture_default_str();

  auto* catalog = app.add_subcommand("catalog", "list built-in examples or print one");
  catalog->add_option("name", catalog_name, "catalog entry to print");

  auto* verify = app.add_subcommand("verify", "run only the property suite");
  verify->add_option("file", file, "input document (JSON)")->required();
  verify->add_option("--order", options.order, "series truncation order")
      ->capture_default_str();
  verify->add_option("--tolerance", options.tolerance, "spectral tolerance")
      ->capture_default_str();
  verify->add_option("--max-path-len", options.max_path_length, "path enumeration cap")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(file, options, format);
    if (verify->parsed()) return run_verify(file, options);
    return run_catalog(catalog_name);
  } catch (const gca::DocumentError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const gca::PathBudgetError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const gca::NonConvergence& e) {
    std::cerr << "spectral failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
