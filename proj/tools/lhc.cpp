// lhc: verification runs for locally homogeneous connections.
//
//   lhc moduli --group PU2
//   lhc verify --suite all --seed 7
//   lhc descend --chern 1 --genus 2
//   lhc foliation --t 0.5 --t 1
//   lhc gauss-bonnet --a 1

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lhc/suites.hpp"

namespace {

lhc::TargetGroup parse_group(const std::string& s) {
  if (s == "S1") return lhc::TargetGroup::S1;
  if (s == "SU2") return lhc::TargetGroup::SU2;
  return lhc::TargetGroup::PU2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for homogeneous and locally homogeneous connections over H^2"};
  app.require_subcommand(1);
  app.fallthrough();

  lhc::RunConfig cfg;
  std::vector<std::string> tol_overrides;
  std::string out;
  std::string generators;
  app.add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--out", out, "Report path (default: $LHC_REPORT_DIR/lhc-<command>.json)");
  app.add_option("--tol", tol_overrides, "Tolerance override name=value (repeatable)");
  app.add_option("--samples", cfg.samples, "Sample points for lambda (>= 3)")->capture_default_str();
  app.add_option("--generators", generators, "JSON generator file replacing the built-in octagon group")
      ->check(CLI::ExistingFile);
  app.add_option("--genus", cfg.genus, "Genus of the surface")->capture_default_str();

  std::string group;
  auto* moduli = app.add_subcommand("moduli", "Classify invariant connections for a structure group");
  moduli->add_option("--group", group, "S1, SU2 or PU2 (default: all)")->check(CLI::IsMember({"S1", "SU2", "PU2"}));

  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", cfg.suite, "Suite name")
      ->check(CLI::IsMember(lhc::verify_suites()))
      ->capture_default_str();

  int chern = 0;
  double a_value = 0.0;
  auto* descend = app.add_subcommand("descend", "Descent obstruction for a Chern number or parameter a");
  auto* chern_opt = descend->add_option("--chern", chern, "Chern number c, giving a = c / (2(1 - g))");
  auto* a_opt = descend->add_option("--a", a_value, "Extension parameter a");
  chern_opt->excludes(a_opt);

  auto* foliation = app.add_subcommand("foliation", "Shape operators and restricted connections of H_t");
  foliation->add_option("--t", cfg.t_values, "Leaf parameter (repeatable)");

  double gb_a = 0.0;
  auto* gauss = app.add_subcommand("gauss-bonnet", "Chern integrals over the fundamental polygon");
  auto* gb_opt = gauss->add_option("--a", gb_a, "Extension parameter a (default: 1, -1/2, 1/3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lhc::kExitUsage;
  }

  for (int i = 1; i < argc; ++i) cfg.arguments.emplace_back(argv[i]);
  cfg.output_path = out;
  if (!generators.empty()) cfg.generators_path = generators;
  try {
    for (const auto& o : tol_overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw lhc::UsageError("--tol expects name=value, got '" + o + "'");
      cfg.tolerances.set(o.substr(0, eq), std::stod(o.substr(eq + 1)));
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return lhc::kExitUsage;
  }

  if (moduli->parsed()) {
    cfg.command = lhc::Command::moduli;
    if (!group.empty()) cfg.group = parse_group(group);
  } else if (verify->parsed()) {
    cfg.command = lhc::Command::verify;
  } else if (descend->parsed()) {
    cfg.command = lhc::Command::descend;
    if (chern_opt->count()) cfg.chern = chern;
    if (a_opt->count()) cfg.a = a_value;
  } else if (foliation->parsed()) {
    cfg.command = lhc::Command::foliation;
  } else {
    cfg.command = lhc::Command::gauss_bonnet;
    if (gb_opt->count()) cfg.a = gb_a;
  }

  const lhc::RunResult res = lhc::run(cfg);
  if (res.exit_code == lhc::kExitUsage) {
    std::cerr << "usage error: " << res.message << "\n";
    return res.exit_code;
  }
  for (const auto& r : res.report.rows) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << "[" << r.tag << "] " << r.name << ": actual " << r.actual
              << ", expected " << r.expected << " (" << lhc::to_string(r.relation) << " " << r.tolerance << ")\n";
  }
  if (!res.message.empty()) std::cerr << "error: " << res.message << "\n";
  if (!res.written_to.empty()) std::cout << "report: " << res.written_to << "\n";
  std::cout << (res.exit_code == lhc::kExitPass ? "all checks passed" : "some checks failed") << "\n";
  return res.exit_code;
}
