#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "wedgelab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wedgelab: matrix realizations of causal symmetric Lie "
               "algebras with wedge-domain verification"};
  app.require_subcommand(1);

  std::string family;
  CLI::App* cat = app.add_subcommand(
      "catalog", "print the classification table with recomputed invariants");
  cat->add_option("--family", family, "complex | cayley | split | nonsplit");

  std::string suite, config_path;
  CLI::App* ver = app.add_subcommand(
      "verify", "run a verification suite and print its JSON report");
  ver->add_option("--suite", suite,
                  "linop | liealg | roots | polar | quadric | wedge | all")
      ->required();
  ver->add_option("--config", config_path,
                  "flat key=value options: n, seed, tol_scale, out");

  std::string spec, domain, out;
  int n = 0;
  std::uint64_t seed = 2026;
  CLI::App* smp = app.add_subcommand(
      "sample", "write a deterministic CSV point dump");
  smp->add_option("--spec", spec, "wedge spec id (see 'catalog')")->required();
  smp->add_option("--domain", domain, "positivity | polar | kms | tube")
      ->required();
  smp->add_option("--n", n, "number of rows")->required();
  smp->add_option("--seed", seed, "sampler seed")->required();
  smp->add_option("--out", out, "output path ('-' writes to stdout)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cat->parsed()) return wl::run_catalog(std::cout, family);
    if (ver->parsed()) {
      wl::RunConfig cfg;
      if (!config_path.empty()) cfg = wl::parse_config_file(config_path);
      return wl::run_verify(std::cout, suite, cfg);
    }
    return wl::run_sample(std::cout, spec, domain, n, seed,
                          out == "-" ? "" : out);
  } catch (const wl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return 1;
  }
}
