#include <iostream>

#include "CLI11.hpp"
#include "cli_common.hpp"
#include "normpack/harness/suite.hpp"

using namespace normpack;

int main(int argc, char** argv) {
  CLI::App app{"Statistical and exact checks of the geometric inequalities"};
  std::string which, level = "fast", format = "jsonl";
  std::uint64_t seed = 1;
  unsigned workers = 1;
  app.add_option("check", which, "all | schmuck | logconcavity | petty | rs | minkowski | poisson")
      ->required()
      ->check(CLI::IsMember({"all", "schmuck", "logconcavity", "petty", "rs", "minkowski", "poisson"}));
  app.add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--workers", workers, "Worker threads");
  app.add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  CLI11_PARSE(app, argc, argv);

  return cli::guarded([&]() -> int {
    const auto rep = harness::verify_suite(which, harness::parse_level(level), seed, workers);
    if (format == "csv")
      volumetrics::write_csv(std::cout, rep.records);
    else
      volumetrics::write_jsonl(std::cout, rep.records);
    std::cerr << rep.records.size() << " records, " << rep.violations << " with violations, " << rep.inconclusive
              << " inconclusive\n";
    return rep.passed() ? 0 : 1;
  });
}
