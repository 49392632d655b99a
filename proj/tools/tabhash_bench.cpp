// tabhash-bench: experiments, sketches and test-vector checks from the shell.
//
//   tabhash-bench bias --config exp.json [--out rows.csv] [--seed N] [--threads N] [--format csv|json]
//   tabhash-bench similarity --config exp.json
//   tabhash-bench verify-vectors vectors.txt
//   tabhash-bench groups --config exp.json
//   tabhash-bench independence --config exp.json
//   tabhash-bench calibrate --out baseline.json [--seed N] [--only NAME]...
//   tabhash-bench calibrate --check baseline.json [--seed N]
//
// Exit codes: 0 success, 1 a verification failed, 2 usage or config error.

#include <CLI11.hpp>

#include <iostream>

#include "tabhash/bench/commands.hpp"
#include "tabhash/error.hpp"

namespace {

using tabhash::bench::CommandOptions;

struct Flags {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format;
  std::string input;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "experiment file (JSON)");
  cmd->add_option("--out", f.out, "output path (default: section 'out', else stdout)");
  cmd->add_option("--seed", f.seed, "override the section's base_seed");
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

CommandOptions to_options(CLI::App* cmd, const Flags& f) {
  CommandOptions o;
  if (cmd->count("--config")) o.config = f.config;
  if (cmd->count("--out")) o.out = f.out;
  if (cmd->count("--seed")) o.seed = f.seed;
  o.threads = f.threads;
  if (cmd->count("--format")) o.format = tabhash::bench::parse_format(f.format);
  if (!f.input.empty()) o.input = f.input;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabulation hashing experiments and checks"};
  app.require_subcommand(1);

  Flags flags;
  using Command = int (*)(const CommandOptions&, std::ostream&, std::ostream&);
  const std::pair<const char*, Command> commands[] = {
      {"bias", tabhash::bench::cmd_bias},
      {"similarity", tabhash::bench::cmd_similarity},
      {"verify-vectors", tabhash::bench::cmd_verify_vectors},
      {"groups", tabhash::bench::cmd_groups},
      {"independence", tabhash::bench::cmd_independence},
  };
  const char* help[] = {
      "estimate Pr[query is the minimum] per (family, generator, n) cell",
      "pairwise Jaccard estimates for a corpus of documents",
      "recompute a twisted-tabulation test-vector file",
      "twisted group sizes and bin occupancy",
      "exhaustive independence check of a tiny family",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* cmd = app.add_subcommand(commands[i].first, help[i]);
    add_common(cmd, flags);
    if (std::string(commands[i].first) == "verify-vectors")
      cmd->add_option("file", flags.input, "vector file (default: config section verify_vectors)");
    subs.push_back(cmd);
  }

  tabhash::bench::CalibrateOptions cal;
  std::string cal_out, cal_check;
  CLI::App* calibrate = app.add_subcommand("calibrate", "fit or check the baseline constants");
  calibrate->add_option("--out", cal_out, "write fitted constants to this baseline file");
  calibrate->add_option("--check", cal_check, "check fresh runs against this baseline file");
  calibrate->add_option("--seed", cal.seed, "seed of the runs");
  calibrate->add_option("--threads", cal.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  calibrate->add_option("--only", cal.only, "reference experiment names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tabhash::bench::kExitUsage;
  }

  try {
    if (calibrate->parsed()) {
      if (calibrate->count("--out")) cal.out = cal_out;
      if (calibrate->count("--check")) cal.check = cal_check;
      return tabhash::bench::cmd_calibrate(cal, std::cout, std::cerr);
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) return commands[i].second(to_options(subs[i], flags), std::cout, std::cerr);
  } catch (const tabhash::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return tabhash::bench::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tabhash::bench::kExitUsage;
  }
  return tabhash::bench::kExitUsage;
}
