#include "tabhash/bench/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "tabhash/bench/experiment_file.hpp"
#include "tabhash/error.hpp"
#include "tabhash/golden.hpp"
#include "tabhash/lab/baseline.hpp"
#include "tabhash/lab/groups.hpp"
#include "tabhash/lab/independence.hpp"
#include "tabhash/lab/report_json.hpp"
#include "tabhash/sketch.hpp"

namespace tabhash::bench {

using nlohmann::json;

namespace {

ExperimentFile load(const CommandOptions& opts) {
  if (!opts.config) throw ConfigError("--config is required");
  return read_experiment_file(*opts.config);
}

template <class T>
const T& section(const std::optional<T>& s, const char* name) {
  if (!s) throw ConfigError(std::string("config has no '") + name + "' section");
  return *s;
}

// Writes to the --out path, else the section's path, else `fallback`.
void emit(const CommandOptions& opts, const std::optional<std::string>& configured,
          std::ostream& fallback, const std::string& text) {
  const auto& path = opts.out ? opts.out : configured;
  if (!path) {
    fallback << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file " + *path);
  f << text;
  if (!f) throw ConfigError("failed writing " + *path);
}

OutputFormat format_or(const CommandOptions& opts, OutputFormat fallback) {
  return opts.format.value_or(fallback);
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// Runs jobs [0, count) on up to `threads` workers.
template <class Job>
void parallel_for(std::size_t count, unsigned threads, const Job& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < threads; ++w)
    workers.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

double exact_jaccard(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::size_t inter = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("unknown format '" + name + "' (expected csv, json)");
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_bias_csv(std::ostream& out, const json& config, const std::vector<BiasRow>& rows) {
  out << "# config=" << config.dump() << '\n';
  out << "family,generator,n,trials,p_hat,ci_lo,ci_hi,implied_bias_lo,implied_bias_hi,tie_count\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << row.family << ',' << row.generator << ',' << r.n << ',' << r.trials << ',' << format_number(r.p_hat)
        << ',' << format_number(r.ci.lo) << ',' << format_number(r.ci.hi) << ','
        << format_number(r.implied_bias_interval.lo) << ',' << format_number(r.implied_bias_interval.hi) << ','
        << r.tie_count << '\n';
  }
}

int cmd_bias(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  BiasSection s = section(load(opts).bias, "bias");
  if (opts.seed) s.base_seed = *opts.seed;

  std::vector<lab::BiasExperimentConfig> cells;
  for (const auto& f : s.families)
    for (auto g : s.generators)
      for (std::size_t n : s.n_values) {
        lab::BiasExperimentConfig c{s.spec, f, n, g, s.trials, s.base_seed, s.confidence};
        c.validate();
        cells.push_back(c);
      }

  std::vector<BiasRow> rows(cells.size());
  const unsigned inner = cells.size() == 1 ? opts.threads : 1;
  parallel_for(cells.size(), opts.threads, [&](std::size_t i) {
    rows[i] = {cells[i].family.name(), lab::generator_name(cells[i].generator),
               lab::estimate_min_probability(cells[i], inner)};
  });
  std::sort(rows.begin(), rows.end(), [](const BiasRow& a, const BiasRow& b) {
    return std::tie(a.family, a.generator, a.report.n) < std::tie(b.family, b.generator, b.report.n);
  });
  for (const auto& row : rows)
    for (const auto& w : row.report.warnings)
      err << "warning: " << row.family << ' ' << row.generator << " n=" << row.report.n << ": " << w << '\n';

  const json config = to_json(s);
  std::ostringstream text;
  if (format_or(opts, OutputFormat::kCsv) == OutputFormat::kCsv) {
    write_bias_csv(text, config, rows);
  } else {
    json results = json::array();
    for (const auto& row : rows) {
      json r = lab::to_json(row.report);
      r["generator"] = row.generator;
      results.push_back(r);
    }
    text << json_text({{"config", config}, {"results", results}});
  }
  emit(opts, s.out, out, text.str());
  return kExitOk;
}

int cmd_similarity(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  SimilaritySection s = section(load(opts).similarity, "similarity");
  if (opts.seed) s.base_seed = *opts.seed;

  const std::filesystem::path dir(s.corpus);
  if (!std::filesystem::is_directory(dir)) throw ConfigError("corpus " + s.corpus + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<std::string> names;
  std::vector<std::vector<std::uint64_t>> sets;
  for (const auto& p : files) {
    auto keys = shingle_keys(read_file(p), s.shingle, s.spec);
    const std::string name = p.filename().string();
    if (keys.empty()) {
      err << "warning: skipping empty document " << name << '\n';
      continue;
    }
    names.push_back(name);
    sets.push_back(std::move(keys));
  }
  if (sets.size() < 2) throw ConfigError("similarity needs at least two non-empty documents");

  const std::vector<std::uint64_t> seeds = sketch_seeds(s.base_seed, s.q);
  struct Row {
    std::size_t a, b;
    std::string kind;
    double estimate, exact;
  };
  std::vector<Row> rows;
  for (const auto& kind : s.sketches) {
    if (kind == "kx-minwise") {
      std::vector<KxMinwiseSketch> sk(sets.size());
      parallel_for(sets.size(), opts.threads, [&](std::size_t i) { sk[i] = kx_sketch(s.family, s.spec, seeds, sets[i]); });
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
          rows.push_back({i, j, kind, kx_jaccard(sk[i], sk[j]), exact_jaccard(sets[i], sets[j])});
    } else {
      const HashFunction h = HashFunction::make(s.family, s.spec, seeds.front(), Storage::kSeeded);
      std::vector<BottomQSketch> sk(sets.size());
      parallel_for(sets.size(), opts.threads, [&](std::size_t i) { sk[i] = bottomq_sketch(h, sets[i], s.q); });
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
          rows.push_back({i, j, kind, bottomq_jaccard(sk[i], sk[j]), exact_jaccard(sets[i], sets[j])});
    }
  }
  std::sort(rows.begin(), rows.end(), [&](const Row& x, const Row& y) {
    return std::tie(names[x.a], names[x.b], x.kind) < std::tie(names[y.a], names[y.b], y.kind);
  });

  json config = to_json(s);
  json docs = json::array();
  for (std::size_t i = 0; i < names.size(); ++i) docs.push_back({{"name", names[i]}, {"shingles", sets[i].size()}});
  std::ostringstream text;
  if (format_or(opts, OutputFormat::kCsv) == OutputFormat::kCsv) {
    text << "# config=" << config.dump() << '\n';
    text << "doc_a,doc_b,sketch,q,estimate,exact,abs_error\n";
    for (const auto& r : rows)
      text << names[r.a] << ',' << names[r.b] << ',' << r.kind << ',' << s.q << ',' << format_number(r.estimate)
           << ',' << format_number(r.exact) << ',' << format_number(std::abs(r.estimate - r.exact)) << '\n';
  } else {
    json results = json::array();
    for (const auto& r : rows)
      results.push_back({{"doc_a", names[r.a]},
                         {"doc_b", names[r.b]},
                         {"sketch", r.kind},
                         {"q", s.q},
                         {"estimate", r.estimate},
                         {"exact", r.exact},
                         {"abs_error", std::abs(r.estimate - r.exact)}});
    text << json_text({{"config", config}, {"documents", docs}, {"results", results}});
  }
  emit(opts, s.out, out, text.str());
  return kExitOk;
}

int cmd_verify_vectors(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  std::string path;
  if (opts.input)
    path = *opts.input;
  else
    path = section(load(opts).verify_vectors, "verify_vectors").file;
  const GoldenFile file = read_golden(path);
  const GoldenVerdict verdict = verify_golden(file);
  if (!verdict.ok()) {
    out << "FAIL " << path << " line " << verdict.first_mismatch->line << ": " << verdict.first_mismatch->message
        << '\n';
    return kExitFailure;
  }
  if (file.vectors.empty()) err << "warning: " << path << " has no vectors; passing vacuously\n";
  out << "PASS " << path << ": " << verdict.checked << " vectors, " << file.generator_checks.size()
      << " generator checks (" << file.spec.to_string() << ", seed " << file.seed << ")\n";
  return kExitOk;
}

int cmd_groups(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  GroupsSection s = section(load(opts).groups, "groups");
  if (opts.seed) s.base_seed = *opts.seed;
  if (format_or(opts, OutputFormat::kJson) != OutputFormat::kJson)
    throw ConfigError("groups writes JSON only");

  const lab::QuerySet qs = lab::generate_set(s.generator, s.spec, s.n, lab::set_seed(s.base_seed));
  const std::uint64_t seed = lab::trial_seed(s.base_seed, 0);
  const SeededTwisted twisted(s.spec, seed);

  json result{{"config", to_json(s)}};
  result["group_stats"] = lab::to_json(lab::twisted_group_stats(twisted, qs.members));
  if (s.bins != 0) {
    const HashFunction h = HashFunction::make_for(s.occupancy_family, s.spec, seed, qs.members.size());
    result["occupancy"] = lab::to_json(lab::bin_occupancy(h, qs.members, s.bins));
    result["occupancy_per_group"] = lab::to_json(lab::bin_occupancy_per_group(twisted, qs.members, s.bins));
  }

  lab::SweepConfig group_cfg{s.spec, FamilySpec{Family::kTwisted}, s.n, s.generator, s.seeds, s.base_seed};
  lab::SweepConfig occ_cfg{s.spec, s.occupancy_family, s.n, s.generator, s.seeds, s.base_seed, s.bins};
  if (s.seeds != 0) {
    result["group_sweep"] = lab::to_json(lab::group_size_sweep(group_cfg));
    if (s.bins != 0) result["occupancy_sweep"] = lab::to_json(lab::occupancy_sweep(occ_cfg));
  }

  int code = kExitOk;
  if (s.baseline) {
    const lab::Baseline baseline = lab::read_baseline(*s.baseline);
    json checks = json::array();
    auto matches = [](const lab::ReferenceExperiment& ref, const lab::SweepConfig& cfg) {
      json mine = lab::to_json(cfg);
      mine.erase("base_seed");
      return ref.config.at("config") == mine;
    };
    for (const auto& [name, cfg] : {std::pair{"group-size", group_cfg}, std::pair{"bin-occupancy", occ_cfg}}) {
      const auto& ref = lab::reference_experiment(name);
      if (s.seeds == 0 || !matches(ref, cfg)) continue;
      const lab::RegressionCheck c = lab::check_reference(ref, baseline, s.base_seed, opts.threads);
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"observed", c.observed}, {"bound", c.bound},
                        {"detail", c.detail}});
      if (!c.pass) {
        err << "baseline check " << c.name << " failed: " << c.detail << '\n';
        code = kExitFailure;
      }
    }
    if (checks.empty())
      throw ConfigError("groups: 'baseline' given but the section matches no reference experiment");
    result["baseline_checks"] = checks;
  }
  emit(opts, s.out, out, json_text(result));
  return code;
}

int cmd_independence(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  const IndependenceSection s = section(load(opts).independence, "independence");
  const lab::IndependenceReport r =
      s.keys.empty() ? lab::exhaustive_independence_check(s.family, s.spec, s.k, s.prime)
                     : lab::exhaustive_tuple_check(s.family, s.spec, s.keys, s.prime);
  std::ostringstream text;
  if (format_or(opts, OutputFormat::kJson) == OutputFormat::kJson) {
    text << json_text({{"config", to_json(s)}, {"result", lab::to_json(r)}});
  } else {
    text << "# config=" << to_json(s).dump() << '\n';
    text << "family,k,fills,range,tuples_checked,uniform,xor_constant\n";
    text << r.family.name() << ',' << r.k << ',' << r.fills << ',' << r.range << ',' << r.tuples_checked << ','
         << (r.uniform ? "true" : "false") << ','
         << (r.witness && r.witness->xor_constant ? "true" : "false") << '\n';
  }
  emit(opts, s.out, out, text.str());
  if (s.expect_uniform && *s.expect_uniform != r.uniform) {
    err << "independence: expected " << (*s.expect_uniform ? "uniform" : "a witness") << ", got "
        << (r.uniform ? "uniform" : "a witness") << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_calibrate(const CalibrateOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.out.has_value() == opts.check.has_value())
    throw ConfigError("calibrate needs exactly one of --out and --check");
  std::vector<const lab::ReferenceExperiment*> refs;
  for (const auto& r : lab::reference_experiments())
    if (opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), r.name) != opts.only.end())
      refs.push_back(&r);
  for (const auto& name : opts.only) (void)lab::reference_experiment(name);

  if (opts.out) {
    lab::Baseline b;
    if (std::filesystem::exists(*opts.out)) b = lab::read_baseline(*opts.out);
    for (const auto* r : refs) {
      b.put({r->name, r->config, opts.seed, r->fit(opts.seed, opts.threads)});
      out << "calibrated " << r->name;
      for (const auto& [k, v] : b.at(r->config).constants) out << ' ' << k << '=' << format_number(v);
      out << '\n';
    }
    lab::write_baseline(*opts.out, b);
    return kExitOk;
  }

  const lab::Baseline b = lab::read_baseline(*opts.check);
  int code = kExitOk;
  for (const auto* r : refs) {
    const lab::RegressionCheck c = lab::check_reference(*r, b, opts.seed, opts.threads);
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    if (!c.pass) code = kExitFailure;
  }
  if (code != kExitOk) err << "baseline regression failed\n";
  return code;
}

}  // namespace tabhash::bench
