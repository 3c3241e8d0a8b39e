// lorentz-roots: staged enumeration of rank-3 Lorentzian simple root systems
// with timelike Weyl vector.

#include "lorentz/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace lorentz;

namespace {

struct Options {
  std::string out = "out";
  int jobs = 1;
  int max_iterations = 64;
  std::string format = "text";
  std::string resume;
  std::string dot;
  std::string against;
};

PipelineConfig config_of(const Options& o) {
  PipelineConfig c;
  c.out_dir = o.out;
  c.jobs = o.jobs;
  c.max_iterations = o.max_iterations;
  c.format = o.format;
  if (!o.resume.empty()) c.resume = fs::path(o.resume);
  if (!o.dot.empty()) c.dot_dir = fs::path(o.dot);
  return c;
}

RunStats load_stats(const fs::path& out) {
  const fs::path path = out / "stats.json";
  if (!fs::exists(path)) return {};
  std::ifstream in(path);
  return run_stats_from_json(Json::parse(in));
}

void save_stats(const fs::path& out, const RunStats& s) {
  write_text(out / "stats.json", to_json(s).dump(2) + "\n");
}

int print_verify(const RunStats& s, const std::string& format) {
  const auto rows = verify(s);
  std::cout << format_verify(rows, format);
  return all_binding_pass(rows) ? 0 : 1;
}

int cmd_seeds(const Options& o) {
  const auto seeds = enumerate_seeds();
  write_seeds(fs::path(o.out) / "seeds.jsonl", seeds);
  std::cerr << seeds.size() << " seeds\n";
  return 0;
}

int cmd_enumerate(const Options& o) {
  const PipelineConfig c = config_of(o);
  const fs::path chains_dir = c.out_dir / "chains";
  RunStats s;
  int status = 0;
  try {
    if (c.resume)
      resume_enumerate(*c.resume, chains_dir, c, s);
    else
      run_enumerate(read_seeds(c.out_dir / "seeds.jsonl"), chains_dir, c, s);
  } catch (const IterationLimitExceeded& e) {
    std::cerr << e.what() << "\n";
    status = 2;
  }
  for (const IterationStats& it : s.iterations)
    std::cerr << "iteration " << it.iteration << ": " << it.closed << " closed, " << it.extensions
              << " extensions\n";
  save_stats(c.out_dir, s);
  return status;
}

int cmd_dedup(const Options& o) {
  const fs::path out = o.out;
  const auto records = records_from_chains(read_closed_chains(out / "chains"), o.jobs);
  write_records(out / "records.jsonl", records);
  std::cerr << records.size() << " root systems\n";
  return 0;
}

int cmd_analyze(const Options& o) {
  const PipelineConfig c = config_of(o);
  RunStats s = load_stats(c.out_dir);
  run_analyze(read_records(c.out_dir / "records.jsonl"), c.out_dir / "analysis.jsonl",
              c.out_dir / "summary.csv", c.dot_dir, c.jobs, s);
  save_stats(c.out_dir, s);
  return 0;
}

int cmd_verify(const Options& o) {
  const fs::path out = o.out;
  int status = print_verify(load_stats(out), o.format);
  if (!o.against.empty()) {
    const AgainstReport r = compare_against_file(read_records(out / "records.jsonl"), o.against);
    std::cout << "against " << o.against << ": reference " << r.reference << ", matched " << r.matched
              << ", missing " << r.missing << ", extra " << r.extra << "\n";
    if (r.missing != 0 || r.extra != 0) status = 1;
  }
  return status;
}

int cmd_run_all(const Options& o) {
  RunStats s;
  try {
    const int status = run_all(config_of(o), &s);
    print_verify(s, o.format);
    return status;
  } catch (const IterationLimitExceeded& e) {
    std::cerr << e.what() << "\n";
    print_verify(s, o.format);
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-3 Lorentzian simple root systems with timelike Weyl vector"};
  app.require_subcommand(1);
  Options o;

  auto out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output directory")->capture_default_str(); };
  auto jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
  };

  auto* seeds = app.add_subcommand("seeds", "Enumerate seed Gram matrices");
  out(seeds);

  auto* enumerate = app.add_subcommand("enumerate", "Build and saturate chains from seeds.jsonl");
  out(enumerate);
  jobs(enumerate);
  enumerate->add_option("--max-iterations", o.max_iterations, "Saturation pass limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  enumerate->add_option("--resume", o.resume, "Continue from a chains/iter_XX.jsonl checkpoint")
      ->check(CLI::ExistingFile);

  auto* dedup = app.add_subcommand("dedup", "Canonicalize closed chains into records.jsonl");
  out(dedup);
  jobs(dedup);

  auto* analyze = app.add_subcommand("analyze", "Analyze records.jsonl");
  out(analyze);
  jobs(analyze);
  analyze->add_option("--dot", o.dot, "Directory for Dynkin diagrams");

  auto* verify_cmd = app.add_subcommand("verify", "Compare stats.json with the published counts");
  out(verify_cmd);
  format(verify_cmd);
  verify_cmd->add_option("--against-file", o.against, "JSONL of reference Gram matrices")
      ->check(CLI::ExistingFile);

  auto* run_all_cmd = app.add_subcommand("run-all", "Every stage, then verify");
  out(run_all_cmd);
  jobs(run_all_cmd);
  format(run_all_cmd);
  run_all_cmd->add_option("--max-iterations", o.max_iterations, "Saturation pass limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_all_cmd->add_option("--resume", o.resume, "Continue from a chains/iter_XX.jsonl checkpoint")
      ->check(CLI::ExistingFile);
  run_all_cmd->add_option("--dot", o.dot, "Directory for Dynkin diagrams");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*seeds) return cmd_seeds(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*dedup) return cmd_dedup(o);
    if (*analyze) return cmd_analyze(o);
    if (*verify_cmd) return cmd_verify(o);
    return cmd_run_all(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
