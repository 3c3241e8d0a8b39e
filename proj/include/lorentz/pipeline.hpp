#pragma once

// Stage drivers, checkpoint files and the verification table.

#include "lorentz/analyze.hpp"
#include "lorentz/canonical.hpp"
#include "lorentz/chains.hpp"
#include "lorentz/seeds.hpp"
#include "lorentz/serialize.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lorentz {

namespace fs = std::filesystem;

struct PipelineConfig {
  fs::path out_dir = "out";
  int jobs = 1;
  int max_iterations = 64;
  std::string format = "json";  // json | csv, for printed reports
  std::optional<fs::path> resume;  // a chains/iter_XX.jsonl checkpoint
  std::optional<fs::path> dot_dir;
};

/// Published counts. The final-iteration index counts repetitions after the
/// first pass over the initial chains.
struct ExpectedStats {
  std::size_t seeds = 317906;
  std::size_t pos_def = 5;
  std::size_t rank2 = 9;
  std::size_t weyl_survivors = 7713;
  std::size_t initial_chains = 61811;
  IterationStats iter1{1, 722, 10178};
  IterationStats iter2{2, 2446, 5354};
  int final_iteration = 21;
  std::size_t final_closed = 280;
  std::size_t final_extensions = 0;
  std::size_t total_closed = 21831;
  std::size_t final_systems = 994;
  int max_n = 24;
  int min_n = 3;
  std::size_t all_ideal = 9;
  std::size_t regular = 9;
};

struct RunStats {
  std::size_t seeds = 0;
  std::size_t pos_def = 0;
  std::size_t rank2 = 0;
  std::size_t no_weyl_vector = 0;
  std::size_t weyl_survivors = 0;   // seeds with a Weyl vector
  std::size_t timelike = 0;         // of those, rho^2 < 0
  std::size_t initial_chains = 0;   // enlargements of every surviving tuple
  std::size_t saturation_input = 0; // enlargements with timelike rho
  std::vector<IterationStats> iterations;  // by pass, 1-based
  bool saturation_complete = false;
  std::size_t total_closed = 0;
  std::size_t final_systems = 0;
  int min_n = 0;
  int max_n = 0;
  std::size_t all_ideal = 0;
  std::size_t regular = 0;
  std::vector<int> all_ideal_sizes;
  std::vector<int> regular_sizes;
  std::size_t compact = 0;
  std::size_t top_compact_genus_count = 0;
  std::string top_compact_genus;
  std::size_t twist_classes_shared = 0;
};

Json to_json(const RunStats& stats);
RunStats run_stats_from_json(const Json& j);

struct VerifyRow {
  std::string name;
  std::string expected;
  std::string actual;
  std::string kind;  // binding | calibration | info
  bool pass = false;
};

std::vector<VerifyRow> verify(const RunStats& actual, const ExpectedStats& expected = {});
bool all_binding_pass(const std::vector<VerifyRow>& rows);
std::string format_verify(const std::vector<VerifyRow>& rows, const std::string& format);

// -- files -------------------------------------------------------------------

void write_jsonl(const fs::path& path, const std::vector<Json>& lines);
std::vector<Json> read_jsonl(const fs::path& path);
void write_text(const fs::path& path, const std::string& text);

fs::path checkpoint_path(const fs::path& chains_dir, int iteration);

// -- stages --------------------------------------------------------------------

/// Seeds plus family-bound metadata.
void write_seeds(const fs::path& path, const std::vector<SeedMatrix>& seeds);
std::vector<SeedMatrix> read_seeds(const fs::path& path);

struct EnumerateResult {
  std::vector<Chain> closed;
};

/// Seed classification, enlargement and saturation, writing
/// chains_dir/seed_stats.json and one checkpoint per pass. On
/// IterationLimitExceeded the stats are filled in as far as they go and the
/// exception is rethrown.
EnumerateResult run_enumerate(const std::vector<SeedMatrix>& seeds, const fs::path& chains_dir,
                              const PipelineConfig& config, RunStats& stats);

/// Continues from a checkpoint written by run_enumerate. Earlier passes are
/// read back from the checkpoint's directory; new checkpoints go to
/// chains_dir.
EnumerateResult resume_enumerate(const fs::path& checkpoint, const fs::path& chains_dir,
                                 const PipelineConfig& config, RunStats& stats);

/// Closed chains of every checkpoint in a directory, in pass order.
std::vector<Chain> read_closed_chains(const fs::path& chains_dir);

void write_records(const fs::path& path, const std::vector<RootSystemRecord>& records);
std::vector<RootSystemRecord> read_records(const fs::path& path);

/// analysis.jsonl, summary.csv and optional DOT files; fills the structural
/// and genus fields of stats.
void run_analyze(const std::vector<RootSystemRecord>& records, const fs::path& analysis_path,
                 const fs::path& summary_path, const std::optional<fs::path>& dot_dir, int jobs,
                 RunStats& stats);

/// Compares canonical Gram sets with a user-supplied JSONL file (one Gram
/// matrix per line, bare or under "gram").
struct AgainstReport {
  std::size_t reference = 0;
  std::size_t matched = 0;
  std::size_t missing = 0;  // in the reference file only
  std::size_t extra = 0;    // in our records only
};

AgainstReport compare_against_file(const std::vector<RootSystemRecord>& records, const fs::path& path);

/// seeds -> enumerate -> dedup -> analyze -> stats.json and verify.txt.
/// Returns 0 when every binding row passes.
int run_all(const PipelineConfig& config, RunStats* stats_out = nullptr);

}  // namespace lorentz
