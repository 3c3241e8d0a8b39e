#include "lorentz/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lorentz {

// -- stats -------------------------------------------------------------------

Json to_json(const RunStats& s) {
  Json iterations = Json::array();
  for (const IterationStats& it : s.iterations)
    iterations.push_back({{"iteration", it.iteration}, {"closed", it.closed}, {"extensions", it.extensions}});
  return Json{{"seeds", s.seeds},
              {"positive_definite", s.pos_def},
              {"rank2", s.rank2},
              {"no_weyl_vector", s.no_weyl_vector},
              {"weyl_survivors", s.weyl_survivors},
              {"timelike", s.timelike},
              {"initial_chains", s.initial_chains},
              {"saturation_input", s.saturation_input},
              {"iterations", iterations},
              {"saturation_complete", s.saturation_complete},
              {"total_closed", s.total_closed},
              {"final_systems", s.final_systems},
              {"min_n", s.min_n},
              {"max_n", s.max_n},
              {"all_ideal", s.all_ideal},
              {"all_ideal_sizes", s.all_ideal_sizes},
              {"regular", s.regular},
              {"regular_sizes", s.regular_sizes},
              {"compact", s.compact},
              {"top_compact_genus_count", s.top_compact_genus_count},
              {"top_compact_genus", s.top_compact_genus.empty() ? Json(nullptr)
                                                                : Json::parse(s.top_compact_genus)},
              {"shared_twist_classes", s.twist_classes_shared}};
}

RunStats run_stats_from_json(const Json& j) {
  RunStats s;
  s.seeds = j.value("seeds", std::size_t{0});
  s.pos_def = j.value("positive_definite", std::size_t{0});
  s.rank2 = j.value("rank2", std::size_t{0});
  s.no_weyl_vector = j.value("no_weyl_vector", std::size_t{0});
  s.weyl_survivors = j.value("weyl_survivors", std::size_t{0});
  s.timelike = j.value("timelike", std::size_t{0});
  s.initial_chains = j.value("initial_chains", std::size_t{0});
  s.saturation_input = j.value("saturation_input", std::size_t{0});
  if (j.contains("iterations"))
    for (const Json& it : j.at("iterations"))
      s.iterations.push_back({it.at("iteration").get<int>(), it.at("closed").get<std::size_t>(),
                              it.at("extensions").get<std::size_t>()});
  s.saturation_complete = j.value("saturation_complete", false);
  s.total_closed = j.value("total_closed", std::size_t{0});
  s.final_systems = j.value("final_systems", std::size_t{0});
  s.min_n = j.value("min_n", 0);
  s.max_n = j.value("max_n", 0);
  s.all_ideal = j.value("all_ideal", std::size_t{0});
  s.regular = j.value("regular", std::size_t{0});
  if (j.contains("all_ideal_sizes")) s.all_ideal_sizes = j.at("all_ideal_sizes").get<std::vector<int>>();
  if (j.contains("regular_sizes")) s.regular_sizes = j.at("regular_sizes").get<std::vector<int>>();
  s.compact = j.value("compact", std::size_t{0});
  s.top_compact_genus_count = j.value("top_compact_genus_count", std::size_t{0});
  if (j.contains("top_compact_genus") && !j.at("top_compact_genus").is_null())
    s.top_compact_genus = j.at("top_compact_genus").dump();
  s.twist_classes_shared = j.value("shared_twist_classes", std::size_t{0});
  return s;
}

namespace {

template <class T>
VerifyRow row(std::string name, const T& expected, const T& actual, std::string kind = "binding") {
  std::ostringstream e, a;
  e << expected;
  a << actual;
  return {std::move(name), e.str(), a.str(), std::move(kind), expected == actual};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<VerifyRow> verify(const RunStats& a, const ExpectedStats& e) {
  std::vector<VerifyRow> rows;
  rows.push_back(row("seeds", e.seeds, a.seeds, "calibration"));
  rows.push_back(row("positive_definite_seeds", e.pos_def, a.pos_def));
  rows.push_back(row("rank2_seeds", e.rank2, a.rank2));
  rows.push_back(row("weyl_survivors", e.weyl_survivors, a.weyl_survivors));
  rows.push_back(row("initial_chains", e.initial_chains, a.initial_chains));

  auto pass_stats = [&](std::size_t k) -> std::optional<IterationStats> {
    if (a.iterations.size() < k) return std::nullopt;
    return a.iterations[k - 1];
  };
  for (const IterationStats& want : {e.iter1, e.iter2}) {
    const auto got = pass_stats(static_cast<std::size_t>(want.iteration));
    const std::string prefix = "iteration_" + std::to_string(want.iteration);
    rows.push_back(row(prefix + "_closed", want.closed, got ? got->closed : 0));
    rows.push_back(row(prefix + "_extensions", want.extensions, got ? got->extensions : 0));
  }
  if (a.saturation_complete && !a.iterations.empty()) {
    const IterationStats& last = a.iterations.back();
    rows.push_back(row("final_iteration", e.final_iteration, static_cast<int>(a.iterations.size()) - 1));
    rows.push_back(row("final_iteration_closed", e.final_closed, last.closed));
    rows.push_back(row("final_iteration_extensions", e.final_extensions, last.extensions));
  } else {
    rows.push_back({"final_iteration", std::to_string(e.final_iteration), "incomplete", "binding", false});
    rows.push_back({"final_iteration_closed", std::to_string(e.final_closed), "incomplete", "binding", false});
    rows.push_back(
        {"final_iteration_extensions", std::to_string(e.final_extensions), "incomplete", "binding", false});
  }
  rows.push_back(row("total_closed", e.total_closed, a.total_closed));
  rows.push_back(row("final_systems", e.final_systems, a.final_systems));
  rows.push_back(row("max_n", e.max_n, a.max_n));
  rows.push_back(row("min_n", e.min_n, a.min_n));
  rows.push_back(row("all_ideal", e.all_ideal, a.all_ideal));
  rows.push_back(row("regular", e.regular, a.regular));

  auto info = [&](std::string name, std::size_t v) {
    rows.push_back({std::move(name), "-", std::to_string(v), "info", true});
  };
  info("timelike_tuples", a.timelike);
  info("saturation_input", a.saturation_input);
  info("passes", a.iterations.size());
  return rows;
}

bool all_binding_pass(const std::vector<VerifyRow>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const VerifyRow& r) { return r.kind != "binding" || r.pass; });
}

std::string format_verify(const std::vector<VerifyRow>& rows, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    Json j = Json::array();
    for (const VerifyRow& r : rows)
      j.push_back({{"name", r.name}, {"expected", r.expected}, {"actual", r.actual},
                   {"kind", r.kind}, {"pass", r.pass}});
    out << j.dump(2) << "\n";
  } else if (format == "csv") {
    out << "name,expected,actual,kind,pass\n";
    for (const VerifyRow& r : rows)
      out << r.name << "," << r.expected << "," << r.actual << "," << r.kind << ","
          << (r.pass ? "true" : "false") << "\n";
  } else {
    out << std::left << std::setw(28) << "statistic" << std::setw(12) << "expected" << std::setw(12)
        << "actual" << std::setw(13) << "kind" << "result\n";
    for (const VerifyRow& r : rows) {
      const char* verdict = r.kind == "info" ? "-" : r.pass ? "PASS" : "FAIL";
      out << std::setw(28) << r.name << std::setw(12) << r.expected << std::setw(12) << r.actual
          << std::setw(13) << r.kind << verdict << "\n";
    }
  }
  return out.str();
}

// -- files -------------------------------------------------------------------

void write_jsonl(const fs::path& path, const std::vector<Json>& lines) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const Json& j : lines) out << j.dump() << '\n';
}

std::vector<Json> read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<Json> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(Json::parse(line));
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

fs::path checkpoint_path(const fs::path& chains_dir, int iteration) {
  std::ostringstream name;
  name << "iter_" << std::setw(2) << std::setfill('0') << iteration << ".jsonl";
  return chains_dir / name.str();
}

namespace {

Json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return Json::parse(in);
}

int iteration_of_checkpoint(const fs::path& path) {
  const std::string name = path.filename().string();
  if (name.rfind("iter_", 0) != 0 || path.extension() != ".jsonl")
    throw std::invalid_argument("not a checkpoint file: " + path.string());
  return std::stoi(name.substr(5));
}

void write_checkpoint(const fs::path& chains_dir, int iteration, const std::vector<Chain>& chains) {
  std::vector<Json> lines;
  lines.reserve(chains.size());
  for (const Chain& c : chains) lines.push_back(to_json(c, iteration));
  write_jsonl(checkpoint_path(chains_dir, iteration), lines);
}

std::vector<Chain> read_checkpoint(const fs::path& path) {
  std::vector<Chain> out;
  for (const Json& j : read_jsonl(path)) out.push_back(chain_from_json(j));
  return out;
}

void seed_stats_from_json(const Json& j, RunStats& s) {
  const RunStats t = run_stats_from_json(j);
  s.seeds = t.seeds;
  s.pos_def = t.pos_def;
  s.rank2 = t.rank2;
  s.no_weyl_vector = t.no_weyl_vector;
  s.weyl_survivors = t.weyl_survivors;
  s.timelike = t.timelike;
  s.initial_chains = t.initial_chains;
  s.saturation_input = t.saturation_input;
}

EnumerateResult finish_saturation(std::vector<Chain> input, int first_iteration, const fs::path& chains_dir,
                                  const PipelineConfig& config, RunStats& stats,
                                  EnumerateResult earlier) {
  SaturationOptions options;
  options.max_iterations = config.max_iterations;
  options.jobs = config.jobs;
  options.first_iteration = first_iteration;
  options.on_iteration = [&](int iteration, const std::vector<Chain>& chains) {
    write_checkpoint(chains_dir, iteration, chains);
  };
  auto merge = [&](const SaturationResult& r) {
    for (const Chain& c : r.closed) earlier.closed.push_back(c);
    for (const IterationStats& s : r.stats) stats.iterations.push_back(s);
    stats.total_closed = earlier.closed.size();
  };
  try {
    const SaturationResult r = saturate(std::move(input), options);
    merge(r);
    stats.saturation_complete = true;
  } catch (const IterationLimitExceeded& e) {
    merge(e.partial());
    stats.saturation_complete = false;
    throw;
  }
  return earlier;
}

}  // namespace

void write_seeds(const fs::path& path, const std::vector<SeedMatrix>& seeds) {
  std::vector<Json> lines;
  lines.reserve(seeds.size());
  for (const SeedMatrix& s : seeds) lines.push_back(to_json(s));
  write_jsonl(path, lines);

  Json meta = Json::array();
  for (int f = 1; f <= 5; ++f) {
    const FamilyBounds b = family_bounds(f);
    std::size_t count = 0;
    for (const SeedMatrix& s : seeds)
      if (s.params.family == f) ++count;
    meta.push_back({{"family", f}, {"dimension", b.dimension}, {"ab_pairs", b.ab.size()},
                    {"apbp_pairs", b.apbp.size()}, {"bounds", b.notes}, {"seeds", count}});
  }
  fs::path meta_path = path;
  meta_path.replace_extension(".meta.json");
  write_text(meta_path, Json{{"families", meta}, {"total", seeds.size()}}.dump(2) + "\n");
}

std::vector<SeedMatrix> read_seeds(const fs::path& path) {
  std::vector<SeedMatrix> out;
  for (const Json& j : read_jsonl(path)) out.push_back(seed_from_json(j));
  return out;
}

EnumerateResult run_enumerate(const std::vector<SeedMatrix>& seeds, const fs::path& chains_dir,
                              const PipelineConfig& config, RunStats& stats) {
  fs::create_directories(chains_dir);
  stats.seeds = seeds.size();
  std::vector<SeedChain> outcomes(seeds.size());
  parallel_for(seeds.size(), config.jobs, [&](std::size_t i) { outcomes[i] = seed_to_chain(seeds[i].gram); });

  std::vector<const Chain*> tuples;
  for (const SeedChain& o : outcomes) {
    switch (o.outcome) {
      case SeedOutcome::PositiveDefinite: ++stats.pos_def; break;
      case SeedOutcome::RankTwo: ++stats.rank2; break;
      case SeedOutcome::NoWeylVector: ++stats.no_weyl_vector; break;
      case SeedOutcome::NotTimelike: break;
      case SeedOutcome::Chain: ++stats.timelike; break;
    }
    if (o.tuple) tuples.push_back(&*o.tuple);
  }
  stats.weyl_survivors = tuples.size();

  std::vector<std::vector<Chain>> enlarged(tuples.size());
  parallel_for(tuples.size(), config.jobs, [&](std::size_t i) { enlarged[i] = initial_chains(*tuples[i]); });
  std::vector<Chain> input;
  for (std::vector<Chain>& group : enlarged) {
    stats.initial_chains += group.size();
    for (Chain& c : group)
      if (has_timelike_rho(c)) input.push_back(std::move(c));
  }
  stats.saturation_input = input.size();
  write_text(chains_dir / "seed_stats.json", to_json(stats).dump(2) + "\n");

  return finish_saturation(std::move(input), 1, chains_dir, config, stats, {});
}

EnumerateResult resume_enumerate(const fs::path& checkpoint, const fs::path& chains_dir,
                                 const PipelineConfig& config, RunStats& stats) {
  const fs::path source = checkpoint.parent_path();
  const int k = iteration_of_checkpoint(checkpoint);
  fs::create_directories(chains_dir);
  const bool same_dir = fs::equivalent(source, chains_dir);

  seed_stats_from_json(read_json_file(source / "seed_stats.json"), stats);
  if (!same_dir)
    fs::copy_file(source / "seed_stats.json", chains_dir / "seed_stats.json",
                  fs::copy_options::overwrite_existing);

  EnumerateResult earlier;
  for (int j = 1; j < k; ++j) {
    const fs::path file = checkpoint_path(source, j);
    const std::vector<Chain> chains = read_checkpoint(file);
    IterationStats s{j, 0, 0};
    for (const Chain& c : chains)
      if (c.closed) {
        ++s.closed;
        earlier.closed.push_back(c);
      }
    s.extensions = read_jsonl(checkpoint_path(source, j + 1)).size();
    stats.iterations.push_back(s);
    if (!same_dir) fs::copy_file(file, checkpoint_path(chains_dir, j), fs::copy_options::overwrite_existing);
  }
  return finish_saturation(read_checkpoint(checkpoint), k, chains_dir, config, stats, std::move(earlier));
}

std::vector<Chain> read_closed_chains(const fs::path& chains_dir) {
  std::vector<Chain> out;
  for (int j = 1; fs::exists(checkpoint_path(chains_dir, j)); ++j)
    for (Chain& c : read_checkpoint(checkpoint_path(chains_dir, j)))
      if (c.closed) out.push_back(std::move(c));
  return out;
}

void write_records(const fs::path& path, const std::vector<RootSystemRecord>& records) {
  std::vector<Json> lines;
  for (const RootSystemRecord& r : records) lines.push_back(to_json(r));
  write_jsonl(path, lines);
}

std::vector<RootSystemRecord> read_records(const fs::path& path) {
  std::vector<RootSystemRecord> out;
  for (const Json& j : read_jsonl(path)) out.push_back(record_from_json(j));
  return out;
}

void run_analyze(const std::vector<RootSystemRecord>& records, const fs::path& analysis_path,
                 const fs::path& summary_path, const std::optional<fs::path>& dot_dir, int jobs,
                 RunStats& stats) {
  std::vector<ChamberReport> reports(records.size());
  parallel_for(records.size(), jobs, [&](std::size_t i) { reports[i] = analyze(records[i]); });

  std::map<std::string, std::vector<std::size_t>> twist;
  for (std::size_t i = 0; i < records.size(); ++i) twist[reports[i].twist].push_back(i + 1);

  std::vector<Json> lines(records.size());
  parallel_for(records.size(), jobs, [&](std::size_t i) {
    std::vector<std::size_t> shared;
    for (std::size_t j : twist[reports[i].twist])
      if (j != i + 1) shared.push_back(j);
    lines[i] = analysis_json(records[i], reports[i], i + 1, shared);
  });
  write_jsonl(analysis_path, lines);

  std::ostringstream csv;
  csv << "index,n,angles,aut,mirror_string,euler,area_coefficient,compact,all_ideal,right_angled,"
         "regular,rho_norm,determinant,shared_with\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ChamberReport& r = reports[i];
    std::string angles, shared;
    for (int m : r.angles) angles += (angles.empty() ? "" : " ") + angle_token(m);
    for (const Json& j : lines[i].at("shared_with"))
      shared += (shared.empty() ? "" : ";") + std::to_string(j.get<std::size_t>());
    const std::string aut = std::string(1, r.aut.kind) + std::to_string(r.aut.order);
    csv << i + 1 << "," << records[i].n << "," << csv_escape(angles) << "," << aut << ","
        << csv_escape(format_mirror_string(r.aut.mirrors)) << "," << to_string(r.euler.euler) << ","
        << to_string(r.euler.area_coefficient) << "," << r.flags.compact << "," << r.flags.all_ideal
        << "," << r.flags.right_angled << "," << r.flags.regular << "," << to_string(r.rho_norm)
        << "," << to_string(r.genus.determinant) << "," << shared << "\n";
  }
  write_text(summary_path, csv.str());

  if (dot_dir) {
    fs::create_directories(*dot_dir);
    for (std::size_t i = 0; i < records.size(); ++i) {
      std::ostringstream name;
      name << "system_" << std::setw(4) << std::setfill('0') << i + 1;
      write_text(*dot_dir / (name.str() + ".dot"), dynkin_diagram(records[i], name.str()));
    }
  }

  stats.final_systems = records.size();
  stats.min_n = records.empty() ? 0 : records.front().n;
  stats.max_n = records.empty() ? 0 : records.back().n;
  stats.all_ideal = stats.regular = stats.compact = 0;
  stats.all_ideal_sizes.clear();
  stats.regular_sizes.clear();
  std::map<std::string, std::size_t> genus_count;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ChamberFlags& f = reports[i].flags;
    if (f.all_ideal) {
      ++stats.all_ideal;
      stats.all_ideal_sizes.push_back(records[i].n);
    }
    if (f.regular) {
      ++stats.regular;
      stats.regular_sizes.push_back(records[i].n);
    }
    if (f.compact) {
      ++stats.compact;
      ++genus_count[to_json_string(reports[i].genus)];
    }
  }
  stats.top_compact_genus_count = 0;
  stats.top_compact_genus.clear();
  for (const auto& [key, count] : genus_count)
    if (count > stats.top_compact_genus_count) {
      stats.top_compact_genus_count = count;
      stats.top_compact_genus = key;
    }
  stats.twist_classes_shared = 0;
  for (const auto& [key, members] : twist)
    if (members.size() > 1) ++stats.twist_classes_shared;
}

AgainstReport compare_against_file(const std::vector<RootSystemRecord>& records, const fs::path& path) {
  std::set<std::string> ours, theirs;
  for (const RootSystemRecord& r : records) ours.insert(matrix_to_json(r.gram).dump());
  for (const Json& j : read_jsonl(path)) {
    const Json& g = j.is_object() ? j.at("gram") : j;
    const auto [unscaled, factor] = unscale_gram(rat_matrix_from_json(g));
    (void)factor;
    theirs.insert(matrix_to_json(dihedral_canonical(to_integer(unscaled))).dump());
  }
  AgainstReport rep;
  rep.reference = theirs.size();
  for (const std::string& g : theirs) (ours.count(g) ? rep.matched : rep.missing) += 1;
  for (const std::string& g : ours)
    if (!theirs.count(g)) ++rep.extra;
  return rep;
}

int run_all(const PipelineConfig& config, RunStats* stats_out) {
  const fs::path out = config.out_dir;
  const fs::path chains_dir = out / "chains";
  fs::create_directories(out);
  RunStats stats;
  EnumerateResult enumerated;
  try {
    if (config.resume) {
      enumerated = resume_enumerate(*config.resume, chains_dir, config, stats);
    } else {
      const std::vector<SeedMatrix> seeds = enumerate_seeds();
      write_seeds(out / "seeds.jsonl", seeds);
      enumerated = run_enumerate(seeds, chains_dir, config, stats);
    }
  } catch (const IterationLimitExceeded& e) {
    write_text(out / "stats.json", to_json(stats).dump(2) + "\n");
    write_text(out / "verify.txt", format_verify(verify(stats), "text"));
    if (stats_out) *stats_out = stats;
    throw;
  }

  const std::vector<RootSystemRecord> records = records_from_chains(enumerated.closed, config.jobs);
  write_records(out / "records.jsonl", records);
  run_analyze(records, out / "analysis.jsonl", out / "summary.csv", config.dot_dir, config.jobs, stats);

  write_text(out / "stats.json", to_json(stats).dump(2) + "\n");
  const std::vector<VerifyRow> rows = verify(stats);
  write_text(out / "verify.txt", format_verify(rows, "text"));
  if (stats_out) *stats_out = stats;
  return all_binding_pass(rows) ? 0 : 1;
}

}  // namespace lorentz
