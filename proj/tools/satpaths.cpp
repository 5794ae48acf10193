#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satpaths/dimacs.hpp"
#include "satpaths/generator.hpp"
#include "satpaths/graphs.hpp"
#include "satpaths/metrics.hpp"
#include "satpaths/oracle.hpp"
#include "satpaths/qubo_io.hpp"
#include "satpaths/reductions.hpp"
#include "satpaths/sweep.hpp"

namespace fs = std::filesystem;
using namespace satpaths;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// Input and usage problems; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CnfFormula read_formula(const std::string& path, bool quiet = false) {
  std::ifstream in(path);
  if (!in) throw UsageError("--in: cannot open '" + path + "'");
  std::vector<std::string> warnings;
  try {
    auto f = parse_dimacs(in, &warnings);
    if (!quiet) {
      for (const auto& w : warnings) std::cerr << path << ": warning: " << w << '\n';
    }
    return f;
  } catch (const DimacsError& e) {
    throw UsageError("--in: " + path + ": " + e.what());
  }
}

PathVariant variant_flag(const std::string& text) {
  auto v = parse_variant(text);
  if (!v) throw UsageError("--variant: unknown variant '" + text + "'");
  return *v;
}

PenaltyWeight penalty_flag(const std::string& text) {
  if (text == "adaptive") return PenaltyWeight::adaptive();
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size()) return PenaltyWeight::fixed(value);
  } catch (const std::exception&) {
  }
  throw UsageError("--penalty: expected 'adaptive' or a number >= 1, got '" + text + "'");
}

void write_text(const std::string& path, const std::string& text, const char* flag) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw UsageError(std::string(flag) + ": cannot write '" + path + "'");
}

// ---- gen

struct GenArgs {
  std::size_t k = 3, m = 10, pool = 10;
  std::uint64_t seed = 0;
  bool dedup = false;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  GeneratorConfig cfg{a.pool, a.k, a.m, a.seed, a.dedup};
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--k/--m/--pool: ") + e.what());
  }
  std::ostringstream text;
  text << "c satpaths gen k=" << a.k << " m=" << a.m << " pool=" << a.pool << " seed=" << a.seed
       << (a.dedup ? " dedup" : "") << '\n';
  write_dimacs(text, generate_random_ksat(cfg));
  write_text(a.out, text.str(), "--out");
  return kExitOk;
}

// ---- transform

struct TransformArgs {
  std::string in, out, flat, variant = "choistar", penalty = "adaptive";
  double p = 1.0;
  std::uint64_t seed = 0;
  std::size_t pool = 0;
};

int cmd_transform(const TransformArgs& a) {
  const auto formula = read_formula(a.in);
  const auto variant = variant_flag(a.variant);
  PathOptions options;
  options.percentile = a.p;
  options.penalty = penalty_flag(a.penalty);
  const auto run = run_path(formula, variant, options);
  const auto pool = a.pool ? a.pool : formula.num_variables();
  auto report = compute_metrics(formula, run, pool, a.seed, a.p);
  report.validate();

  nlohmann::json result = {{"report", report_to_json(report)},
                           {"ancillas", run.ancilla_count()},
                           {"penalty", options.penalty.describe()}};
  if (a.out.empty() || a.out == "-") {
    result["qubo"] = pbf_to_json(run.qubo);
  } else {
    write_text(a.out, pbf_to_json(run.qubo).dump(1) + "\n", "--out");
  }
  if (!a.flat.empty()) write_text(a.flat, write_flat_qubo(run.qubo), "--flat");
  std::cout << result.dump(2) << '\n';
  return kExitOk;
}

// ---- sweep

struct SweepArgs {
  std::string config, out;
  std::size_t threads = 0;
};

int cmd_sweep(const SweepArgs& a) {
  SweepConfig cfg;
  try {
    cfg = load_sweep_config(a.config);
    if (!a.out.empty()) cfg.output_dir = a.out;
    if (a.threads) cfg.threads = a.threads;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--config: ") + e.what());
  }
  SweepSummary s;
  try {
    s = run_sweep(cfg);
  } catch (const std::runtime_error& e) {
    throw UsageError(std::string("--out: ") + e.what());
  }
  std::cout << "wrote " << s.rows << " rows (" << s.failed_rows << " failed) to "
            << s.csv_path.string() << " in " << s.wall_time_seconds << " s\n"
            << "metadata: " << s.metadata_path.string() << '\n';
  return kExitOk;
}

// ---- verify

struct VerifyArgs {
  std::string in, variant;
  bool all_variants = false;
  std::vector<double> p_values{0.0, 0.5, 1.0};
  std::size_t budget = OracleBudget{}.max_total_bits;
};

struct Tally {
  std::size_t passed = 0, failed = 0, skipped = 0;
};

template <typename Check>
void run_check(Tally& tally, const std::string& label, Check&& check) {
  try {
    const CheckResult r = check();
    if (r.passed) {
      ++tally.passed;
      std::cout << "PASS " << label << '\n';
    } else {
      ++tally.failed;
      std::cout << "FAIL " << label << ": " << r.detail << '\n';
    }
  } catch (const BudgetExceeded& e) {
    ++tally.skipped;
    std::cout << "SKIP " << label << ": " << e.what() << '\n';
  }
}

CheckResult check_equisat(const CnfFormula& f, const CnfFormula& reduced, OracleBudget budget) {
  const bool a = is_satisfiable(f, budget);
  const auto core = f.used_variables();
  const bool b = is_satisfiable_given(reduced, core, budget);
  CheckResult r;
  r.passed = a == b;
  if (!r.passed) {
    r.detail = std::string("original is ") + (a ? "sat" : "unsat") + ", reduced is " +
               (b ? "sat" : "unsat");
  }
  return r;
}

void verify_formula(const std::string& name, const CnfFormula& f,
                    const std::vector<PathVariant>& variants, const VerifyArgs& a, Tally& tally) {
  const OracleBudget budget{a.budget};
  run_check(tally, name + " counting", [&] { return verify_counting(f, sat_to_pubo(f), budget); });
  for (auto v : variants) {
    const std::string tag = name + " " + to_string(v);
    if (uses_mis(v)) {
      const auto run = run_path(f, v);
      const auto& base = run.reduced ? *run.reduced : f;
      if (run.reduced) {
        run_check(tally, tag + " equisat", [&] { return check_equisat(f, base, budget); });
      }
      run_check(tally, tag + " mis", [&] { return verify_mis_correspondence(base, *run.mis, budget); });
      run_check(tally, tag + " mis-qubo", [&] { return verify_mis_qubo(*run.mis, run.qubo, budget); });
      continue;
    }
    for (double p : a.p_values) {
      PathOptions options;
      options.percentile = p;
      const auto run = run_path(f, v, options);
      std::ostringstream ptag;
      ptag << tag << " p=" << p;
      if (run.reduced && p == a.p_values.front()) {
        run_check(tally, tag + " equisat", [&] { return check_equisat(f, *run.reduced, budget); });
      }
      const auto& base = run.reduced ? *run.reduced : f;
      run_check(tally, ptag.str() + " counting",
                [&] { return verify_counting(base, *run.pubo, budget); });
      std::vector<Var> ancillas;
      for (const auto& s : run.substitutions) ancillas.push_back(s.ancilla);
      run_check(tally, ptag.str() + " quadratisation",
                [&] { return verify_quadratisation(*run.pubo, run.qubo, ancillas, budget); });
    }
  }
}

int cmd_verify(const VerifyArgs& a) {
  if (a.budget > 30) throw UsageError("--budget: at most 30 bits are supported");
  std::vector<PathVariant> variants;
  if (a.all_variants || a.variant.empty()) {
    variants.assign(kAllVariants.begin(), kAllVariants.end());
  } else {
    variants.push_back(variant_flag(a.variant));
  }
  for (double p : a.p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p: values must lie in [0, 1]");
  }

  std::vector<fs::path> files;
  if (fs::is_directory(a.in)) {
    for (const auto& entry : fs::directory_iterator(a.in)) {
      if (entry.is_regular_file() && entry.path().extension() == ".cnf") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("--in: no .cnf files in '" + a.in + "'");
  } else {
    files.emplace_back(a.in);
  }

  Tally tally;
  for (const auto& path : files) {
    verify_formula(path.filename().string(), read_formula(path.string()), variants, a, tally);
  }
  std::cout << tally.passed << " passed, " << tally.failed << " failed, " << tally.skipped
            << " skipped (budget " << a.budget << " bits)\n";
  return tally.failed ? kExitVerifyFailed : kExitOk;
}

// ---- graph

struct GraphArgs {
  std::string in, out = ".", variant = "choistar";
  double p = 1.0;
  bool greedy = false;
};

int cmd_graph(const GraphArgs& a) {
  const auto formula = read_formula(a.in);
  const auto variant = variant_flag(a.variant);
  PathOptions options;
  options.percentile = a.p;
  const auto run = run_path(formula, variant, options);

  std::vector<IncidenceGraph> stages{sat_incidence_graph(formula, "sat")};
  if (run.reduced) stages.push_back(sat_incidence_graph(*run.reduced, "sat3"));
  if (run.mis) stages.push_back(mis_incidence_graph(*run.mis, "mis"));
  if (run.pubo) stages.push_back(pbf_incidence_graph(*run.pubo, "pubo"));
  if (!run.mis) stages.push_back(pbf_incidence_graph(run.qubo, "qubo"));

  std::error_code ec;
  fs::create_directories(a.out, ec);
  for (std::size_t i = 0; i < stages.size(); ++i) {
    std::optional<GraphDiff> diff;
    if (i > 0) diff = graph_diff(stages[i - 1], stages[i]);
    std::string dot;
    try {
      dot = export_dot(stages[i], diff ? &*diff : nullptr, a.greedy);
    } catch (const CliqueBudgetError& e) {
      throw UsageError(e.what());
    }
    const auto path = fs::path(a.out) / (std::to_string(i) + "_" + stages[i].stage_tag + ".dot");
    write_text(path.string(), dot, "--out");
    std::cout << path.string() << ": " << stages[i].num_nodes() << " nodes, "
              << stages[i].num_edges() << " edges\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-SAT to QUBO transformation paths"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "random exact-k instance as DIMACS");
  gen_cmd->add_option("--k", gen.k, "literals per clause")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "number of clauses")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--pool", gen.pool, "variable pool size |V|")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_flag("--dedup", gen.dedup, "resample repeated clauses");
  gen_cmd->add_option("--out", gen.out, "output path (default stdout)");

  TransformArgs tr;
  auto* tr_cmd = app.add_subcommand("transform", "DIMACS to QUBO JSON plus a metrics report");
  tr_cmd->add_option("--in", tr.in, "DIMACS input")->required();
  tr_cmd->add_option("--variant", tr.variant, "choi|choistar|dobrynin|demorgan");
  tr_cmd->add_option("--p", tr.p, "pair-selection percentile")->check(CLI::Range(0.0, 1.0));
  tr_cmd->add_option("--penalty", tr.penalty, "'adaptive' or a fixed multiplier >= 1");
  tr_cmd->add_option("--out", tr.out, "QUBO JSON path (default: embedded in stdout)");
  tr_cmd->add_option("--flat", tr.flat, "also write the flat `i j coeff` format here");
  tr_cmd->add_option("--seed", tr.seed, "seed recorded in the report");
  tr_cmd->add_option("--pool", tr.pool, "pool size recorded in the report");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "run a parameter sweep into CSV");
  sw_cmd->add_option("--config", sw.config, "TOML or JSON sweep config")->required();
  sw_cmd->add_option("--out", sw.out, "output directory (overrides the config)");
  sw_cmd->add_option("--threads", sw.threads, "worker count");

  VerifyArgs vf;
  auto* vf_cmd = app.add_subcommand("verify", "brute-force oracle checks");
  vf_cmd->add_option("--in", vf.in, "DIMACS file or directory of .cnf files")->required();
  vf_cmd->add_option("--variant", vf.variant, "single variant to check");
  vf_cmd->add_flag("--all-variants", vf.all_variants, "check every variant (default)");
  vf_cmd->add_option("--p", vf.p_values, "percentiles for the polynomial paths");
  vf_cmd->add_option("--budget", vf.budget, "max enumerated bits per check");

  GraphArgs gr;
  auto* gr_cmd = app.add_subcommand("graph", "DOT series of a path's representations");
  gr_cmd->add_option("--in", gr.in, "DIMACS input")->required();
  gr_cmd->add_option("--variant", gr.variant, "choi|choistar|dobrynin|demorgan");
  gr_cmd->add_option("--p", gr.p, "pair-selection percentile")->check(CLI::Range(0.0, 1.0));
  gr_cmd->add_option("--out", gr.out, "output directory");
  gr_cmd->add_flag("--greedy", gr.greedy, "greedy clique ordering above 200 nodes");

  std::size_t est_n = 0, est_m = 0, est_k = 0;
  auto* est_cmd = app.add_subcommand("estimate", "QUBO size n + m * r(k) of a counting encoding");
  est_cmd->add_option("n", est_n)->required();
  est_cmd->add_option("m", est_m)->required();
  est_cmd->add_option("k", est_k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*tr_cmd) return cmd_transform(tr);
    if (*sw_cmd) return cmd_sweep(sw);
    if (*vf_cmd) return cmd_verify(vf);
    if (*gr_cmd) return cmd_graph(gr);
    if (*est_cmd) {
      if (est_k < 2) throw UsageError("k: must be at least 2");
      std::cout << nuesslein_size(est_n, est_m, est_k) << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
