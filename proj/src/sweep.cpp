#include "satpaths/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "satpaths/generator.hpp"

namespace satpaths {

namespace {

template <typename T>
void require_nonempty(const std::vector<T>& values, const char* field) {
  if (values.empty()) throw std::invalid_argument(std::string(field) + " must not be empty");
}

}  // namespace

void SweepConfig::validate() const {
  require_nonempty(k_values, "k_values");
  require_nonempty(m_values, "m_values");
  require_nonempty(pool_sizes, "pool_sizes");
  require_nonempty(seeds, "seeds");
  require_nonempty(variants, "variants");
  require_nonempty(p_values, "p_values");
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("p_values entry " + std::to_string(p) + " is outside [0, 1]");
    }
  }
  for (auto k : k_values) {
    if (k < 2) throw std::invalid_argument("k_values entries must be at least 2");
  }
  for (auto m : m_values) {
    if (m < 1) throw std::invalid_argument("m_values entries must be at least 1");
  }
  if (timing_repeats < 1) throw std::invalid_argument("timing_repeats must be at least 1");
  if (output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
}

nlohmann::json SweepConfig::to_json() const {
  std::vector<std::string> variant_names;
  for (auto v : variants) variant_names.emplace_back(to_string(v));
  return {{"k_values", k_values},
          {"m_values", m_values},
          {"pool_sizes", pool_sizes},
          {"seeds", seeds},
          {"variants", variant_names},
          {"p_values", p_values},
          {"output_dir", output_dir.string()},
          {"threads", threads},
          {"timing_repeats", timing_repeats},
          {"penalty", penalty.is_adaptive() ? nlohmann::json("adaptive")
                                            : nlohmann::json(penalty.value())}};
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "k_values", "m_values", "pool_sizes",     "seeds",  "variants",
      "p_values", "output_dir", "threads", "timing_repeats", "penalty"};
  if (!j.is_object()) throw std::invalid_argument("sweep config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown sweep config key '" + key + "'");
  }
  SweepConfig cfg;
  auto field = [&](const char* key, auto& out) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(out);
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument(std::string("sweep config key '") + key +
                                  "' has the wrong type");
    }
  };
  field("k_values", cfg.k_values);
  field("m_values", cfg.m_values);
  field("pool_sizes", cfg.pool_sizes);
  field("seeds", cfg.seeds);
  field("p_values", cfg.p_values);
  field("threads", cfg.threads);
  field("timing_repeats", cfg.timing_repeats);
  if (j.contains("output_dir")) {
    std::string dir;
    field("output_dir", dir);
    cfg.output_dir = dir;
  }
  if (j.contains("variants")) {
    std::vector<std::string> names;
    field("variants", names);
    cfg.variants.clear();
    for (const auto& name : names) {
      auto v = parse_variant(name);
      if (!v) throw std::invalid_argument("unknown variant '" + name + "' in sweep config");
      cfg.variants.push_back(*v);
    }
  }
  if (j.contains("penalty")) {
    const auto& p = j.at("penalty");
    if (p.is_string() && p.get<std::string>() == "adaptive") {
      cfg.penalty = PenaltyWeight::adaptive();
    } else if (p.is_number()) {
      cfg.penalty = PenaltyWeight::fixed(p.get<double>());
    } else {
      throw std::invalid_argument("penalty must be \"adaptive\" or a number >= 1");
    }
  }
  cfg.validate();
  return cfg;
}

nlohmann::json parse_flat_toml(const std::string& text) {
  nlohmann::json out = nlohmann::json::object();
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Cut the comment, honouring double-quoted strings.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto where = "config line " + std::to_string(lineno);
    if (line[first] == '[') throw std::invalid_argument(where + ": tables are not supported");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
    auto key = line.substr(first, eq - first);
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key.empty()) throw std::invalid_argument(where + ": missing key");
    // The accepted value forms are also valid JSON.
    try {
      out[key] = nlohmann::json::parse(line.substr(eq + 1));
    } catch (const nlohmann::json::parse_error&) {
      throw std::invalid_argument(where + ": cannot parse value of '" + key + "'");
    }
  }
  return out;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument("config " + path.string() + ": " + e.what());
    }
    return sweep_config_from_json(j);
  }
  return sweep_config_from_json(parse_flat_toml(buf.str()));
}

namespace {

std::size_t p_rows(const SweepConfig& cfg, PathVariant v) {
  return uses_mis(v) ? 1 : cfg.p_values.size();
}

struct Instance {
  std::size_t k, m, pool;
  std::uint64_t seed;
};

std::vector<Instance> instances(const SweepConfig& cfg) {
  std::vector<Instance> out;
  for (auto k : cfg.k_values)
    for (auto m : cfg.m_values)
      for (auto pool : cfg.pool_sizes)
        for (auto seed : cfg.seeds) out.push_back({k, m, pool, seed});
  return out;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const auto n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

PathReport error_row(const Instance& inst, PathVariant v, std::optional<double> p,
                     const std::string& message) {
  PathReport r;
  r.variant = v;
  r.k = inst.k;
  r.m = inst.m;
  r.pool = inst.pool;
  r.seed = inst.seed;
  r.p = uses_mis(v) ? std::nullopt : p;
  r.error = message.empty() ? "unknown error" : message;
  return r;
}

std::vector<PathReport> run_instance(const SweepConfig& cfg, const Instance& inst) {
  std::vector<PathReport> rows;
  std::optional<CnfFormula> formula;
  std::string gen_error;
  try {
    formula = generate_random_ksat({inst.pool, inst.k, inst.m, inst.seed, false});
  } catch (const std::exception& e) {
    gen_error = std::string("generation: ") + e.what();
  }
  for (auto v : cfg.variants) {
    for (std::size_t pi = 0; pi < p_rows(cfg, v); ++pi) {
      const std::optional<double> p =
          uses_mis(v) ? std::nullopt : std::optional<double>(cfg.p_values[pi]);
      if (!formula) {
        rows.push_back(error_row(inst, v, p, gen_error));
        continue;
      }
      try {
        PathOptions options;
        options.percentile = p.value_or(1.0);
        options.penalty = cfg.penalty;
        std::vector<double> times;
        std::optional<PathRun> run;
        for (std::size_t rep = 0; rep < cfg.timing_repeats; ++rep) {
          run = run_path(*formula, v, options);
          times.push_back(run->wall_time_seconds);
        }
        run->wall_time_seconds = median(std::move(times));
        auto report = compute_metrics(*formula, *run, inst.pool, inst.seed, p);
        report.validate();
        rows.push_back(std::move(report));
      } catch (const std::exception& e) {
        rows.push_back(error_row(inst, v, p, e.what()));
      }
    }
  }
  return rows;
}

// Runs every instance on a worker pool and hands each instance's rows to
// `sink` in instance order, from one thread at a time.
template <typename Sink>
void sweep_impl(const SweepConfig& cfg, Sink&& sink) {
  cfg.validate();
  const auto all = instances(cfg);
  const auto workers = sweep_threads(cfg, all.size());

  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::map<std::size_t, std::vector<PathReport>> pending;
  std::size_t emitted = 0;
  std::exception_ptr sink_error;

  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < all.size();) {
      auto rows = run_instance(cfg, all[i]);
      std::lock_guard lock(mutex);
      pending.emplace(i, std::move(rows));
      while (!sink_error && !pending.empty() && pending.begin()->first == emitted) {
        try {
          sink(pending.begin()->second);
        } catch (...) {
          sink_error = std::current_exception();
        }
        pending.erase(pending.begin());
        ++emitted;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (sink_error) std::rethrow_exception(sink_error);
}

}  // namespace

std::size_t expected_rows(const SweepConfig& cfg) {
  std::size_t per_instance = 0;
  for (auto v : cfg.variants) per_instance += p_rows(cfg, v);
  return per_instance * cfg.k_values.size() * cfg.m_values.size() * cfg.pool_sizes.size() *
         cfg.seeds.size();
}

std::size_t sweep_threads(const SweepConfig& cfg, std::size_t instances) {
  std::size_t n = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (const char* env = std::getenv("SATPATHS_THREADS")) {
    char* end = nullptr;
    const auto cap = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return std::clamp<std::size_t>(n, 1, std::max<std::size_t>(instances, 1));
}

std::vector<PathReport> run_sweep_rows(const SweepConfig& cfg) {
  std::vector<PathReport> out;
  sweep_impl(cfg, [&](const std::vector<PathReport>& rows) {
    out.insert(out.end(), rows.begin(), rows.end());
  });
  return out;
}

SweepSummary run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepSummary summary;
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  summary.csv_path = cfg.output_dir / "sweep.csv";
  summary.metadata_path = cfg.output_dir / "metadata.json";
  std::ofstream csv(summary.csv_path);
  if (!csv) {
    throw std::runtime_error("cannot write to output directory " + cfg.output_dir.string());
  }
  csv << csv_header() << '\n';

  const auto start = std::chrono::steady_clock::now();
  sweep_impl(cfg, [&](const std::vector<PathReport>& rows) {
    for (const auto& r : rows) {
      csv << to_csv_row(r) << '\n';
      ++summary.rows;
      if (r.failed()) ++summary.failed_rows;
    }
    csv.flush();
  });
  summary.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!csv) throw std::runtime_error("failed writing " + summary.csv_path.string());

  nlohmann::json meta = {
      {"tool", kToolName},
      {"version", kToolVersion},
      {"config", cfg.to_json()},
      {"rng_policy", generator_policy()},
      {"sat_density",
       "m / (C(n_used, k) * 2^k): clauses over polarity-labelled k-variable clauses of the "
       "used variables"},
      {"qubo_deg2_density", "deg2 / C(N, 2) over variables occurring in the QUBO"},
      {"penalty", cfg.penalty.describe()},
      {"pair_selection",
       "nearest-rank quantile p over per-pair monomial counts (ascending), ties to the "
       "lexicographically smallest pair"},
      {"timing", "steady_clock over the transformation path only; median of timing_repeats"},
      {"timing_repeats", cfg.timing_repeats},
      {"threads", sweep_threads(cfg, instances(cfg).size())},
      {"rows", summary.rows},
      {"failed_rows", summary.failed_rows},
      {"wall_time_s", summary.wall_time_seconds}};
  std::ofstream meta_out(summary.metadata_path);
  meta_out << meta.dump(2) << '\n';
  if (!meta_out) throw std::runtime_error("failed writing " + summary.metadata_path.string());
  return summary;
}

}  // namespace satpaths
