#include "satpaths/metrics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <stdexcept>

namespace satpaths {

void PathReport::validate() const {
  auto fail = [](const std::string& what) { throw std::logic_error("report invariant: " + what); };
  if (failed()) return;
  const double pairs = static_cast<double>(qubo_variables) *
                       (static_cast<double>(qubo_variables) - 1.0) / 2.0;
  if (static_cast<double>(qubo_deg2) > pairs) fail("more degree-2 monomials than variable pairs");
  if (qubo_deg1 > qubo_variables) fail("more linear terms than variables");
  if (qubo_deg1 + qubo_deg2 != qubo_monomials) fail("QUBO has terms of degree above 2");
  if (!(sat_density >= 0.0 && sat_density <= 1.0)) fail("sat density outside [0, 1]");
  if (!(qubo_deg2_density >= 0.0 && qubo_deg2_density <= 1.0)) {
    fail("QUBO density outside [0, 1]");
  }
  if (!(time_s >= 0.0)) fail("negative wall time");
  if (p && !(*p >= 0.0 && *p <= 1.0)) fail("percentile outside [0, 1]");
  if (used_variables > pool) fail("more used variables than the pool holds");
}

double sat_density(std::size_t m, std::size_t used_variables, std::size_t k) {
  if (k == 0 || used_variables < k) return 0.0;
  double possible = std::ldexp(1.0, static_cast<int>(k));
  for (std::size_t i = 0; i < k; ++i) {
    possible *= static_cast<double>(used_variables - i) / static_cast<double>(i + 1);
  }
  return static_cast<double>(m) / possible;
}

double qubo_deg2_density(std::size_t deg2, std::size_t variables) {
  if (variables < 2) return 0.0;
  const double pairs =
      static_cast<double>(variables) * static_cast<double>(variables - 1) / 2.0;
  return static_cast<double>(deg2) / pairs;
}

PathReport compute_metrics(const CnfFormula& input, const PathRun& run, std::size_t pool,
                           std::uint64_t seed, std::optional<double> p) {
  PathReport r;
  r.variant = run.variant;
  r.k = input.declared_k().value_or(input.max_clause_size());
  r.m = input.num_clauses();
  r.pool = pool;
  r.used_variables = input.used_variable_count();
  r.seed = seed;
  r.p = uses_mis(run.variant) ? std::nullopt : p;
  r.qubo_variables = run.qubo.occurring_variables().size();
  r.qubo_monomials = run.qubo.count_nonconstant();
  r.qubo_deg2 = run.qubo.count_degree(2);
  r.qubo_deg1 = run.qubo.count_degree(1);
  r.sat_density = sat_density(r.m, r.used_variables, r.k);
  r.qubo_deg2_density = qubo_deg2_density(r.qubo_deg2, r.qubo_variables);
  r.time_s = run.wall_time_seconds;
  return r;
}

const std::string& csv_header() {
  static const std::string header =
      "variant,k,m,pool,used_vars,seed,p,qubo_vars,qubo_monomials,qubo_deg2,qubo_deg1,"
      "sat_density,qubo_deg2_density,time_s,error";
  return header;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

template <typename T>
T parse_number(const std::string& field, const char* column, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": column " + column +
                             " is not a number: '" + field + "'");
  }
  return value;
}

double parse_real(const std::string& field, const char* column, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used == field.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw std::runtime_error("line " + std::to_string(line) + ": column " + column +
                           " is not a real number: '" + field + "'");
}

}  // namespace

std::string to_csv_row(const PathReport& r) {
  std::string row = std::string(to_string(r.variant)) + ',' + std::to_string(r.k) + ',' +
                    std::to_string(r.m) + ',' + std::to_string(r.pool) + ',';
  if (r.failed()) {
    row += ',' + std::to_string(r.seed) + ',' + (r.p ? fmt_double(*r.p) : "") + ",,,,,,,," +
           csv_escape(r.error);
    return row;
  }
  row += std::to_string(r.used_variables) + ',' + std::to_string(r.seed) + ',' +
         (r.p ? fmt_double(*r.p) : "") + ',' + std::to_string(r.qubo_variables) + ',' +
         std::to_string(r.qubo_monomials) + ',' + std::to_string(r.qubo_deg2) + ',' +
         std::to_string(r.qubo_deg1) + ',' + fmt_double(r.sat_density) + ',' +
         fmt_double(r.qubo_deg2_density) + ',' + fmt_double(r.time_s) + ',';
  return row;
}

std::vector<PathReport> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) {
    throw std::runtime_error("line 1: CSV header does not match the sweep schema");
  }
  std::vector<PathReport> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) throw std::runtime_error("line " + std::to_string(lineno) + ": blank line");
    const auto f = csv_split(line);
    if (f.size() != 15) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected 15 columns, got " +
                               std::to_string(f.size()));
    }
    PathReport r;
    auto variant = parse_variant(f[0]);
    if (!variant) throw std::runtime_error("line " + std::to_string(lineno) + ": unknown variant");
    r.variant = *variant;
    r.k = parse_number<std::size_t>(f[1], "k", lineno);
    r.m = parse_number<std::size_t>(f[2], "m", lineno);
    r.pool = parse_number<std::size_t>(f[3], "pool", lineno);
    r.seed = parse_number<std::uint64_t>(f[5], "seed", lineno);
    if (!f[6].empty()) r.p = parse_real(f[6], "p", lineno);
    r.error = f[14];
    if (!r.failed()) {
      r.used_variables = parse_number<std::size_t>(f[4], "used_vars", lineno);
      r.qubo_variables = parse_number<std::size_t>(f[7], "qubo_vars", lineno);
      r.qubo_monomials = parse_number<std::size_t>(f[8], "qubo_monomials", lineno);
      r.qubo_deg2 = parse_number<std::size_t>(f[9], "qubo_deg2", lineno);
      r.qubo_deg1 = parse_number<std::size_t>(f[10], "qubo_deg1", lineno);
      r.sat_density = parse_real(f[11], "sat_density", lineno);
      r.qubo_deg2_density = parse_real(f[12], "qubo_deg2_density", lineno);
      r.time_s = parse_real(f[13], "time_s", lineno);
      if (uses_mis(r.variant) == r.p.has_value()) {
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": p must be empty exactly for choi/choistar rows");
      }
      try {
        r.validate();
      } catch (const std::logic_error& e) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace satpaths
