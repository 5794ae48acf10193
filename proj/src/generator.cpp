#include "satpaths/generator.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace satpaths {

void GeneratorConfig::validate() const {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (n_pool < k) {
    throw std::invalid_argument("pool size " + std::to_string(n_pool) +
                                " is smaller than k = " + std::to_string(k));
  }
  if (deduplicate) {
    // C(n, k) * 2^k distinct clauses exist.
    double possible = std::ldexp(1.0, static_cast<int>(k));
    for (std::size_t i = 0; i < k; ++i) {
      possible *= static_cast<double>(n_pool - i) / static_cast<double>(i + 1);
    }
    if (static_cast<double>(m) > possible) {
      throw std::invalid_argument("cannot draw " + std::to_string(m) +
                                  " distinct clauses from this pool");
    }
  }
}

CnfFormula generate_random_ksat(const GeneratorConfig& cfg) {
  cfg.validate();
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(cfg.n_pool), static_cast<std::uint32_t>(cfg.k),
                    static_cast<std::uint32_t>(cfg.m)};
  std::mt19937_64 rng(seq);
  std::bernoulli_distribution coin(0.5);

  CnfFormula formula(VariableTable::numbered(cfg.n_pool));
  formula.set_declared_k(cfg.k);
  std::vector<Var> pool(cfg.n_pool);
  std::set<std::vector<Literal>> seen;

  while (formula.num_clauses() < cfg.m) {
    // Partial Fisher-Yates: the first k entries become a uniform k-subset.
    std::iota(pool.begin(), pool.end(), Var{0});
    Clause clause;
    for (std::size_t i = 0; i < cfg.k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, cfg.n_pool - 1);
      std::swap(pool[i], pool[pick(rng)]);
      clause.literals.push_back({pool[i], coin(rng)});
    }
    auto normalized = normalize_clause(std::move(clause));
    if (cfg.deduplicate && !seen.insert(normalized->literals).second) continue;
    formula.append_raw(std::move(*normalized));
  }
  return formula;
}

std::string generator_policy() {
  return "mt19937_64 seeded with seed_seq(seed_lo, seed_hi, pool, k, m); each clause draws "
         "a uniform k-subset of the pool with independent fair signs, which equals sampling "
         "k literals uniformly and rejecting clauses with a repeated variable";
}

}  // namespace satpaths
