#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "satpaths/dimacs.hpp"
#include "satpaths/generator.hpp"
#include "satpaths/pbf.hpp"
#include "satpaths/reductions.hpp"
#include "support.hpp"

using namespace satpaths;

namespace {

Clause clause(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.literals.push_back({static_cast<Var>(std::abs(l) - 1), l < 0});
  return c;
}

const char* kTwoClauseText = "p cnf 5 2\n1 2 -4 5 0\n-1 3 -4 -5 0\n";

}  // namespace

TEST(Clause, DuplicateLiteralsCollapse) {
  EXPECT_EQ(*normalize_clause(clause({1, 1, 2})), clause({1, 2}));
}

TEST(Clause, ComplementaryPairIsTautology) {
  EXPECT_FALSE(normalize_clause(clause({1, -1, 2})).has_value());
}

TEST(Clause, CanonicalOrder) {
  EXPECT_EQ(*normalize_clause(clause({2, -4, 1})), clause({1, 2, -4}));
}

TEST(Clause, EmptyClauseThrows) {
  EXPECT_THROW(normalize_clause(Clause{}), UnsatisfiableClauseError);
}

TEST(VariableTable, FreshNamesAvoidCollisions) {
  VariableTable t({"a", "_y1"});
  EXPECT_EQ(t.name(t.add_fresh("y")), "_y2");
  EXPECT_EQ(t.name(t.add_fresh("y")), "_y3");
  EXPECT_EQ(t.name(t.add_fresh("t")), "_t1");
  EXPECT_EQ(*t.find("_y3"), 3u);
}

TEST(Formula, SatisfactionAndCounts) {
  CnfFormula f(VariableTable::numbered(3));
  f.add_clause(clause({1, 2}));
  f.add_clause(clause({-1, 3}));
  EXPECT_FALSE(f.add_clause(clause({2, -2})));
  EXPECT_EQ(f.num_clauses(), 2u);
  EXPECT_EQ(f.total_literals(), 4u);
  EXPECT_TRUE(f.satisfied_by({true, false, true}));
  EXPECT_EQ(f.count_satisfied({true, false, false}), 1u);
  EXPECT_EQ(f.used_variable_count(), 3u);
}

TEST(Dimacs, SingleClause) {
  const auto f = parse_dimacs(std::string("p cnf 3 1\n1 -2 3 0\n"));
  ASSERT_EQ(f.num_clauses(), 1u);
  EXPECT_EQ(f.clauses()[0], clause({1, -2, 3}));
  EXPECT_EQ(f.variables().name(1), "x2");
}

TEST(Dimacs, TwoClauseFourSat) {
  const auto f = parse_dimacs(std::string(kTwoClauseText));
  ASSERT_EQ(f.num_clauses(), 2u);
  EXPECT_EQ(f.clauses()[0], clause({1, 2, -4, 5}));
  EXPECT_EQ(f.clauses()[1], clause({-1, 3, -4, -5}));
  EXPECT_TRUE(f.is_exact_k(4));
}

TEST(Dimacs, RoundTrip) {
  const auto f = parse_dimacs(std::string(kTwoClauseText));
  EXPECT_EQ(write_dimacs(f), kTwoClauseText);
  EXPECT_TRUE(same_clauses(parse_dimacs(write_dimacs(f)), f));
}

TEST(Dimacs, CommentsAndMultiLineClauses) {
  const auto f = parse_dimacs(std::string("c hello\np cnf 3 2\n1 2\n3 0 -1\n0\n%\n0\n"));
  EXPECT_EQ(f.num_clauses(), 2u);
  EXPECT_EQ(f.clauses()[1], clause({-1}));
}

TEST(Dimacs, TautologyDroppedWithWarning) {
  std::vector<std::string> warnings;
  const auto f = parse_dimacs(std::string("p cnf 2 2\n1 -1 0\n1 2 0\n"), &warnings);
  EXPECT_EQ(f.num_clauses(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Dimacs, Errors) {
  auto kind_of = [](const std::string& text) {
    try {
      parse_dimacs(text);
    } catch (const DimacsError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error for: " << text;
    return DimacsError::Kind::MissingHeader;
  };
  using K = DimacsError::Kind;
  EXPECT_EQ(kind_of("1 2 0\n"), K::MissingHeader);
  EXPECT_EQ(kind_of("p cnf x 1\n1 0\n"), K::MalformedHeader);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 a 0\n"), K::UnexpectedToken);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 3 0\n"), K::VariableOutOfRange);
  EXPECT_EQ(kind_of("p cnf 2 2\n1 0\n0\n"), K::EmptyClause);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 2\n"), K::UnterminatedClause);
  EXPECT_EQ(kind_of("p cnf 2 2\n1 2 0\n"), K::ClauseCountMismatch);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 -1 0\n"), K::NoClausesLeft);
}

TEST(Dimacs, ErrorNamesLine) {
  try {
    parse_dimacs(std::string("p cnf 2 2\n1 2 0\n1 7 0\n"));
    FAIL();
  } catch (const DimacsError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Pbf, CancellationToConstant) {
  Pbf f(VariableTable::numbered(3));
  f.add_term({}, 1.0);
  f.add_term({0, 1, 2}, -1.0);
  f.add_term({2, 0, 1}, 1.0);
  EXPECT_EQ(f.num_terms(), 1u);
  EXPECT_EQ(f.constant_term(), 1.0);
  EXPECT_EQ(f.degree(), 0u);
}

TEST(Pbf, IdempotentSupport) {
  Pbf f(VariableTable::numbered(2));
  f.add_term({0, 0}, 2.0);
  EXPECT_EQ(f.coefficient({0}), 2.0);
  EXPECT_EQ(pbf_multiply_factor(f, {0, false}).coefficient({0}), 2.0);
}

TEST(Pbf, ComplementTimesVariableVanishes) {
  auto vars = VariableTable::numbered(1);
  auto f = pbf_multiply_factor(Pbf::constant(vars, 1.0), {0, true});
  f = pbf_multiply_factor(f, {0, false});
  EXPECT_EQ(f.num_terms(), 0u);
}

TEST(Pbf, ClauseExpansion) {
  // 1 * (1 - x2) * (1 - x3) * x4
  auto vars = VariableTable::numbered(4);
  auto f = Pbf::constant(vars, 1.0);
  f = pbf_multiply_factor(f, {1, true});
  f = pbf_multiply_factor(f, {2, true});
  f = pbf_multiply_factor(f, {3, false});
  Pbf expected(vars);
  expected.add_term({3}, 1);
  expected.add_term({1, 3}, -1);
  expected.add_term({2, 3}, -1);
  expected.add_term({1, 2, 3}, 1);
  EXPECT_EQ(f, expected);
}

TEST(Pbf, AdditionMergesTablesByName) {
  Pbf a(VariableTable({"a", "b"}));
  a.add_term({0, 1}, 1.0);
  Pbf b(VariableTable({"c", "a"}));
  b.add_term({1}, 2.0);
  b.add_term({0}, -1.0);
  const auto s = pbf_add(a, b);
  ASSERT_EQ(s.num_variables(), 3u);
  EXPECT_EQ(s.variables().name(2), "c");
  EXPECT_EQ(s.coefficient({0}), 2.0);
  EXPECT_EQ(s.coefficient({2}), -1.0);
  EXPECT_EQ(pbf_add(a, Pbf(a.variables())), a);
  EXPECT_THROW(pbf_add(a, Pbf(a.variables(), Sense::Min)), std::invalid_argument);
}

TEST(Pbf, Degrees) {
  Pbf f(VariableTable::numbered(3));
  f.add_term({0, 1, 2}, 3.0);
  EXPECT_EQ(f.degree(), 3u);
  Pbf g(VariableTable::numbered(2));
  g.add_term({0, 1}, 3.14159);
  EXPECT_EQ(pbf_degree(g), 2u);
  EXPECT_EQ(Pbf::constant(VariableTable::numbered(2), 5.0).degree(), 0u);
}

TEST(Pbf, EvaluateChecksLength) {
  Pbf f(VariableTable::numbered(3));
  f.add_term({0, 1, 2}, -1.0);
  f.add_term({}, 1.0);
  EXPECT_EQ(f.evaluate({true, true, true}), 0.0);
  EXPECT_EQ(f.evaluate({false, false, false}), 1.0);
  EXPECT_THROW(f.evaluate({true}), std::invalid_argument);
}

TEST(Pbf, TwoClauseSatisfactionCount) {
  // (~x1 | ~x2 | ~x3) and (x2 | x3 | ~x4): both hold at the all-zero point.
  CnfFormula f(VariableTable::numbered(4));
  f.add_clause(clause({-1, -2, -3}));
  f.add_clause(clause({2, 3, -4}));
  const auto count = sat_to_pubo(f, Sense::Max);
  EXPECT_EQ(count.evaluate({false, false, false, false}), 2.0);
  const auto four = parse_dimacs(std::string(kTwoClauseText));
  EXPECT_EQ(sat_to_pubo(four, Sense::Max).evaluate({true, false, false, false, false}), 2.0);
}

TEST(Pbf, RandomEvaluationMatchesDirectSum) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testing_support::random_pbf(rng, 6, 8, 4);
    for (std::uint64_t b = 0; b < 64; ++b) {
      const auto x = testing_support::unpack(b, 6);
      EXPECT_EQ(f.evaluate(x), testing_support::direct_value(f, x));
    }
  }
}

TEST(Generator, ExactKAcrossConfigs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 2 + rng() % 9;
    const std::size_t pool = k + rng() % 12;
    const std::size_t m = 1 + rng() % 30;
    const auto f = generate_random_ksat({pool, k, m, rng(), false});
    ASSERT_EQ(f.num_clauses(), m);
    ASSERT_TRUE(f.is_exact_k(k));
    ASSERT_EQ(f.num_variables(), pool);
    ASSERT_LE(f.used_variable_count(), pool);
    for (const auto& c : f.clauses()) ASSERT_EQ(*normalize_clause(c), c);
  }
}

TEST(Generator, SixSatFiveClauses) {
  const auto f = generate_random_ksat({14, 6, 5, 42, false});
  EXPECT_TRUE(f.is_exact_k(6));
  EXPECT_EQ(f.num_clauses(), 5u);
  EXPECT_LE(f.used_variable_count(), 14u);
}

TEST(Generator, FullPoolClauses) {
  const auto f = generate_random_ksat({5, 5, 8, 3, false});
  for (const auto& c : f.clauses()) EXPECT_EQ(c.size(), 5u);
  EXPECT_EQ(f.used_variable_count(), 5u);
}

TEST(Generator, Deterministic) {
  for (std::uint64_t seed : {0ull, 1ull, 0xdeadbeefcafeull}) {
    const GeneratorConfig cfg{20, 4, 30, seed, false};
    EXPECT_EQ(write_dimacs(generate_random_ksat(cfg)), write_dimacs(generate_random_ksat(cfg)));
  }
  EXPECT_NE(write_dimacs(generate_random_ksat({20, 4, 30, 1, false})),
            write_dimacs(generate_random_ksat({20, 4, 30, 2, false})));
}

TEST(Generator, Deduplicate) {
  const auto f = generate_random_ksat({4, 3, 32, 5, true});
  std::set<std::vector<Literal>> seen;
  for (const auto& c : f.clauses()) EXPECT_TRUE(seen.insert(c.literals).second);
  EXPECT_THROW(generate_random_ksat({4, 3, 33, 5, true}), std::invalid_argument);
}

TEST(Generator, RejectsBadConfig) {
  EXPECT_THROW(generate_random_ksat({3, 4, 1, 0, false}), std::invalid_argument);
  EXPECT_THROW(generate_random_ksat({3, 3, 0, 0, false}), std::invalid_argument);
}

// Variable choice is a uniform k-subset and signs are fair coins.
TEST(Generator, RoughlyUniformLiterals) {
  const auto f = generate_random_ksat({10, 3, 20000, 9, false});
  std::vector<int> counts(20, 0);
  for (const auto& c : f.clauses())
    for (const auto& l : c.literals) ++counts[2 * l.variable + l.negated];
  for (int c : counts) EXPECT_NEAR(c, 3000, 250);
}
