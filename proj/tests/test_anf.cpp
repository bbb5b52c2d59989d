#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "anfcnf/anf.hpp"
#include "oracle.hpp"

using namespace anfcnf;

namespace {

Polynomial P(std::vector<std::vector<Var>> monos, bool constant = false) {
  std::vector<Monomial> ms;
  for (auto& m : monos) ms.push_back(Monomial(std::move(m)));
  if (constant) ms.push_back(Monomial::one());
  return Polynomial::from_monomials(std::move(ms));
}

}  // namespace

TEST_CASE("monomial canonical form and graded-lex order") {
  CHECK(Monomial({2, 0, 2}) == Monomial({0, 2}));  // idempotence x*x = x
  CHECK(Monomial::one().degree() == 0);
  CHECK(Monomial::one() < Monomial::variable(0));
  CHECK(Monomial::variable(5) < Monomial({0, 1}));     // degree first
  CHECK(Monomial({0, 2}) < Monomial({1, 2}));          // then lex
  CHECK(Monomial({1, 2}) < Monomial({0, 1, 2}));
  CHECK(Monomial({0, 1}).times(Monomial({1, 2})) == Monomial({0, 1, 2}));
  CHECK(Monomial({0, 1, 2}).without(1) == Monomial({0, 2}));
  CHECK(Monomial({0, 1}).contains(1));
  CHECK(!Monomial({0, 1}).contains(2));
}

TEST_CASE("normalization: XOR self-cancellation and idempotence") {
  CHECK(P({{0, 1}, {0, 1}}).is_zero());                        // x1x2+x1x2 = 0
  CHECK(Monomial({0, 0}) == Monomial({0}));                    // x1*x1 = x1
  // (x2+x3)*x2 + x2x3 + 1 = x2 + 1
  Polynomial lhs = (Polynomial::variable(1) ^ Polynomial::variable(2))
                       .times(Monomial::variable(1));
  lhs ^= P({{1, 2}}, true);
  CHECK(lhs == P({{1}}, true));
}

TEST_CASE("polynomial XOR and product agree with evaluation semantics") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    Polynomial a = oracle::random_poly(rng, 6, 3, 5);
    Polynomial b = oracle::random_poly(rng, 6, 3, 5);
    Polynomial s = a ^ b;
    Polynomial prod = a.times(b);
    for (uint64_t m = 0; m < 64; ++m) {
      CHECK(oracle::eval_poly(s, m) ==
            (oracle::eval_poly(a, m) ^ oracle::eval_poly(b, m)));
      CHECK(oracle::eval_poly(prod, m) ==
            (oracle::eval_poly(a, m) && oracle::eval_poly(b, m)));
    }
    // evaluate() itself matches the oracle evaluator
    std::vector<bool> assign(6);
    for (int v = 0; v < 6; ++v) assign[v] = rng() & 1;
    uint64_t mask = 0;
    for (int v = 0; v < 6; ++v) mask |= uint64_t(assign[v]) << v;
    CHECK(a.evaluate(assign) == oracle::eval_poly(a, mask));
  }
}

TEST_CASE("substituted() replaces the variable semantically") {
  // substitute x1 := x2+x3 in x1x2 + x2x3 + 1 -> x2 + 1
  Polynomial p = P({{0, 1}, {1, 2}}, true);
  Polynomial repl = Polynomial::variable(1) ^ Polynomial::variable(2);
  CHECK(p.substituted(0, repl) == P({{1}}, true));
  // substitute x2 := 1 in x1x2 + x2x3 + 1 -> x1 + x3 + 1
  CHECK(p.substituted(1, Polynomial::one()) == P({{0}, {2}}, true));
  // substitution of an absent variable changes nothing
  CHECK(p.substituted(7, Polynomial::zero()) == p);

  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    Polynomial a = oracle::random_poly(rng, 6, 3, 5);
    Polynomial r = oracle::random_poly(rng, 6, 2, 3);
    Var v = rng() % 6;
    if (r.contains_var(v)) continue;
    Polynomial sub = a.substituted(v, r);
    for (uint64_t m = 0; m < 64; ++m) {
      uint64_t m2 = (m & ~(uint64_t(1) << v)) |
                    (uint64_t(oracle::eval_poly(r, m)) << v);
      CHECK(oracle::eval_poly(sub, m) == oracle::eval_poly(a, m2));
    }
  }
}

TEST_CASE("system substitute: precondition and occurrence locality") {
  AnfSystem sys(3);
  sys.add_poly(P({{0, 1}, {1, 2}}, true));
  CHECK_THROWS_AS(sys.substitute(0, Polynomial::variable(0)),
                  std::invalid_argument);
  sys.substitute(0, Polynomial::variable(1) ^ Polynomial::variable(2));
  REQUIRE(sys.polys().size() == 1);
  CHECK(sys.polys()[0] == P({{1}}, true));
}

TEST_CASE("occurrence lists track polynomial membership exactly") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 50; ++it) {
    AnfSystem sys(8);
    auto polys = oracle::random_system(rng, 8, 3, 6);
    for (const auto& p : polys) sys.add_poly(p);
    if (it % 2) sys.propagate();
    for (Var v = 0; v < sys.num_vars(); ++v) {
      for (uint32_t i = 0; i < sys.polys().size(); ++i) {
        bool in_occ = sys.occurrences(v).count(i) > 0;
        CHECK(in_occ == sys.polys()[i].contains_var(v));
      }
    }
  }
}

TEST_CASE("propagation trigger shapes") {
  SUBCASE("x + 1 assigns the value one") {
    AnfSystem sys(1);
    sys.add_poly(P({{0}}, true));
    auto facts = sys.propagate();
    CHECK(sys.value(0) == true);
    CHECK(sys.nonzero_count() == 0);
    REQUIRE(facts.size() == 1);
    CHECK(facts[0].poly == P({{0}}, true));
  }
  SUBCASE("monomial + 1 assigns every variable one") {
    AnfSystem sys(3);
    sys.add_poly(P({{0, 1, 2}}, true));
    sys.propagate();
    CHECK(sys.value(0) == true);
    CHECK(sys.value(1) == true);
    CHECK(sys.value(2) == true);
    CHECK(sys.fully_reduced());
  }
  SUBCASE("x + y + 1 records an antivalence") {
    AnfSystem sys(2);
    sys.add_poly(P({{0}, {1}}, true));
    sys.propagate();
    CHECK(sys.find(1) == Lit{0, true});
    CHECK(!sys.value(0).has_value());
  }
  SUBCASE("x + y records an equivalence with the lowest index canonical") {
    AnfSystem sys(3);
    sys.add_poly(P({{1}, {2}}));
    sys.propagate();
    CHECK(sys.find(2) == Lit{1, false});
    CHECK(sys.find(1) == Lit{1, false});
  }
  SUBCASE("x and x + 1 together contradict") {
    AnfSystem sys(1);
    sys.add_poly(P({{0}}));
    sys.add_poly(P({{0}}, true));
    sys.propagate();
    CHECK(sys.contradiction());
  }
}

TEST_CASE("propagation reaches the normal form: no trigger shape remains") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 100; ++it) {
    AnfSystem sys(8);
    for (const auto& p : oracle::random_system(rng, 8, 2, 8, 4))
      sys.add_poly(p);
    sys.propagate();
    if (sys.contradiction()) continue;
    for (const auto& p : sys.polys()) {
      if (p.is_zero()) continue;
      const auto& ms = p.monomials();
      bool trigger =
          (ms.size() == 1 && ms[0].degree() <= 1) ||
          (ms.size() == 2 && ms[0].is_one()) ||
          (ms.size() == 2 && ms[0].degree() == 1 && ms[1].degree() == 1) ||
          (ms.size() == 3 && ms[0].is_one() && ms[1].degree() == 1 &&
           ms[2].degree() == 1);
      CHECK(!trigger);
    }
  }
}

TEST_CASE("propagation preserves the solution set") {
  std::mt19937_64 rng(19);
  const uint32_t n = 8;
  for (int it = 0; it < 100; ++it) {
    auto input = oracle::random_system(rng, n, 3, 6);
    auto before = oracle::anf_solutions(input, n);

    AnfSystem sys(n);
    for (const auto& p : input) sys.add_poly(p);
    sys.propagate();

    if (sys.contradiction()) {
      CHECK(before.empty());
      continue;
    }
    // residual polynomials plus the recorded state must carve out exactly
    // the original solutions
    std::vector<uint64_t> after;
    for (uint64_t a = 0; a < (uint64_t(1) << n); ++a) {
      bool ok = oracle::satisfies_all(sys.nonzero_polys(), a);
      for (Var v = 0; v < n && ok; ++v) {
        auto val = sys.value(v);
        if (val && bool((a >> v) & 1) != *val) ok = false;
        Lit root = sys.find(v);
        if (root.var != v &&
            bool((a >> v) & 1) != (bool((a >> root.var) & 1) ^ root.neg))
          ok = false;
      }
      if (ok) after.push_back(a);
    }
    CHECK(before == after);
  }
}

TEST_CASE("propagation never increases undetermined variables") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 50; ++it) {
    AnfSystem sys(8);
    for (const auto& p : oracle::random_system(rng, 8, 2, 6, 3))
      sys.add_poly(p);
    auto undetermined = [&] {
      int u = 0;
      for (Var v = 0; v < 8; ++v)
        if (!sys.value(v)) ++u;
      return u;
    };
    int before = undetermined();
    sys.propagate();
    CHECK(undetermined() <= before);
  }
}

TEST_CASE("add_facts deduplicates and re-propagates") {
  AnfSystem sys(4);
  LearntFact f = LearntFact::linear(P({{2}}, true));
  CHECK(sys.add_facts({f, f}) == 1);          // added once
  CHECK(sys.add_facts({f}) == 0);             // already known
  CHECK(sys.value(2) == true);

  CHECK(sys.add_facts({LearntFact::linear(P({{0}, {1}}))}) == 1);
  CHECK(sys.find(1) == Lit{0, false});

  CHECK(sys.add_facts({LearntFact::linear(Polynomial::one())}) == 1);
  CHECK(sys.contradiction());
}

TEST_CASE("duplicate polynomials are dropped on load") {
  AnfSystem sys(3);
  Polynomial p = P({{0, 1}, {2}}, true);
  CHECK(sys.add_poly(p));
  CHECK(!sys.add_poly(p));
  CHECK(sys.nonzero_count() == 1);
}

TEST_CASE("learnt fact constructors validate their shapes") {
  CHECK_THROWS_AS(LearntFact::linear(P({{0, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(LearntFact::monomial_one(P({{0, 1}, {2}}, true)),
                  std::invalid_argument);
  CHECK_THROWS_AS(LearntFact::monomial_one(P({{0, 1}})),
                  std::invalid_argument);
  CHECK(LearntFact::classify(P({{0, 1}}, true))->kind ==
        LearntFact::Kind::MonomialOne);
  CHECK(LearntFact::classify(P({{0}, {1}}))->kind == LearntFact::Kind::Linear);
  CHECK(!LearntFact::classify(P({{0, 1}, {2}})).has_value());
}

TEST_CASE("state_model respects values and equivalences") {
  AnfSystem sys(4);
  sys.add_poly(P({{0}}, true));        // x1 = 1
  sys.add_poly(P({{1}, {2}}, true));   // x2 = !x3
  sys.propagate();
  auto m = sys.state_model();
  CHECK(m[0] == true);
  CHECK(m[1] != m[2]);
}
