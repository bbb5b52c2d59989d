#pragma once

#include <cstdint>
#include <vector>

#include "anfcnf/anf.hpp"
#include "anfcnf/bitmatrix.hpp"
#include "anfcnf/linearize.hpp"

namespace anfcnf {

/// Ordered variable eliminations, replayable in reverse to reconstruct
/// eliminated variables from a solution of the reduced system.
struct SubstitutionRecord {
  std::vector<std::pair<Var, Polynomial>> steps;
};

struct ElimLinResult {
  std::vector<Polynomial> reduced;
  std::vector<LearntFact> facts;
  SubstitutionRecord record;
  bool contradiction = false;
};

/// ElimLin: (1) Gauss-Jordan on the linearization, (2) harvest the linear
/// rows as facts and remove them, (3) eliminate one variable per linear
/// equation by substitution, picking the variable occurring in the fewest
/// remaining equations (ties: lowest index). Repeats until no linear rows
/// survive the elimination step.
inline ElimLinResult elimlin(const AnfSystem& sys, const XlParams& budget) {
  ElimLinResult res;
  std::vector<Polynomial> working =
      detail::subsample(sys.nonzero_polys(), budget.sample_bits, budget.seed);

  for (;;) {
    if (working.empty()) break;
    auto [mat, map] = linearize(working);
    GaussResult gj = gauss_jordan(std::move(mat));

    std::vector<Polynomial> linear;
    std::vector<Polynomial> rest;
    for (std::size_t r = 0; r < gj.rank; ++r) {
      Polynomial p = delinearize_row(gj.rref, map, r);
      if (p.is_one()) {
        res.facts.push_back(LearntFact::linear(Polynomial::one()));
        res.contradiction = true;
        return res;
      }
      if (p.degree() <= 1)
        linear.push_back(std::move(p));
      else
        rest.push_back(std::move(p));
    }
    if (linear.empty()) {
      working = std::move(rest);
      break;
    }
    for (const auto& l : linear) res.facts.push_back(LearntFact::linear(l));

    working = std::move(rest);
    for (std::size_t k = 0; k < linear.size(); ++k) {
      Polynomial eq = linear[k];
      // reduce by the substitutions already applied in this batch
      for (const auto& [v, repl] : res.record.steps)
        if (eq.contains_var(v)) eq = eq.substituted(v, repl);
      if (eq.is_zero()) continue;
      if (eq.is_one()) {
        res.facts.push_back(LearntFact::linear(Polynomial::one()));
        res.contradiction = true;
        return res;
      }

      // variable occurring in the fewest equations of the remainder
      Var best = 0;
      std::size_t best_count = SIZE_MAX;
      for (Var v : eq.vars()) {
        std::size_t count = 0;
        for (const auto& q : working)
          if (q.contains_var(v)) ++count;
        if (count < best_count) {
          best_count = count;
          best = v;
        }
      }
      Polynomial repl = eq ^ Polynomial::variable(best);
      res.record.steps.emplace_back(best, repl);

      std::vector<Polynomial> next;
      for (const auto& q : working) {
        Polynomial nq =
            q.contains_var(best) ? q.substituted(best, repl) : q;
        if (nq.is_one()) {
          res.facts.push_back(LearntFact::linear(Polynomial::one()));
          res.contradiction = true;
          return res;
        }
        if (!nq.is_zero()) next.push_back(std::move(nq));
      }
      working = std::move(next);
    }
  }
  res.reduced = std::move(working);
  return res;
}

/// Replays a substitution record in reverse over a partial assignment of the
/// surviving variables, then resolves equivalence classes through their
/// canonical representatives. Throws if a needed variable is unassigned.
inline std::vector<bool> reconstruct_model(
    const std::vector<std::optional<bool>>& partial,
    const SubstitutionRecord& record, AnfSystem& states) {
  std::vector<std::optional<bool>> full = partial;
  auto need = [&](Var v) -> bool {
    if (v >= full.size() || !full[v])
      throw std::invalid_argument("missing assignment for free variable");
    return *full[v];
  };

  for (auto it = record.steps.rbegin(); it != record.steps.rend(); ++it) {
    const auto& [v, repl] = *it;
    bool val = false;
    for (const auto& m : repl.monomials()) {
      bool term = true;
      for (Var w : m.vars()) term = term && need(w);
      val ^= term;
    }
    if (v >= full.size()) full.resize(v + 1);
    full[v] = val;
  }

  std::vector<bool> out(std::max<std::size_t>(full.size(), states.num_vars()),
                        false);
  for (Var v = 0; v < out.size(); ++v) {
    auto sv = v < states.num_vars() ? states.value(v) : std::nullopt;
    if (v < full.size() && full[v]) {
      out[v] = *full[v];
    } else if (sv) {
      out[v] = *sv;
    } else if (v < states.num_vars()) {
      Lit root = states.find(v);
      if (root.var != v)
        out[v] = (root.var < full.size() && full[root.var]
                      ? *full[root.var]
                      : out[root.var]) ^
                 root.neg;
      else
        throw std::invalid_argument("missing assignment for free variable");
    } else {
      throw std::invalid_argument("missing assignment for free variable");
    }
  }
  return out;
}

}  // namespace anfcnf
