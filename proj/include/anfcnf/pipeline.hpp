#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anfcnf/anf.hpp"
#include "anfcnf/cnf.hpp"
#include "anfcnf/elimlin.hpp"
#include "anfcnf/linearize.hpp"
#include "anfcnf/solver.hpp"

namespace anfcnf {

struct PipelineConfig {
  XlParams xl;
  ConvParams conv;
  ConflictBudget budget;
  double max_seconds = 0;  // 0 = no wall-time bound
  bool stop_on_sat = true;
  bool learn = true;  // false: convert only, no fact-learning loop
};

enum class Phase { Propagate, Xl, ElimLin, Sat };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Propagate: return "propagate";
    case Phase::Xl: return "xl";
    case Phase::ElimLin: return "elimlin";
    case Phase::Sat: return "sat";
  }
  return "?";
}

struct PhaseTrace {
  uint32_t iteration = 0;
  Phase phase = Phase::Propagate;
  std::vector<LearntFact> facts;    // facts produced by the phase itself
  std::size_t new_facts = 0;        // how many changed the master system
};

struct PipelineResult {
  enum class Status { Sat, Unsat, Fixpoint };

  Status status = Status::Fixpoint;
  AnfSystem processed;
  std::vector<CnfClause> cnf;
  MonomialVarMap map;
  std::vector<LearntFact> facts;
  std::optional<std::vector<bool>> model;  // over original variables
  std::vector<PhaseTrace> trace;
  uint32_t iterations = 0;
  bool budget_terminated = false;
};

/// The fact-learning loop: ANF propagation on the input, then repeated
/// XL -> ElimLin -> SAT passes with propagation applied to the master after
/// every phase. XL works on a snapshot of the master taken at the start of
/// the iteration; ElimLin works on that snapshot plus the facts XL just
/// produced (appended as raw equations), so the two phases attribute their
/// facts independently of the propagation running in between. The SAT phase
/// converts the current master. Stops at a full pass with no new facts, on
/// contradiction, or (optionally) on a satisfying SAT assignment.
inline PipelineResult run_pipeline(const AnfSystem& input,
                                   const PipelineConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const uint32_t orig_vars = input.num_vars();

  PipelineResult res;
  AnfSystem master = input;

  auto finish = [&](PipelineResult::Status st) {
    res.status = st;
    res.processed = master;
    auto conv = anf_to_cnf(master, cfg.conv);
    res.cnf = std::move(conv.clauses);
    res.map = std::move(conv.map);
    return res;
  };

  auto out_of_time = [&] {
    if (cfg.max_seconds <= 0) return false;
    return std::chrono::duration<double>(clock::now() - t0).count() >
           cfg.max_seconds;
  };

  auto record = [&](uint32_t iter, Phase ph, std::vector<LearntFact> facts,
                    std::size_t fresh) {
    res.facts.insert(res.facts.end(), facts.begin(), facts.end());
    res.trace.push_back(PhaseTrace{iter, ph, std::move(facts), fresh});
  };

  {
    auto facts = master.propagate();
    record(0, Phase::Propagate, std::move(facts), 0);
  }
  if (master.contradiction()) return finish(PipelineResult::Status::Unsat);
  if (!cfg.learn) {
    if (master.fully_reduced()) {
      res.model = master.state_model();
      res.model->resize(orig_vars);
      return finish(PipelineResult::Status::Sat);
    }
    return finish(PipelineResult::Status::Fixpoint);
  }

  if (master.fully_reduced()) {
    res.model = master.state_model();
    res.model->resize(orig_vars);
    return finish(PipelineResult::Status::Sat);
  }

  uint64_t sat_budget = cfg.budget.start;

  for (uint32_t iter = 1;; ++iter) {
    res.iterations = iter;
    AnfSystem snapshot = master;
    std::size_t fresh_total = 0;

    // XL
    {
      auto expanded = xl_expand(snapshot, cfg.xl);
      auto [mat, lmap] = linearize(expanded);
      GaussResult gj = gauss_jordan(std::move(mat));
      auto facts = extract_facts(gj.rref, lmap);
      std::size_t fresh = master.add_facts(facts);
      fresh_total += fresh;
      record(iter, Phase::Xl, std::move(facts), fresh);
      if (master.contradiction()) return finish(PipelineResult::Status::Unsat);
    }

    // ElimLin: the snapshot augmented with this iteration's XL facts
    {
      AnfSystem el_input = snapshot;
      for (const auto& t : res.trace)
        if (t.iteration == iter && t.phase == Phase::Xl)
          for (const auto& f : t.facts) el_input.add_poly(f.poly);
      auto el = elimlin(el_input, cfg.xl);
      std::size_t fresh = master.add_facts(el.facts);
      fresh_total += fresh;
      record(iter, Phase::ElimLin, std::move(el.facts), fresh);
      if (master.contradiction()) return finish(PipelineResult::Status::Unsat);
    }

    // SAT: the CNF is regenerated from the current master, never reused
    {
      auto conv = anf_to_cnf(master, cfg.conv);
      SolveOutcome outcome =
          solve_cnf(conv.clauses, conv.map.num_vars, sat_budget);
      auto facts = extract_sat_facts(outcome, conv.map, conv.clauses);
      std::size_t fresh = master.add_facts(facts);
      fresh_total += fresh;
      record(iter, Phase::Sat, std::move(facts), fresh);
      if (master.contradiction() || outcome.status == SolveStatus::Unsat)
        return finish(PipelineResult::Status::Unsat);

      if (outcome.status == SolveStatus::Sat) {
        // The model is stored but never used to simplify the master ANF.
        AnfSystem probe = snapshot;
        std::vector<bool> model(orig_vars, false);
        for (Var v = 0; v < orig_vars; ++v) {
          auto val = probe.value(v);
          if (val)
            model[v] = *val;
          else if (v < outcome.model.size())
            model[v] = outcome.model[v];
        }
        res.model = std::move(model);
        if (cfg.stop_on_sat) return finish(PipelineResult::Status::Sat);
      }
      if (fresh == 0)
        sat_budget = std::min(sat_budget + cfg.budget.step, cfg.budget.cap);
    }

    if (master.fully_reduced()) {
      AnfSystem probe = master;
      auto model = probe.state_model();
      model.resize(orig_vars);
      res.model = std::move(model);
      return finish(PipelineResult::Status::Sat);
    }
    if (fresh_total == 0) return finish(PipelineResult::Status::Fixpoint);
    if (out_of_time()) {
      res.budget_terminated = true;
      return finish(PipelineResult::Status::Fixpoint);
    }
  }
}

}  // namespace anfcnf
