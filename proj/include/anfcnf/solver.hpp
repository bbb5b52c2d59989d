#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "anfcnf/anf.hpp"
#include "anfcnf/cnf.hpp"

namespace anfcnf {

enum class SolveStatus { Sat, Unsat, Unknown };

/// Conflict schedule for the pipeline's SAT phase: the budget starts at
/// `start` and grows by `step` up to `cap` whenever the SAT phase yields no
/// new facts.
struct ConflictBudget {
  uint64_t start = 10'000;
  uint64_t step = 10'000;
  uint64_t cap = 100'000;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unknown;
  std::vector<bool> model;          // valid when status == Sat
  std::vector<CnfClause> learnt;    // clauses learnt from conflicts
  std::vector<CLit> fixed;          // literals implied at decision level 0
  uint64_t conflicts = 0;
};

/// CDCL solver: two-watched-literal propagation, first-UIP learning,
/// activity-based branching with phase saving, Luby restarts. Seedless and
/// deterministic; a hard conflict budget yields Unknown instead of running
/// unbounded.
class CdclSolver {
 public:
  CdclSolver(uint32_t num_vars, const std::vector<CnfClause>& clauses)
      : nvars_(num_vars) {
    for (const auto& c : clauses)
      for (CLit l : c) nvars_ = std::max(nvars_, l.var() + 1);
    assign_.assign(nvars_, -1);
    level_.assign(nvars_, 0);
    reason_.assign(nvars_, -1);
    activity_.assign(nvars_, 0.0);
    phase_.assign(nvars_, false);
    seen_.assign(nvars_, false);
    watches_.assign(2 * nvars_, {});
    for (const auto& c : clauses) add_input_clause(c);
  }

  SolveOutcome solve(uint64_t max_conflicts) {
    SolveOutcome out;
    if (!ok_) {
      out.status = SolveStatus::Unsat;
      return out;
    }
    uint64_t restart_idx = 1;
    uint64_t restart_limit = luby(restart_idx) * 64;
    uint64_t conflicts_since_restart = 0;

    for (;;) {
      int confl = propagate();
      if (confl >= 0) {
        ++out.conflicts;
        if (decision_level() == 0) {
          out.status = SolveStatus::Unsat;
          break;
        }
        if (out.conflicts > max_conflicts) {
          out.status = SolveStatus::Unknown;
          cancel_until(0);
          propagate();
          break;
        }
        CnfClause learnt;
        uint32_t bt_level = 0;
        analyze(confl, learnt, bt_level);
        cancel_until(bt_level);
        out.learnt.push_back(make_clause(learnt));
        attach_learnt(learnt);
        var_inc_ /= kVarDecay;
        ++conflicts_since_restart;
        if (conflicts_since_restart >= restart_limit) {
          conflicts_since_restart = 0;
          restart_limit = luby(++restart_idx) * 64;
          cancel_until(0);
        }
      } else {
        uint32_t next = pick_branch_var();
        if (next == nvars_) {
          out.status = SolveStatus::Sat;
          out.model.assign(nvars_, false);
          for (uint32_t v = 0; v < nvars_; ++v) out.model[v] = assign_[v] == 1;
          break;
        }
        trail_lim_.push_back(static_cast<uint32_t>(trail_.size()));
        enqueue(CLit(next, !phase_[next]), -1);
      }
    }
    for (std::size_t i = 0;
         i < trail_.size() && (trail_lim_.empty() || i < trail_lim_[0]); ++i)
      out.fixed.push_back(trail_[i]);
    if (out.status == SolveStatus::Unsat)
      out.fixed.clear();
    return out;
  }

 private:
  static constexpr double kVarDecay = 0.95;
  static constexpr double kActivityLimit = 1e100;

  struct Watcher {
    int cref;
    CLit blocker;
  };

  static uint64_t luby(uint64_t i) {  // 1-based Luby sequence
    for (;;) {
      uint64_t k = 1;
      while (((uint64_t(1) << (k + 1)) - 1) <= i) ++k;
      if (((uint64_t(1) << k) - 1) == i) return uint64_t(1) << (k - 1);
      i -= (uint64_t(1) << k) - 1;
    }
  }

  uint32_t decision_level() const {
    return static_cast<uint32_t>(trail_lim_.size());
  }

  int8_t lit_value(CLit l) const {
    int8_t a = assign_[l.var()];
    if (a < 0) return -1;
    return static_cast<int8_t>(a ^ (l.neg() ? 1 : 0));
  }

  void add_input_clause(const CnfClause& c) {
    if (!ok_) return;
    CnfClause cl = c;
    std::sort(cl.begin(), cl.end());
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    for (std::size_t i = 1; i < cl.size(); ++i)
      if (cl[i].var() == cl[i - 1].var()) return;  // tautology
    if (cl.empty()) {
      ok_ = false;
      return;
    }
    if (cl.size() == 1) {
      if (lit_value(cl[0]) == 0)
        ok_ = false;
      else if (lit_value(cl[0]) < 0)
        enqueue(cl[0], -1);
      return;
    }
    attach(cl);
  }

  void attach(const CnfClause& cl) {
    int id = static_cast<int>(clauses_.size());
    clauses_.push_back(cl);
    watches_[cl[0].code ^ 1].push_back({id, cl[1]});
    watches_[cl[1].code ^ 1].push_back({id, cl[0]});
  }

  void attach_learnt(const CnfClause& learnt) {
    if (learnt.size() == 1) {
      enqueue(learnt[0], -1);
      return;
    }
    // watch the asserting literal and a literal from the backjump level
    attach(learnt);
    enqueue(learnt[0], static_cast<int>(clauses_.size()) - 1);
  }

  void enqueue(CLit l, int reason) {
    assign_[l.var()] = l.neg() ? 0 : 1;
    level_[l.var()] = decision_level();
    reason_[l.var()] = reason;
    trail_.push_back(l);
  }

  /// Returns the index of a conflicting clause, or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      CLit p = trail_[qhead_++];  // p is true; visit watchers of ~p
      auto& ws = watches_[p.code];
      std::size_t i = 0, j = 0;
      int confl = -1;
      for (; i < ws.size(); ++i) {
        Watcher w = ws[i];
        if (lit_value(w.blocker) == 1) {
          ws[j++] = w;
          continue;
        }
        CnfClause& cl = clauses_[w.cref];
        CLit false_lit = p.negated();
        if (cl[0] == false_lit) std::swap(cl[0], cl[1]);
        if (lit_value(cl[0]) == 1) {
          ws[j++] = {w.cref, cl[0]};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < cl.size(); ++k) {
          if (lit_value(cl[k]) != 0) {
            std::swap(cl[1], cl[k]);
            watches_[cl[1].code ^ 1].push_back({w.cref, cl[0]});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = w;
        if (lit_value(cl[0]) == 0) {
          confl = w.cref;
          // copy the remaining watchers and stop
          for (++i; i < ws.size(); ++i) ws[j++] = ws[i];
          qhead_ = trail_.size();
          break;
        }
        enqueue(cl[0], w.cref);
      }
      ws.resize(j);
      if (confl >= 0) return confl;
    }
    return -1;
  }

  void bump(uint32_t v) {
    activity_[v] += var_inc_;
    if (activity_[v] > kActivityLimit) {
      for (auto& a : activity_) a /= kActivityLimit;
      var_inc_ /= kActivityLimit;
    }
  }

  void analyze(int confl, CnfClause& learnt, uint32_t& bt_level) {
    learnt.clear();
    learnt.push_back(CLit());  // slot for the asserting literal
    uint32_t counter = 0;
    CLit p;
    bool have_p = false;
    std::size_t index = trail_.size();

    for (;;) {
      const CnfClause& cl = clauses_[confl];
      for (std::size_t k = have_p ? 1 : 0; k < cl.size(); ++k) {
        CLit q = cl[k];
        if (q == p && have_p) continue;
        if (seen_[q.var()] || level_[q.var()] == 0) continue;
        seen_[q.var()] = true;
        bump(q.var());
        if (level_[q.var()] >= decision_level())
          ++counter;
        else
          learnt.push_back(q);
      }
      // next clause to look at
      do {
        --index;
      } while (!seen_[trail_[index].var()]);
      p = trail_[index];
      have_p = true;
      seen_[p.var()] = false;
      --counter;
      if (counter == 0) break;
      confl = reason_[p.var()];
    }
    learnt[0] = p.negated();

    bt_level = 0;
    std::size_t max_i = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      seen_[learnt[i].var()] = false;
      if (level_[learnt[i].var()] > bt_level) {
        bt_level = level_[learnt[i].var()];
        max_i = i;
      }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  }

  void cancel_until(uint32_t lvl) {
    if (decision_level() <= lvl) return;
    for (std::size_t i = trail_.size(); i > trail_lim_[lvl]; --i) {
      uint32_t v = trail_[i - 1].var();
      phase_[v] = assign_[v] == 1;
      assign_[v] = -1;
      reason_[v] = -1;
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
  }

  uint32_t pick_branch_var() const {
    uint32_t best = nvars_;
    double best_act = -1.0;
    for (uint32_t v = 0; v < nvars_; ++v) {
      if (assign_[v] >= 0) continue;
      if (activity_[v] > best_act) {
        best_act = activity_[v];
        best = v;
      }
    }
    return best;
  }

  uint32_t nvars_;
  bool ok_ = true;
  std::vector<CnfClause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<int8_t> assign_;
  std::vector<uint32_t> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<bool> phase_;
  std::vector<bool> seen_;
  std::vector<CLit> trail_;
  std::vector<uint32_t> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
};

inline SolveOutcome solve_cnf(const std::vector<CnfClause>& clauses,
                              uint32_t num_vars, uint64_t max_conflicts) {
  CdclSolver solver(num_vars, clauses);
  return solver.solve(max_conflicts);
}

/// Translates SAT-phase results into ANF facts. UNSAT yields the single
/// contradictory fact 1 = 0. Unit clauses over monomial-mapped variables
/// become value facts; matching binary clause pairs over degree-1 mapped
/// variables become equivalence facts. Clauses touching cutting auxiliaries
/// are discarded.
inline std::vector<LearntFact> extract_sat_facts(
    const SolveOutcome& outcome, const MonomialVarMap& map,
    const std::vector<CnfClause>& original = {}) {
  std::vector<LearntFact> facts;
  if (outcome.status == SolveStatus::Unsat) {
    facts.push_back(LearntFact::linear(Polynomial::one()));
    return facts;
  }

  auto add_unit = [&](CLit l) {
    if (map.cutting_aux.count(l.var())) return;
    const Monomial* m = map.monomial_of(l.var());
    if (!m) return;
    Polynomial p;
    p ^= *m;
    if (!l.neg()) {
      p ^= Monomial::one();  // monomial is true: m + 1
      facts.push_back(m->degree() >= 2 ? LearntFact::monomial_one(p)
                                       : LearntFact::linear(p));
    } else if (m->degree() <= 1) {
      facts.push_back(LearntFact::linear(p));  // m = 0 only stays linear
    }
  };

  for (CLit l : outcome.fixed) add_unit(l);

  std::set<CnfClause> binaries;
  auto collect = [&](const std::vector<CnfClause>& cs) {
    for (const auto& c : cs) {
      if (c.size() == 1) add_unit(c[0]);
      if (c.size() == 2) binaries.insert(c);
    }
  };
  collect(outcome.learnt);
  for (const auto& c : original)
    if (c.size() == 2) binaries.insert(c);

  std::set<std::pair<uint32_t, uint32_t>> done;
  for (const auto& c : binaries) {
    uint32_t a = c[0].var(), b = c[1].var();
    if (a == b) continue;
    if (map.cutting_aux.count(a) || map.cutting_aux.count(b)) continue;
    const Monomial* ma = map.monomial_of(a);
    const Monomial* mb = map.monomial_of(b);
    if (!ma || !mb || ma->degree() > 1 || mb->degree() > 1) continue;
    if (!done.insert({a, b}).second) continue;
    CnfClause flipped = make_clause({c[0].negated(), c[1].negated()});
    if (!binaries.count(flipped)) continue;
    // both polarities present: the pair encodes a linear relation
    Polynomial p;
    p ^= *ma;
    p ^= *mb;
    if (!c[0].neg() == !c[1].neg()) {
      // (a v b) and (~a v ~b): a != b
      p ^= Monomial::one();
    }
    facts.push_back(LearntFact::linear(p));
  }
  return facts;
}

}  // namespace anfcnf
