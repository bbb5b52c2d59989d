#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace anfcnf {

using Var = uint32_t;

/// A variable together with a negation flag; used for equivalence literals.
struct Lit {
  Var var = 0;
  bool neg = false;

  friend bool operator==(const Lit& a, const Lit& b) {
    return a.var == b.var && a.neg == b.neg;
  }
  friend bool operator!=(const Lit& a, const Lit& b) { return !(a == b); }
};

/// Product of distinct variables over GF(2). The empty product is the
/// constant 1. Variables are kept sorted, so every monomial has exactly one
/// representation.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Var> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  }

  static Monomial one() { return Monomial(); }
  static Monomial variable(Var v) { return Monomial(std::vector<Var>{v}); }

  const std::vector<Var>& vars() const { return vars_; }
  std::size_t degree() const { return vars_.size(); }
  bool is_one() const { return vars_.empty(); }

  bool contains(Var v) const {
    return std::binary_search(vars_.begin(), vars_.end(), v);
  }

  Monomial times(const Monomial& o) const {
    std::vector<Var> merged;
    merged.reserve(vars_.size() + o.vars_.size());
    std::set_union(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                   std::back_inserter(merged));
    Monomial m;
    m.vars_ = std::move(merged);
    return m;
  }

  Monomial without(Var v) const {
    Monomial m;
    m.vars_.reserve(vars_.size());
    for (Var w : vars_)
      if (w != v) m.vars_.push_back(w);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.vars_ == b.vars_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }
  // Graded lexicographic: degree first, then lexicographic on the sorted
  // index vector. The constant 1 is the smallest monomial.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.vars_.size() != b.vars_.size())
      return a.vars_.size() < b.vars_.size();
    return a.vars_ < b.vars_;
  }

 private:
  std::vector<Var> vars_;
};

/// XOR-set of monomials; the equation "p = 0" is implicit. Monomials are
/// stored sorted in ascending graded-lex order with pairwise cancellation
/// applied, so the zero polynomial is the empty set.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() {
    Polynomial p;
    p.monos_.push_back(Monomial::one());
    return p;
  }
  static Polynomial variable(Var v) {
    Polynomial p;
    p.monos_.push_back(Monomial::variable(v));
    return p;
  }
  static Polynomial constant(bool b) { return b ? one() : zero(); }

  /// Normalizes a raw monomial multiset: duplicates cancel pairwise.
  static Polynomial from_monomials(std::vector<Monomial> raw) {
    std::sort(raw.begin(), raw.end());
    Polynomial p;
    std::size_t i = 0;
    while (i < raw.size()) {
      std::size_t j = i;
      while (j < raw.size() && raw[j] == raw[i]) ++j;
      if ((j - i) % 2 == 1) p.monos_.push_back(raw[i]);
      i = j;
    }
    return p;
  }

  const std::vector<Monomial>& monomials() const { return monos_; }
  bool is_zero() const { return monos_.empty(); }
  bool is_one() const { return monos_.size() == 1 && monos_[0].is_one(); }
  bool has_constant() const {
    return !monos_.empty() && monos_.front().is_one();
  }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& m : monos_) d = std::max(d, m.degree());
    return d;
  }

  bool contains_var(Var v) const {
    for (const auto& m : monos_)
      if (m.contains(v)) return true;
    return false;
  }

  std::vector<Var> vars() const {
    std::set<Var> s;
    for (const auto& m : monos_)
      for (Var v : m.vars()) s.insert(v);
    return std::vector<Var>(s.begin(), s.end());
  }

  Polynomial& operator^=(const Monomial& m) {
    auto it = std::lower_bound(monos_.begin(), monos_.end(), m);
    if (it != monos_.end() && *it == m)
      monos_.erase(it);
    else
      monos_.insert(it, m);
    return *this;
  }

  Polynomial& operator^=(const Polynomial& o) {
    std::vector<Monomial> out;
    out.reserve(monos_.size() + o.monos_.size());
    std::size_t i = 0, j = 0;
    while (i < monos_.size() && j < o.monos_.size()) {
      if (monos_[i] == o.monos_[j]) {
        ++i;
        ++j;
      } else if (monos_[i] < o.monos_[j]) {
        out.push_back(monos_[i++]);
      } else {
        out.push_back(o.monos_[j++]);
      }
    }
    out.insert(out.end(), monos_.begin() + i, monos_.end());
    out.insert(out.end(), o.monos_.begin() + j, o.monos_.end());
    monos_ = std::move(out);
    return *this;
  }

  friend Polynomial operator^(Polynomial a, const Polynomial& b) {
    a ^= b;
    return a;
  }

  Polynomial times(const Monomial& m) const {
    std::vector<Monomial> raw;
    raw.reserve(monos_.size());
    for (const auto& t : monos_) raw.push_back(t.times(m));
    return from_monomials(std::move(raw));
  }

  Polynomial times(const Polynomial& o) const {
    std::vector<Monomial> raw;
    raw.reserve(monos_.size() * o.monos_.size());
    for (const auto& a : monos_)
      for (const auto& b : o.monos_) raw.push_back(a.times(b));
    return from_monomials(std::move(raw));
  }

  /// Replaces every occurrence of v with the given polynomial. A monomial
  /// v*r becomes repl*r.
  Polynomial substituted(Var v, const Polynomial& repl) const {
    Polynomial kept, factored;
    for (const auto& m : monos_) {
      if (m.contains(v))
        factored ^= repl.times(m.without(v));
      else
        kept ^= m;
    }
    kept ^= factored;
    return kept;
  }

  bool evaluate(const std::vector<bool>& assignment) const {
    bool acc = false;
    for (const auto& m : monos_) {
      bool val = true;
      for (Var v : m.vars()) {
        if (v >= assignment.size() || !assignment[v]) {
          val = false;
          break;
        }
      }
      acc ^= val;
    }
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.monos_ == b.monos_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    return a.monos_ < b.monos_;
  }

 private:
  std::vector<Monomial> monos_;
};

/// A fact retained by any learning phase: either a linear equation or an
/// all-ones monomial equation m + 1.
struct LearntFact {
  enum class Kind { Linear, MonomialOne };

  Kind kind;
  Polynomial poly;

  static LearntFact linear(Polynomial p) {
    if (p.degree() > 1)
      throw std::invalid_argument("linear fact with degree > 1");
    return LearntFact{Kind::Linear, std::move(p)};
  }

  static LearntFact monomial_one(Polynomial p) {
    const auto& ms = p.monomials();
    if (ms.size() != 2 || !ms.front().is_one() || ms.back().degree() < 1)
      throw std::invalid_argument("not of the form m + 1");
    return LearntFact{Kind::MonomialOne, std::move(p)};
  }

  /// Classifies a polynomial into a fact, if it has one of the two shapes.
  static std::optional<LearntFact> classify(const Polynomial& p) {
    if (p.degree() <= 1) return LearntFact{Kind::Linear, p};
    const auto& ms = p.monomials();
    if (ms.size() == 2 && ms.front().is_one() && ms.back().degree() >= 2)
      return LearntFact{Kind::MonomialOne, p};
    return std::nullopt;
  }

  friend bool operator==(const LearntFact& a, const LearntFact& b) {
    return a.kind == b.kind && a.poly == b.poly;
  }
};

/// A polynomial system with per-variable state: value, equivalence literal
/// (union-find with negation parity) and occurrence list.
class AnfSystem {
 public:
  enum class Value : uint8_t { Undetermined, Zero, One };

  AnfSystem() = default;
  explicit AnfSystem(uint32_t num_vars) { ensure_vars(num_vars); }

  uint32_t num_vars() const { return static_cast<uint32_t>(states_.size()); }
  bool contradiction() const { return contradiction_; }

  void ensure_vars(uint32_t n) {
    while (states_.size() < n) {
      VarState s;
      s.parent = static_cast<Var>(states_.size());
      states_.push_back(std::move(s));
    }
  }

  const std::vector<Polynomial>& polys() const { return polys_; }

  std::vector<Polynomial> nonzero_polys() const {
    std::vector<Polynomial> out;
    for (const auto& p : polys_)
      if (!p.is_zero()) out.push_back(p);
    return out;
  }

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (const auto& p : polys_)
      if (!p.is_zero()) ++n;
    return n;
  }

  /// Canonical equivalence literal of v, with path compression. The
  /// representative is the lowest variable index in the class.
  Lit find(Var v) {
    VarState& s = states_.at(v);
    if (s.parent == v) return Lit{v, false};
    Lit root = find(s.parent);
    s.parent = root.var;
    s.parity = s.parity ^ root.neg;
    return Lit{s.parent, s.parity};
  }

  /// Resolved value of v, if determined (directly or through equivalence).
  std::optional<bool> value(Var v) {
    Lit root = find(v);
    Value val = states_[root.var].value;
    if (val == Value::Undetermined) return std::nullopt;
    return (val == Value::One) ^ root.neg;
  }

  /// True when v is its own class representative and has no value.
  bool is_free(Var v) {
    return !value(v).has_value() && find(v).var == v;
  }

  const std::set<uint32_t>& occurrences(Var v) const {
    return states_.at(v).occ;
  }

  /// Reduces p through the current variable state: determined variables are
  /// replaced by constants, equivalence-class members by their canonical
  /// literal.
  Polynomial apply_state(Polynomial p) {
    for (Var v : p.vars()) {
      if (!p.contains_var(v)) continue;  // may vanish during earlier steps
      auto val = value(v);
      if (val) {
        p = p.substituted(v, Polynomial::constant(*val));
        continue;
      }
      Lit root = find(v);
      if (root.var != v) {
        Polynomial repl = Polynomial::variable(root.var);
        if (root.neg) repl ^= Monomial::one();
        p = p.substituted(v, repl);
      }
    }
    return p;
  }

  /// Adds a polynomial (reduced through the current state). Duplicates of
  /// existing nonzero polynomials are dropped. Returns true if a polynomial
  /// was actually inserted or a contradiction was raised.
  bool add_poly(const Polynomial& raw) {
    grow_for(raw);
    Polynomial p = apply_state(raw);
    if (p.is_zero()) return false;
    if (p.is_one()) {
      if (!contradiction_) {
        contradiction_ = true;
        insert_poly(Polynomial::one());
      }
      return true;
    }
    for (const auto& q : polys_)
      if (q == p) return false;
    insert_poly(std::move(p));
    return true;
  }

  /// Eliminates v by substituting the replacement everywhere v occurs.
  void substitute(Var v, const Polynomial& repl) {
    if (repl.contains_var(v))
      throw std::invalid_argument("replacement contains the substituted variable");
    if (v >= states_.size()) return;
    grow_for(repl);
    std::vector<uint32_t> touched(states_[v].occ.begin(), states_[v].occ.end());
    for (uint32_t i : touched)
      replace_poly(i, polys_[i].substituted(v, repl));
  }

  /// ANF propagation to fixed point. Consumes every polynomial of shape x,
  /// x+1, x+y, x+y+1 or m+1, assigning values and equivalences and
  /// substituting them throughout. Returns one fact per assignment made.
  std::vector<LearntFact> propagate() {
    std::vector<LearntFact> facts;
    for (uint32_t i = 0; i < polys_.size(); ++i) mark_dirty(i);
    drain(facts);
    return facts;
  }

  /// Adds facts (deduplicated) and re-propagates. Returns the number of
  /// facts that actually changed the system. Propagation-derived facts are
  /// appended to *derived when given.
  std::size_t add_facts(const std::vector<LearntFact>& facts,
                        std::vector<LearntFact>* derived = nullptr) {
    std::size_t fresh = 0;
    std::vector<LearntFact> prop;
    for (const auto& f : facts) {
      if (contradiction_) break;
      if (add_poly(f.poly)) {
        ++fresh;
        drain(prop);
      }
    }
    if (derived)
      derived->insert(derived->end(), prop.begin(), prop.end());
    return fresh;
  }

  /// Assignment over all variables consistent with the recorded state;
  /// free variables are set to the given default.
  std::vector<bool> state_model(bool default_value = false) {
    std::vector<bool> m(states_.size(), default_value);
    for (Var v = 0; v < states_.size(); ++v) {
      auto val = value(v);
      if (val) {
        m[v] = *val;
        continue;
      }
      Lit root = find(v);
      m[v] = m[root.var] ^ root.neg;  // roots have lower indices
    }
    return m;
  }

  bool fully_reduced() {
    if (contradiction_) return false;
    return nonzero_count() == 0;
  }

 private:
  struct VarState {
    Value value = Value::Undetermined;
    Var parent = 0;
    bool parity = false;
    std::set<uint32_t> occ;
  };

  void grow_for(const Polynomial& p) {
    const auto& ms = p.monomials();
    if (ms.empty()) return;
    Var max_v = 0;
    for (const auto& m : ms)
      if (!m.vars().empty()) max_v = std::max(max_v, m.vars().back());
    ensure_vars(max_v + 1);
  }

  void insert_poly(Polynomial p) {
    uint32_t idx = static_cast<uint32_t>(polys_.size());
    for (Var v : p.vars()) states_[v].occ.insert(idx);
    polys_.push_back(std::move(p));
    mark_dirty(idx);
  }

  void replace_poly(uint32_t i, Polynomial np) {
    for (Var v : polys_[i].vars()) states_[v].occ.erase(i);
    grow_for(np);
    for (Var v : np.vars()) states_[v].occ.insert(i);
    if (np.is_one()) contradiction_ = true;
    polys_[i] = std::move(np);
    mark_dirty(i);
  }

  void mark_dirty(uint32_t i) {
    if (i >= in_queue_.size()) in_queue_.resize(polys_.size(), false);
    if (!in_queue_[i]) {
      in_queue_[i] = true;
      dirty_.push_back(i);
    }
  }

  void assign(Var v, bool val, std::vector<LearntFact>& facts) {
    Lit root = find(v);
    bool root_val = val ^ root.neg;
    VarState& s = states_[root.var];
    if (s.value != Value::Undetermined) {
      if ((s.value == Value::One) != root_val) {
        contradiction_ = true;
        insert_poly(Polynomial::one());
      }
      return;
    }
    s.value = root_val ? Value::One : Value::Zero;
    Polynomial fact = Polynomial::variable(v);
    if (val) fact ^= Monomial::one();
    facts.push_back(LearntFact::linear(std::move(fact)));
    substitute(root.var, Polynomial::constant(root_val));
  }

  // x = y (antival=false) or x = !y (antival=true)
  void equate(Var x, Var y, bool antival, std::vector<LearntFact>& facts) {
    Lit rx = find(x), ry = find(y);
    bool parity = rx.neg ^ ry.neg ^ antival;  // rx.var = ry.var ^ parity
    if (rx.var == ry.var) {
      if (parity) {
        contradiction_ = true;
        insert_poly(Polynomial::one());
      }
      return;
    }
    Var canon = std::min(rx.var, ry.var);
    Var other = std::max(rx.var, ry.var);
    states_[other].parent = canon;
    states_[other].parity = parity;
    Polynomial fact = Polynomial::variable(x) ^ Polynomial::variable(y);
    if (antival) fact ^= Monomial::one();
    facts.push_back(LearntFact::linear(std::move(fact)));
    Polynomial repl = Polynomial::variable(canon);
    if (parity) repl ^= Monomial::one();
    substitute(other, repl);
  }

  void drain(std::vector<LearntFact>& facts) {
    while (!dirty_.empty() && !contradiction_) {
      uint32_t i = dirty_.back();
      dirty_.pop_back();
      in_queue_[i] = false;
      const Polynomial p = polys_[i];  // copy: substitutions mutate polys_
      const auto& ms = p.monomials();
      if (p.is_zero()) continue;
      if (p.is_one()) {
        contradiction_ = true;
        break;
      }
      if (ms.size() == 1 && ms[0].degree() == 1) {
        assign(ms[0].vars()[0], false, facts);
      } else if (ms.size() == 2 && ms[0].is_one()) {
        // m + 1: every variable of m is 1
        for (Var v : ms[1].vars()) {
          if (contradiction_) break;
          assign(v, true, facts);
        }
      } else if (ms.size() == 2 && ms[0].degree() == 1 &&
                 ms[1].degree() == 1) {
        equate(ms[0].vars()[0], ms[1].vars()[0], false, facts);
      } else if (ms.size() == 3 && ms[0].is_one() && ms[1].degree() == 1 &&
                 ms[2].degree() == 1) {
        equate(ms[1].vars()[0], ms[2].vars()[0], true, facts);
      }
    }
    if (contradiction_) {
      dirty_.clear();
      std::fill(in_queue_.begin(), in_queue_.end(), false);
    }
  }

  std::vector<Polynomial> polys_;
  std::vector<VarState> states_;
  std::vector<uint32_t> dirty_;
  std::vector<bool> in_queue_;
  bool contradiction_ = false;
};

}  // namespace anfcnf
