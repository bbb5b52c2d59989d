#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "anfcnf/anf.hpp"

namespace anfcnf {

/// CNF literal: code = 2*var + sign, sign set for negated.
struct CLit {
  uint32_t code = 0;

  CLit() = default;
  CLit(uint32_t var, bool neg) : code(2 * var + (neg ? 1 : 0)) {}

  uint32_t var() const { return code >> 1; }
  bool neg() const { return code & 1; }
  CLit negated() const {
    CLit l;
    l.code = code ^ 1;
    return l;
  }

  friend bool operator==(CLit a, CLit b) { return a.code == b.code; }
  friend bool operator!=(CLit a, CLit b) { return a.code != b.code; }
  friend bool operator<(CLit a, CLit b) { return a.code < b.code; }
};

using CnfClause = std::vector<CLit>;

/// Sorts and deduplicates; throws on complementary literal pairs.
inline CnfClause make_clause(CnfClause lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i].var() == lits[i - 1].var())
      throw std::invalid_argument("clause contains complementary literals");
  return lits;
}

inline bool clause_satisfied(const CnfClause& c,
                             const std::vector<bool>& assignment) {
  for (CLit l : c)
    if (l.var() < assignment.size() && assignment[l.var()] != l.neg())
      return true;
  return false;
}

struct ConvParams {
  uint32_t karnaugh_vars = 8;  // K
  uint32_t xor_cut = 5;        // L
  uint32_t clause_cut = 5;     // L'
};

/// Bidirectional monomial <-> CNF variable map. Degree-1 monomials map to
/// the identically indexed CNF variable. Cutting auxiliaries have no
/// monomial meaning.
struct MonomialVarMap {
  std::map<Monomial, uint32_t> mono_to_var;
  std::map<uint32_t, Monomial> var_to_mono;
  std::set<uint32_t> cutting_aux;
  uint32_t num_vars = 0;

  uint32_t var_for(const Monomial& m, bool* created = nullptr) {
    auto it = mono_to_var.find(m);
    if (it != mono_to_var.end()) {
      if (created) *created = false;
      return it->second;
    }
    uint32_t v = num_vars++;
    mono_to_var.emplace(m, v);
    var_to_mono.emplace(v, m);
    if (created) *created = true;
    return v;
  }

  uint32_t fresh_cutting_aux() {
    uint32_t v = num_vars++;
    cutting_aux.insert(v);
    return v;
  }

  const Monomial* monomial_of(uint32_t v) const {
    auto it = var_to_mono.find(v);
    return it == var_to_mono.end() ? nullptr : &it->second;
  }
};

/// CNF of the XOR constraint  lit_1 + ... + lit_l = parity. Emits the
/// 2^(l-1) clauses forbidding the parity-violating sign patterns.
inline std::vector<CnfClause> xor_to_clauses(const std::vector<CLit>& lits,
                                             bool parity) {
  if (lits.empty() || lits.size() > 30)
    throw std::invalid_argument("xor length out of range");
  const uint32_t l = static_cast<uint32_t>(lits.size());
  std::vector<CnfClause> out;
  out.reserve(std::size_t(1) << (l - 1));
  for (uint32_t mask = 0; mask < (uint32_t(1) << l); ++mask) {
    bool x = false;
    for (uint32_t i = 0; i < l; ++i) x ^= (mask >> i) & 1;
    if (x == parity) continue;  // satisfying pattern, no clause
    CnfClause c;
    c.reserve(l);
    for (uint32_t i = 0; i < l; ++i) {
      bool bit = (mask >> i) & 1;  // literal value in the forbidden pattern
      c.push_back(bit ? lits[i].negated() : lits[i]);
    }
    out.push_back(make_clause(std::move(c)));
  }
  return out;
}

namespace detail {

struct Implicant {
  uint32_t bits = 0;  // values on cared positions
  uint32_t dash = 0;  // 1 = position is dashed (uncared)

  friend bool operator<(const Implicant& a, const Implicant& b) {
    return std::tie(a.dash, a.bits) < std::tie(b.dash, b.bits);
  }
  friend bool operator==(const Implicant& a, const Implicant& b) {
    return a.dash == b.dash && a.bits == b.bits;
  }
  bool covers(uint32_t minterm) const {
    return ((minterm ^ bits) & ~dash) == 0;
  }
};

inline std::vector<Implicant> prime_implicants(
    const std::vector<uint32_t>& minterms, uint32_t nbits) {
  std::vector<Implicant> current;
  for (uint32_t m : minterms) current.push_back({m, 0});
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());

  std::vector<Implicant> primes;
  const uint32_t full = nbits >= 32 ? 0xffffffffu : ((1u << nbits) - 1);
  while (!current.empty()) {
    std::vector<bool> merged(current.size(), false);
    std::vector<Implicant> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        if (current[i].dash != current[j].dash) continue;
        uint32_t diff = (current[i].bits ^ current[j].bits) & full;
        if (diff == 0 || (diff & (diff - 1)) != 0) continue;
        next.push_back({current[i].bits & ~diff, current[i].dash | diff});
        merged[i] = merged[j] = true;
      }
    }
    for (std::size_t i = 0; i < current.size(); ++i)
      if (!merged[i]) primes.push_back(current[i]);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

/// Exact minimum set cover by branch and bound; scale is bounded by the
/// Karnaugh parameter (<= 256 minterms).
inline void min_cover_rec(const std::vector<Implicant>& primes,
                          const std::vector<uint32_t>& minterms,
                          std::vector<bool>& covered, std::size_t num_covered,
                          std::vector<std::size_t>& chosen,
                          std::vector<std::size_t>& best) {
  if (!best.empty() && chosen.size() >= best.size()) return;
  if (num_covered == minterms.size()) {
    best = chosen;
    return;
  }
  // branch on the uncovered minterm with the fewest candidates
  std::size_t pick = minterms.size();
  std::vector<std::size_t> pick_cands;
  for (std::size_t t = 0; t < minterms.size(); ++t) {
    if (covered[t]) continue;
    std::vector<std::size_t> cands;
    for (std::size_t p = 0; p < primes.size(); ++p)
      if (primes[p].covers(minterms[t])) cands.push_back(p);
    if (pick == minterms.size() || cands.size() < pick_cands.size()) {
      pick = t;
      pick_cands = std::move(cands);
      if (pick_cands.size() <= 1) break;
    }
  }
  for (std::size_t p : pick_cands) {
    std::vector<std::size_t> newly;
    for (std::size_t t = 0; t < minterms.size(); ++t) {
      if (!covered[t] && primes[p].covers(minterms[t])) {
        covered[t] = true;
        newly.push_back(t);
      }
    }
    chosen.push_back(p);
    min_cover_rec(primes, minterms, covered, num_covered + newly.size(),
                  chosen, best);
    chosen.pop_back();
    for (std::size_t t : newly) covered[t] = false;
  }
}

}  // namespace detail

/// Exact two-level minimization (Quine-McCluskey with exact set cover) of
/// the polynomial's falsifying assignments: the returned clauses forbid
/// exactly the assignments where the polynomial evaluates to 1.
inline std::vector<CnfClause> karnaugh_minimize(const Polynomial& poly,
                                                uint32_t max_vars = 8) {
  std::vector<Var> vars = poly.vars();
  const uint32_t nv = static_cast<uint32_t>(vars.size());
  if (nv > max_vars)
    throw std::invalid_argument("polynomial exceeds the Karnaugh bound");

  std::vector<uint32_t> forbidden;  // assignments with poly == 1
  std::vector<bool> assignment;
  if (!vars.empty()) assignment.resize(vars.back() + 1, false);
  for (uint32_t m = 0; m < (uint32_t(1) << nv); ++m) {
    for (uint32_t i = 0; i < nv; ++i) assignment[vars[i]] = (m >> i) & 1;
    if (poly.evaluate(assignment)) forbidden.push_back(m);
  }
  if (forbidden.empty()) return {};
  if (nv == 0) return {CnfClause{}};  // constant 1: the empty clause

  std::vector<detail::Implicant> primes =
      detail::prime_implicants(forbidden, nv);
  std::vector<bool> covered(forbidden.size(), false);
  std::vector<std::size_t> chosen, best;
  detail::min_cover_rec(primes, forbidden, covered, 0, chosen, best);

  std::vector<CnfClause> out;
  for (std::size_t p : best) {
    CnfClause c;
    for (uint32_t i = 0; i < nv; ++i) {
      if (primes[p].dash & (1u << i)) continue;
      bool value = (primes[p].bits >> i) & 1;
      c.push_back(CLit(vars[i], value));  // forbid: literal opposite of value
    }
    out.push_back(make_clause(std::move(c)));
  }
  return out;
}

namespace detail {

/// Splits a polynomial into chained pieces of at most L terms each; the
/// first piece keeps the constant (ascending grlex puts it first). The
/// chaining variables are pure cutting auxiliaries.
inline std::vector<Polynomial> xor_cut(const Polynomial& poly, uint32_t L,
                                       MonomialVarMap& map) {
  std::vector<Monomial> terms = poly.monomials();
  std::vector<Polynomial> pieces;
  std::size_t pos = 0;
  bool chained = false;
  Var link = 0;
  while (true) {
    std::size_t remaining = terms.size() - pos;
    std::size_t slots = chained ? L - 1 : L;
    if (remaining <= slots) {
      Polynomial piece;
      if (chained) piece ^= Monomial::variable(link);
      for (; pos < terms.size(); ++pos) piece ^= terms[pos];
      pieces.push_back(std::move(piece));
      break;
    }
    Polynomial piece;
    std::size_t take = slots - 1;  // leave room for the outgoing link
    if (chained) piece ^= Monomial::variable(link);
    for (std::size_t k = 0; k < take; ++k, ++pos) piece ^= terms[pos];
    link = map.fresh_cutting_aux();
    piece ^= Monomial::variable(link);
    pieces.push_back(std::move(piece));
    chained = true;
  }
  return pieces;
}

}  // namespace detail

struct CnfResult {
  std::vector<CnfClause> clauses;
  MonomialVarMap map;
};

/// ANF-to-CNF conversion. Determined variables become unit clauses,
/// equivalences become clause pairs, and each polynomial is XOR-cut into
/// pieces of at most L terms, each encoded via the Karnaugh path (<= K
/// distinct variables, exact minimization) or the Tseitin path (monomial
/// auxiliaries plus an XOR clause).
inline CnfResult anf_to_cnf(AnfSystem sys, const ConvParams& p) {
  CnfResult res;
  MonomialVarMap& map = res.map;
  map.num_vars = sys.num_vars();
  for (Var v = 0; v < sys.num_vars(); ++v) {
    map.mono_to_var.emplace(Monomial::variable(v), v);
    map.var_to_mono.emplace(v, Monomial::variable(v));
  }

  if (sys.contradiction()) {
    res.clauses.push_back(CnfClause{});
    return res;
  }

  for (Var v = 0; v < sys.num_vars(); ++v) {
    auto val = sys.value(v);
    if (val) {
      res.clauses.push_back({CLit(v, !*val)});
      continue;
    }
    Lit root = sys.find(v);
    if (root.var != v) {
      if (root.neg) {
        res.clauses.push_back(make_clause({CLit(v, false), CLit(root.var, false)}));
        res.clauses.push_back(make_clause({CLit(v, true), CLit(root.var, true)}));
      } else {
        res.clauses.push_back(make_clause({CLit(v, false), CLit(root.var, true)}));
        res.clauses.push_back(make_clause({CLit(v, true), CLit(root.var, false)}));
      }
    }
  }

  auto emit_piece = [&](const Polynomial& piece) {
    std::size_t nv = piece.vars().size();
    if (nv <= p.karnaugh_vars) {
      auto clauses = karnaugh_minimize(piece, p.karnaugh_vars);
      res.clauses.insert(res.clauses.end(), clauses.begin(), clauses.end());
      return;
    }
    // Tseitin path: define a variable per high-degree monomial, then treat
    // the piece as an XOR clause.
    std::vector<CLit> lits;
    bool parity = false;
    for (const auto& m : piece.monomials()) {
      if (m.is_one()) {
        parity = true;
        continue;
      }
      if (m.degree() == 1) {
        lits.push_back(CLit(m.vars()[0], false));
        continue;
      }
      bool created = false;
      uint32_t w = map.var_for(m, &created);
      if (created) {
        CnfClause big{CLit(w, false)};
        for (Var v : m.vars()) {
          res.clauses.push_back(make_clause({CLit(w, true), CLit(v, false)}));
          big.push_back(CLit(v, true));
        }
        res.clauses.push_back(make_clause(std::move(big)));
      }
      lits.push_back(CLit(w, false));
    }
    auto clauses = xor_to_clauses(lits, parity);
    res.clauses.insert(res.clauses.end(), clauses.begin(), clauses.end());
  };

  for (const auto& poly : sys.polys()) {
    if (poly.is_zero()) continue;
    for (const auto& piece : detail::xor_cut(poly, p.xor_cut, map))
      emit_piece(piece);
  }
  return res;
}

/// CNF-to-ANF: each clause becomes the product of its negated literals.
/// Clauses with more than L' positive literals are first split into shorter
/// clauses through fresh auxiliaries, k-SAT-to-3-SAT style.
inline AnfSystem cnf_to_anf(const std::vector<CnfClause>& clauses,
                            uint32_t num_vars, const ConvParams& p) {
  uint32_t next_aux = num_vars;
  std::vector<CnfClause> queue(clauses.begin(), clauses.end());
  std::vector<Polynomial> polys;

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    CnfClause c = queue[qi];
    std::size_t positives = 0;
    for (CLit l : c) positives += !l.neg();
    if (positives > p.clause_cut) {
      // prefix keeps L'-1 positives, plus the positive chaining literal;
      // for L' = 1 the head still takes one positive so splitting terminates
      CnfClause head, tail;
      std::size_t quota = std::max<std::size_t>(1, p.clause_cut - 1);
      std::size_t seen = 0;
      for (CLit l : c) {
        if (seen < quota) {
          head.push_back(l);
          seen += !l.neg();
        } else {
          tail.push_back(l);
        }
      }
      uint32_t a = next_aux++;
      head.push_back(CLit(a, false));
      tail.insert(tail.begin(), CLit(a, true));
      queue[qi] = head;
      queue.insert(queue.begin() + qi + 1, tail);
      c = head;
    }
    Polynomial poly = Polynomial::one();
    for (CLit l : c) {
      Polynomial factor = Polynomial::variable(l.var());
      if (!l.neg()) factor ^= Monomial::one();  // negation of a positive lit
      poly = poly.times(factor);
    }
    polys.push_back(std::move(poly));
  }

  AnfSystem sys(next_aux);
  for (const auto& poly : polys) {
    if (poly.is_one()) {
      sys.add_poly(Polynomial::one());
      break;
    }
    sys.add_poly(poly);
  }
  return sys;
}

}  // namespace anfcnf
