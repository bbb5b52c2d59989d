// Independent brute-force oracles for the test suite. Everything here is
// deliberately naive: direct truth-table enumeration and textbook
// bit-by-bit elimination, sharing no algorithmic code with the library.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "anfcnf/anf.hpp"
#include "anfcnf/bitmatrix.hpp"
#include "anfcnf/cnf.hpp"

namespace oracle {

using anfcnf::CLit;
using anfcnf::CnfClause;
using anfcnf::Monomial;
using anfcnf::Polynomial;
using anfcnf::Var;

// GF(2) evaluation from first principles: monomial = AND, sum = XOR.
inline bool eval_poly(const Polynomial& p, uint64_t assignment) {
  bool acc = false;
  for (const auto& m : p.monomials()) {
    bool term = true;
    for (Var v : m.vars()) term = term && ((assignment >> v) & 1);
    acc ^= term;
  }
  return acc;
}

inline bool satisfies_all(const std::vector<Polynomial>& polys,
                          uint64_t assignment) {
  for (const auto& p : polys)
    if (eval_poly(p, assignment)) return false;
  return true;
}

// All assignments (as bitmasks over vars 0..n-1) with every polynomial = 0.
inline std::vector<uint64_t> anf_solutions(const std::vector<Polynomial>& polys,
                                           uint32_t n) {
  std::vector<uint64_t> out;
  for (uint64_t a = 0; a < (uint64_t(1) << n); ++a)
    if (satisfies_all(polys, a)) out.push_back(a);
  return out;
}

inline bool eval_clause(const CnfClause& c, uint64_t assignment) {
  for (CLit l : c)
    if (bool((assignment >> l.var()) & 1) != l.neg()) return true;
  return false;
}

inline bool satisfies_cnf(const std::vector<CnfClause>& clauses,
                          uint64_t assignment) {
  for (const auto& c : clauses)
    if (!eval_clause(c, assignment)) return false;
  return true;
}

inline std::vector<uint64_t> cnf_solutions(const std::vector<CnfClause>& cs,
                                           uint32_t n) {
  std::vector<uint64_t> out;
  for (uint64_t a = 0; a < (uint64_t(1) << n); ++a)
    if (satisfies_cnf(cs, a)) out.push_back(a);
  return out;
}

// Textbook Gauss-Jordan on an unpacked 0/1 matrix.
inline std::vector<std::vector<int>> naive_rref(
    std::vector<std::vector<int>> m) {
  if (m.empty()) return m;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c]) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c])
        for (std::size_t k = 0; k < cols; ++k) m[i][k] ^= m[r][k];
    ++r;
  }
  return m;
}

inline std::vector<std::vector<int>> unpack(const anfcnf::BitMatrix& m) {
  std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c);
  return out;
}

// Seed-deterministic random polynomial over vars 0..n-1.
inline Polynomial random_poly(std::mt19937_64& rng, uint32_t n,
                              uint32_t max_deg, uint32_t max_terms) {
  std::vector<Monomial> monos;
  std::size_t terms = 1 + rng() % max_terms;
  for (std::size_t t = 0; t < terms; ++t) {
    if (rng() % 8 == 0) {
      monos.push_back(Monomial::one());
      continue;
    }
    std::size_t deg = 1 + rng() % max_deg;
    std::vector<Var> vs;
    for (std::size_t d = 0; d < deg; ++d)
      vs.push_back(static_cast<Var>(rng() % n));
    monos.push_back(Monomial(std::move(vs)));
  }
  return Polynomial::from_monomials(std::move(monos));
}

inline std::vector<Polynomial> random_system(std::mt19937_64& rng, uint32_t n,
                                             uint32_t max_deg,
                                             uint32_t num_polys,
                                             uint32_t max_terms = 6) {
  std::vector<Polynomial> out;
  while (out.size() < num_polys) {
    Polynomial p = random_poly(rng, n, max_deg, max_terms);
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

inline CnfClause random_clause(std::mt19937_64& rng, uint32_t n,
                               uint32_t max_len) {
  while (true) {
    std::vector<CLit> lits;
    std::size_t len = 1 + rng() % max_len;
    for (std::size_t i = 0; i < len; ++i)
      lits.push_back(CLit(static_cast<uint32_t>(rng() % n), rng() & 1));
    try {
      return anfcnf::make_clause(std::move(lits));
    } catch (const std::invalid_argument&) {
      // tautological draw; retry
    }
  }
}

}  // namespace oracle
