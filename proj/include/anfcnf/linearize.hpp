#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "anfcnf/anf.hpp"
#include "anfcnf/bitmatrix.hpp"

namespace anfcnf {

/// Bijection between monomials and matrix columns. Columns are ordered in
/// descending graded-lex order, so the constant monomial (if present) is the
/// rightmost column.
struct LinearizationMap {
  std::vector<Monomial> col_to_mono;
  std::map<Monomial, uint32_t> mono_to_col;

  std::size_t cols() const { return col_to_mono.size(); }
};

struct XlParams {
  uint32_t expansion_degree = 1;  // D
  uint32_t sample_bits = 30;      // M: subsample so that m'*n' >~ 2^M
  uint32_t expand_bits = 4;       // deltaM: expand up to ~2^(M+deltaM)
  uint64_t seed = 1;
};

/// Deterministic uniform integer in [0, n) from a 64-bit generator.
/// std::uniform_int_distribution is implementation-defined, so it is not
/// used anywhere results must be reproducible.
inline uint64_t rng_below(std::mt19937_64& rng, uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

/// Builds the linearized matrix of the system: one row per nonzero
/// polynomial, one column per distinct monomial.
inline std::pair<BitMatrix, LinearizationMap> linearize(
    const std::vector<Polynomial>& polys) {
  LinearizationMap map;
  std::set<Monomial> monos;
  std::vector<const Polynomial*> rows;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    rows.push_back(&p);
    for (const auto& m : p.monomials()) monos.insert(m);
  }
  map.col_to_mono.assign(monos.rbegin(), monos.rend());  // descending grlex
  for (uint32_t c = 0; c < map.col_to_mono.size(); ++c)
    map.mono_to_col[map.col_to_mono[c]] = c;

  BitMatrix mat(rows.size(), map.col_to_mono.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& m : rows[r]->monomials())
      mat.set(r, map.mono_to_col.at(m), true);
  return {std::move(mat), std::move(map)};
}

inline Polynomial delinearize_row(const BitMatrix& m,
                                  const LinearizationMap& map,
                                  std::size_t row) {
  Polynomial p;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m.get(row, c)) p ^= map.col_to_mono[c];
  return p;
}

namespace detail {

inline std::size_t linearized_bits(const std::vector<Polynomial>& polys) {
  std::set<Monomial> monos;
  std::size_t rows = 0;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    ++rows;
    for (const auto& m : p.monomials()) monos.insert(m);
  }
  return rows * monos.size();
}

/// Uniform random subset of polynomials with linearized size just above
/// 2^bits. Systems already within the budget are returned whole.
inline std::vector<Polynomial> subsample(const std::vector<Polynomial>& polys,
                                         uint32_t bits, uint64_t seed) {
  const std::size_t budget = std::size_t(1) << std::min<uint32_t>(bits, 62);
  if (linearized_bits(polys) <= budget) return polys;

  std::vector<std::size_t> order(polys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng_below(rng, i)]);

  std::set<Monomial> monos;
  std::vector<std::size_t> picked;
  for (std::size_t i : order) {
    if (polys[i].is_zero()) continue;
    picked.push_back(i);
    for (const auto& m : polys[i].monomials()) monos.insert(m);
    if (picked.size() * monos.size() >= budget) break;
  }
  std::sort(picked.begin(), picked.end());
  std::vector<Polynomial> out;
  out.reserve(picked.size());
  for (std::size_t i : picked) out.push_back(polys[i]);
  return out;
}

/// All monomials over the given variables with 1 <= degree <= d, ascending
/// graded-lex.
inline std::vector<Monomial> multipliers_up_to(const std::vector<Var>& vars,
                                               uint32_t d) {
  std::vector<Monomial> out;
  std::vector<Var> cur;
  // enumerate by degree so the output is already graded
  for (uint32_t deg = 1; deg <= d && deg <= vars.size(); ++deg) {
    std::vector<std::size_t> idx(deg);
    for (uint32_t i = 0; i < deg; ++i) idx[i] = i;
    for (;;) {
      cur.clear();
      for (std::size_t i : idx) cur.push_back(vars[i]);
      out.push_back(Monomial(cur));
      // next combination
      std::size_t k = deg;
      while (k > 0 && idx[k - 1] == vars.size() - deg + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < deg; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// XL expansion: subsamples the system to linearized size ~2^M, then
/// multiplies each equation (ascending degree, stable on input order) by all
/// monomials of degree 1..D, stopping when the expanded linearized size
/// reaches ~2^(M+deltaM). The sampled originals always come first. Zero
/// products are omitted; duplicate rows are kept.
inline std::vector<Polynomial> xl_expand(const AnfSystem& sys,
                                         const XlParams& p) {
  std::vector<Polynomial> base = sys.nonzero_polys();
  std::stable_sort(base.begin(), base.end(),
                   [](const Polynomial& a, const Polynomial& b) {
                     return a.degree() < b.degree();
                   });
  base = detail::subsample(base, p.sample_bits, p.seed);

  std::set<Var> var_set;
  for (const auto& q : base)
    for (Var v : q.vars()) var_set.insert(v);
  std::vector<Var> vars(var_set.begin(), var_set.end());
  std::vector<Monomial> mults =
      detail::multipliers_up_to(vars, p.expansion_degree);

  const std::size_t budget = std::size_t(1)
                             << std::min<uint32_t>(p.sample_bits + p.expand_bits, 62);
  std::vector<Polynomial> out = base;
  std::set<Monomial> monos;
  for (const auto& q : out)
    for (const auto& m : q.monomials()) monos.insert(m);

  for (const auto& eq : base) {
    for (const auto& mult : mults) {
      Polynomial prod = eq.times(mult);
      if (prod.is_zero()) continue;
      out.push_back(prod);
      for (const auto& m : prod.monomials()) monos.insert(m);
      if (out.size() * monos.size() >= budget) return out;
    }
  }
  return out;
}

/// Retains RREF rows that are facts: rows whose set columns are all
/// monomials of degree <= 1 (linear), or exactly one monomial of degree >= 2
/// plus the constant column (m + 1). Everything else is discarded.
inline std::vector<LearntFact> extract_facts(const BitMatrix& rref,
                                             const LinearizationMap& map) {
  std::vector<LearntFact> facts;
  for (std::size_t r = 0; r < rref.rows(); ++r) {
    if (rref.row_is_zero(r)) continue;
    Polynomial p = delinearize_row(rref, map, r);
    auto f = LearntFact::classify(p);
    if (f) facts.push_back(std::move(*f));
  }
  return facts;
}

}  // namespace anfcnf
