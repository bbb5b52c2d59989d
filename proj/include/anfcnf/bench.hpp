#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "anfcnf/anf.hpp"
#include "anfcnf/io.hpp"
#include "anfcnf/linearize.hpp"

namespace anfcnf {

struct BenchSpec {
  enum class Kind { RandomPlanted, ToyFeistel };

  Kind kind = Kind::RandomPlanted;
  // random-planted parameters
  uint32_t vars = 8;
  uint32_t polys = 12;
  uint32_t degree = 2;
  // toy-feistel parameters
  uint32_t width = 8;   // bits per half-block
  uint32_t rounds = 2;
  uint32_t pairs = 1;
  uint64_t seed = 1;
};

struct GeneratedInstance {
  AnfDocument doc;
  std::vector<bool> planted;  // satisfying assignment used for generation
};

namespace bench_detail {

inline uint32_t rot(uint32_t x, uint32_t a, uint32_t w) {
  a %= w;
  uint32_t mask = (w >= 32) ? 0xffffffffu : ((1u << w) - 1);
  return ((x << a) | (x >> (w - a))) & mask;
}

}  // namespace bench_detail

/// One toy Feistel round on half-blocks of `width` bits: rotations by
/// 1, 8 and 2 (mod width), AND, XOR and a round key.
inline uint32_t toy_feistel_round(uint32_t upper, uint32_t lower,
                                  uint32_t round_key, uint32_t width) {
  using bench_detail::rot;
  return lower ^ (rot(upper, 1, width) & rot(upper, 8 % width, width)) ^
         rot(upper, 2 % width, width) ^ round_key;
}

/// Forward simulation: state (s_{i+1}, s_i) -> (s_{i+2}, s_{i+1}).
/// Returns the ciphertext halves (s_{r+1}, s_r).
inline std::pair<uint32_t, uint32_t> toy_feistel_encrypt(
    uint32_t pt_upper, uint32_t pt_lower, const std::vector<uint32_t>& keys,
    uint32_t width) {
  uint32_t upper = pt_upper, lower = pt_lower;
  for (uint32_t key : keys) {
    uint32_t next = toy_feistel_round(upper, lower, key, width);
    lower = upper;
    upper = next;
  }
  return {upper, lower};
}

inline GeneratedInstance generate_random_planted(const BenchSpec& spec) {
  if (spec.vars == 0 || spec.vars > 32)
    throw std::invalid_argument("random-planted variable count out of range");
  if (spec.degree == 0 || spec.degree > spec.vars)
    throw std::invalid_argument("degree out of range");

  std::mt19937_64 rng(spec.seed);
  GeneratedInstance inst;
  inst.planted.resize(spec.vars);
  for (uint32_t v = 0; v < spec.vars; ++v) inst.planted[v] = rng() & 1;

  inst.doc.num_vars = spec.vars;
  for (uint32_t i = 0; i < spec.polys; ++i) {
    Polynomial p;
    do {
      std::size_t terms = 2 + rng_below(rng, 5);
      std::vector<Monomial> monos;
      for (std::size_t t = 0; t < terms; ++t) {
        std::size_t deg = 1 + rng_below(rng, spec.degree);
        std::vector<Var> vs;
        for (std::size_t d = 0; d < deg; ++d)
          vs.push_back(static_cast<Var>(rng_below(rng, spec.vars)));
        monos.push_back(Monomial(std::move(vs)));
      }
      p = Polynomial::from_monomials(std::move(monos));
      if (p.evaluate(inst.planted)) p ^= Monomial::one();
    } while (p.is_zero());
    inst.doc.polys.push_back(std::move(p));
  }
  return inst;
}

/// Reduced-round Feistel instance: plaintext and ciphertext bits fixed by
/// unit polynomials, round keys free, one quadratic equation per state bit
/// per round. Variable layout (0-based, per pair p):
///   keys:   rounds*width bits, k_{i,j} at i*width + j
///   states: pair p, step t (0 = pt upper, 1 = pt lower, t >= 2 derived):
///           rounds*width + p*(rounds+2)*width + t*width + j
inline GeneratedInstance generate_toy_feistel(const BenchSpec& spec) {
  if (spec.width == 0 || spec.width > 16)
    throw std::invalid_argument("toy-feistel width out of range (1..16)");
  if (spec.rounds > 8)
    throw std::invalid_argument("toy-feistel rounds out of range (0..8)");
  if (spec.pairs == 0 || spec.pairs > 4)
    throw std::invalid_argument("toy-feistel pairs out of range (1..4)");

  const uint32_t w = spec.width, r = spec.rounds;
  std::mt19937_64 rng(spec.seed);
  const uint32_t mask = (w >= 32) ? 0xffffffffu : ((1u << w) - 1);

  std::vector<uint32_t> keys(r);
  for (auto& k : keys) k = static_cast<uint32_t>(rng()) & mask;

  GeneratedInstance inst;
  const uint32_t key_base = 0;
  auto key_var = [&](uint32_t round, uint32_t bit) {
    return key_base + round * w + bit;
  };
  auto state_var = [&](uint32_t pair, uint32_t step, uint32_t bit) {
    return r * w + pair * (r + 2) * w + step * w + bit;
  };
  inst.doc.num_vars = r * w + spec.pairs * (r + 2) * w;
  inst.planted.assign(inst.doc.num_vars, false);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < w; ++j)
      inst.planted[key_var(i, j)] = (keys[i] >> j) & 1;

  auto fix_bit = [&](Var v, bool value) {
    Polynomial p = Polynomial::variable(v);
    if (value) p ^= Monomial::one();
    inst.doc.polys.push_back(std::move(p));
    inst.planted[v] = value;
  };

  for (uint32_t pair = 0; pair < spec.pairs; ++pair) {
    uint32_t pt_upper = static_cast<uint32_t>(rng()) & mask;
    uint32_t pt_lower = static_cast<uint32_t>(rng()) & mask;

    // round equations: s_{t+2,j} + s_{t,j} + s_{t+1,(j-1)}s_{t+1,(j-8)}
    //                  + s_{t+1,(j-2)} + k_{t,j}
    for (uint32_t t = 0; t < r; ++t) {
      for (uint32_t j = 0; j < w; ++j) {
        auto idx = [&](uint32_t a) { return (j + w - a % w) % w; };
        std::vector<Monomial> monos;
        monos.push_back(Monomial::variable(state_var(pair, t + 2, j)));
        monos.push_back(Monomial::variable(state_var(pair, t, j)));
        monos.push_back(Monomial({state_var(pair, t + 1, idx(1)),
                                  state_var(pair, t + 1, idx(8))}));
        monos.push_back(Monomial::variable(state_var(pair, t + 1, idx(2))));
        monos.push_back(Monomial::variable(key_var(t, j)));
        inst.doc.polys.push_back(Polynomial::from_monomials(std::move(monos)));
      }
    }

    // plaintext: steps 1 (upper) and 0 (lower); sequence s_0 = lower half
    for (uint32_t j = 0; j < w; ++j) {
      fix_bit(state_var(pair, 1, j), (pt_upper >> j) & 1);
      fix_bit(state_var(pair, 0, j), (pt_lower >> j) & 1);
    }

    // fill intermediate states in the planted model, fix the ciphertext
    uint32_t upper = pt_upper, lower = pt_lower;
    for (uint32_t t = 0; t < r; ++t) {
      uint32_t next = toy_feistel_round(upper, lower, keys[t], w);
      for (uint32_t j = 0; j < w; ++j)
        inst.planted[state_var(pair, t + 2, j)] = (next >> j) & 1;
      lower = upper;
      upper = next;
    }
    for (uint32_t j = 0; j < w; ++j) {
      fix_bit(state_var(pair, r + 1, j), (upper >> j) & 1);
      if (r >= 1) fix_bit(state_var(pair, r, j), (lower >> j) & 1);
    }
  }
  return inst;
}

inline GeneratedInstance generate(const BenchSpec& spec) {
  switch (spec.kind) {
    case BenchSpec::Kind::RandomPlanted: return generate_random_planted(spec);
    case BenchSpec::Kind::ToyFeistel: return generate_toy_feistel(spec);
  }
  throw std::invalid_argument("unknown benchmark kind");
}

inline std::string write_anf_document(const AnfDocument& doc) {
  std::ostringstream out;
  out << "c anf, " << doc.num_vars << " variables\n";
  for (const auto& p : doc.polys) out << write_polynomial(p) << "\n";
  return out.str();
}

}  // namespace anfcnf
