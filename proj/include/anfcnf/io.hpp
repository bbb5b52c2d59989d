#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "anfcnf/anf.hpp"
#include "anfcnf/cnf.hpp"
#include "anfcnf/solver.hpp"

namespace anfcnf {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parsed ANF file: one polynomial per line, monomials are `x<digits>`
/// terms joined by `*`, monomials joined by `+`, constant `1`, comments
/// prefixed with `c`. Variable indices are 1-based in text, 0-based
/// internally.
struct AnfDocument {
  uint32_t num_vars = 0;
  std::vector<Polynomial> polys;
};

namespace detail {

constexpr uint32_t kMaxVarIndex = 50'000'000;

inline Monomial parse_monomial(const std::string& tok, std::size_t line_no) {
  std::vector<Var> vars;
  std::size_t i = 0;
  bool expect_factor = true;
  while (i < tok.size()) {
    if (std::isspace(static_cast<unsigned char>(tok[i]))) {
      ++i;
      continue;
    }
    if (!expect_factor) {
      if (tok[i] != '*') throw ParseError(line_no, "expected '*'");
      ++i;
      expect_factor = true;
      continue;
    }
    if (tok[i] == '1') {
      ++i;
      expect_factor = false;
      continue;
    }
    if (tok[i] != 'x' && tok[i] != 'X')
      throw ParseError(line_no, std::string("unexpected token '") + tok[i] + "'");
    ++i;
    uint64_t idx = 0;
    std::size_t digits = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
      idx = idx * 10 + (tok[i] - '0');
      if (idx > detail::kMaxVarIndex)
        throw ParseError(line_no, "variable index overflow");
      ++i;
      ++digits;
    }
    if (digits == 0) throw ParseError(line_no, "expected digits after 'x'");
    if (idx == 0) throw ParseError(line_no, "variable indices are 1-based");
    vars.push_back(static_cast<Var>(idx - 1));
    expect_factor = false;
  }
  if (expect_factor) throw ParseError(line_no, "trailing '*' in monomial");
  return Monomial(std::move(vars));
}

}  // namespace detail

inline AnfDocument parse_anf_document(const std::string& text) {
  AnfDocument doc;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c' || line[first] == 'C') continue;

    std::vector<Monomial> monos;
    std::size_t pos = first;
    while (pos <= line.size()) {
      std::size_t plus = line.find('+', pos);
      std::string tok = line.substr(pos, plus == std::string::npos
                                             ? std::string::npos
                                             : plus - pos);
      if (tok.find_first_not_of(" \t\r") == std::string::npos)
        throw ParseError(line_no, "empty monomial");
      monos.push_back(detail::parse_monomial(tok, line_no));
      if (plus == std::string::npos) break;
      pos = plus + 1;
    }
    Polynomial p = Polynomial::from_monomials(std::move(monos));
    for (Var v : p.vars()) doc.num_vars = std::max(doc.num_vars, v + 1);
    doc.polys.push_back(std::move(p));
  }
  return doc;
}

/// Builds a system from a document; duplicate polynomials are dropped on
/// load. No propagation is applied.
inline AnfSystem parse_anf(const std::string& text) {
  AnfDocument doc = parse_anf_document(text);
  AnfSystem sys(doc.num_vars);
  for (const auto& p : doc.polys) sys.add_poly(p);
  return sys;
}

inline std::string write_monomial(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.vars().size(); ++i) {
    if (i) out += '*';
    out += 'x' + std::to_string(m.vars()[i] + 1);
  }
  return out;
}

inline std::string write_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& ms = p.monomials();
  for (std::size_t i = ms.size(); i > 0; --i) {  // descending graded-lex
    if (i != ms.size()) out += " + ";
    out += write_monomial(ms[i - 1]);
  }
  return out;
}

/// Processed-ANF writer: determined values and equivalences first (as
/// polynomials), then the remaining equations.
inline std::string write_anf(AnfSystem& sys) {
  std::ostringstream out;
  out << "c anf, " << sys.num_vars() << " variables\n";
  if (sys.contradiction()) {
    out << "1\n";
    return out.str();
  }
  for (Var v = 0; v < sys.num_vars(); ++v) {
    auto val = sys.value(v);
    Lit root = sys.find(v);
    if (val && root.var == v) {
      Polynomial p = Polynomial::variable(v);
      if (*val) p ^= Monomial::one();
      out << write_polynomial(p) << "\n";
    } else if (root.var != v && !val) {
      Polynomial p = Polynomial::variable(v) ^ Polynomial::variable(root.var);
      if (root.neg) p ^= Monomial::one();
      out << write_polynomial(p) << "\n";
    } else if (root.var != v && val) {
      Polynomial p = Polynomial::variable(v);
      if (*val) p ^= Monomial::one();
      out << write_polynomial(p) << "\n";
    }
  }
  for (const auto& p : sys.polys())
    if (!p.is_zero()) out << write_polynomial(p) << "\n";
  return out.str();
}

inline std::vector<CnfClause> parse_dimacs(const std::string& text,
                                           uint32_t* num_vars_out = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  uint64_t declared_vars = 0, declared_clauses = 0;
  std::vector<CnfClause> clauses;
  CnfClause current;

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    if (line[first] == 'p') {
      std::istringstream hs(line.substr(first + 1));
      std::string kind;
      if (!(hs >> kind >> declared_vars >> declared_clauses) || kind != "cnf")
        throw ParseError(line_no, "malformed 'p cnf' header");
      if (declared_vars > detail::kMaxVarIndex)
        throw ParseError(line_no, "variable count overflow");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError(line_no, "clause before 'p cnf' header");
    std::istringstream ls(line);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        try {
          clauses.push_back(make_clause(std::move(current)));
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, e.what());
        }
        current.clear();
        continue;
      }
      uint64_t v = lit > 0 ? lit : -lit;
      if (v > declared_vars)
        throw ParseError(line_no, "literal beyond declared variable count");
      current.push_back(CLit(static_cast<uint32_t>(v - 1), lit < 0));
    }
    if (!ls.eof())
      throw ParseError(line_no, "non-integer token in clause");
  }
  if (!have_header) throw ParseError(line_no ? line_no : 1, "missing header");
  if (!current.empty())
    throw ParseError(line_no, "unterminated clause");
  if (num_vars_out) *num_vars_out = static_cast<uint32_t>(declared_vars);
  return clauses;
}

inline std::string write_dimacs(const std::vector<CnfClause>& clauses,
                                uint32_t num_vars) {
  for (const auto& c : clauses)
    for (CLit l : c) num_vars = std::max(num_vars, l.var() + 1);
  std::ostringstream out;
  out << "p cnf " << num_vars << " " << clauses.size() << "\n";
  for (const auto& c : clauses) {
    for (CLit l : c) out << (l.neg() ? "-" : "") << (l.var() + 1) << " ";
    out << "0\n";
  }
  return out.str();
}

/// Monomial-map file: one line per mapping `<cnf-var> = <monomial>`;
/// cutting auxiliaries are listed with the marker `aux`.
inline std::string write_map(const MonomialVarMap& map) {
  std::ostringstream out;
  for (const auto& [v, m] : map.var_to_mono)
    out << (v + 1) << " = " << write_monomial(m) << "\n";
  for (uint32_t v : map.cutting_aux) out << (v + 1) << " = aux\n";
  return out.str();
}

inline MonomialVarMap parse_map(const std::string& text) {
  MonomialVarMap map;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected '='");
    uint64_t v = 0;
    try {
      v = std::stoull(line.substr(first, eq - first));
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed variable index");
    }
    if (v == 0 || v > detail::kMaxVarIndex)
      throw ParseError(line_no, "variable index out of range");
    std::string rhs = line.substr(eq + 1);
    std::size_t rf = rhs.find_first_not_of(" \t\r");
    std::size_t rl = rhs.find_last_not_of(" \t\r");
    if (rf == std::string::npos) throw ParseError(line_no, "empty mapping");
    rhs = rhs.substr(rf, rl - rf + 1);
    uint32_t var = static_cast<uint32_t>(v - 1);
    if (rhs == "aux") {
      map.cutting_aux.insert(var);
    } else {
      Monomial m = detail::parse_monomial(rhs, line_no);
      map.mono_to_var.emplace(m, var);
      map.var_to_mono.emplace(var, m);
    }
    map.num_vars = std::max(map.num_vars, var + 1);
  }
  return map;
}

/// SAT-competition style solution file: an `s` status line, then `v` lines
/// of signed 1-based ANF variable indices terminated by 0.
inline std::string write_solution(SolveStatus status,
                                  const std::vector<bool>* model,
                                  uint32_t num_vars) {
  std::ostringstream out;
  switch (status) {
    case SolveStatus::Sat: out << "s SATISFIABLE\n"; break;
    case SolveStatus::Unsat: out << "s UNSATISFIABLE\n"; break;
    case SolveStatus::Unknown: out << "s UNKNOWN\n"; break;
  }
  if (status == SolveStatus::Sat && model) {
    out << "v";
    for (uint32_t v = 0; v < num_vars; ++v)
      out << " " << ((v < model->size() && (*model)[v]) ? "" : "-")
          << (v + 1);
    out << " 0\n";
  }
  return out.str();
}

}  // namespace anfcnf
