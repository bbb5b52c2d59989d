#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "anfcnf/anf.hpp"
#include "anfcnf/bench.hpp"
#include "anfcnf/cnf.hpp"
#include "anfcnf/io.hpp"
#include "anfcnf/pipeline.hpp"

namespace {

using namespace anfcnf;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

SolveStatus to_solve_status(PipelineResult::Status s) {
  switch (s) {
    case PipelineResult::Status::Sat: return SolveStatus::Sat;
    case PipelineResult::Status::Unsat: return SolveStatus::Unsat;
    case PipelineResult::Status::Fixpoint: return SolveStatus::Unknown;
  }
  return SolveStatus::Unknown;
}

int run_solve(const std::string& anf_path, const std::string& cnf_path,
              const PipelineConfig& cfg, const std::string& out_anf,
              const std::string& out_cnf, const std::string& out_map,
              const std::string& out_solution, bool quiet) {
  AnfSystem sys;
  uint32_t report_vars = 0;
  if (!anf_path.empty()) {
    sys = parse_anf(read_file(anf_path));
    report_vars = sys.num_vars();
  } else {
    uint32_t nv = 0;
    auto clauses = parse_dimacs(read_file(cnf_path), &nv);
    sys = cnf_to_anf(clauses, nv, cfg.conv);
    report_vars = nv;  // report over the original CNF variables
  }

  PipelineResult res = run_pipeline(sys, cfg);

  if (!out_anf.empty()) write_file(out_anf, write_anf(res.processed));
  if (!out_cnf.empty())
    write_file(out_cnf, write_dimacs(res.cnf, res.map.num_vars));
  if (!out_map.empty()) write_file(out_map, write_map(res.map));

  SolveStatus status = to_solve_status(res.status);
  std::vector<bool> model;
  if (res.model) {
    model = *res.model;
    model.resize(std::max<std::size_t>(model.size(), report_vars));
  }
  std::string solution =
      write_solution(status, res.model ? &model : nullptr, report_vars);
  if (!out_solution.empty()) write_file(out_solution, solution);
  if (!quiet) {
    std::cout << "c iterations " << res.iterations << ", facts "
              << res.facts.size() << "\n"
              << solution;
  }

  switch (status) {
    case SolveStatus::Sat: return 10;
    case SolveStatus::Unsat: return 20;
    case SolveStatus::Unknown: return 0;
  }
  return 0;
}

struct BenchRow {
  std::string name;
  std::string mode;
  int exit_code = 0;
  std::size_t facts = 0;
  uint32_t iterations = 0;
  double millis = 0;
};

int run_bench(const BenchSpec& base, uint32_t count, const PipelineConfig& cfg,
              const std::string& csv_path) {
  std::ostringstream csv;
  csv << "instance,kind,seed,mode,status,iterations,facts,wall_ms\n";
  for (uint32_t i = 0; i < count; ++i) {
    BenchSpec spec = base;
    spec.seed = base.seed + i;
    GeneratedInstance inst = generate(spec);
    AnfSystem sys(inst.doc.num_vars);
    for (const auto& p : inst.doc.polys) sys.add_poly(p);

    for (bool learn : {false, true}) {
      PipelineConfig run_cfg = cfg;
      run_cfg.learn = learn;
      AnfSystem copy = sys;
      auto t0 = std::chrono::steady_clock::now();
      PipelineResult res;
      if (learn) {
        res = run_pipeline(copy, run_cfg);
      } else {
        // convert-only baseline: single SAT call on the converted CNF
        res = run_pipeline(copy, run_cfg);
        if (res.status == PipelineResult::Status::Fixpoint) {
          auto conv = anf_to_cnf(res.processed, cfg.conv);
          auto outcome =
              solve_cnf(conv.clauses, conv.map.num_vars, cfg.budget.cap);
          if (outcome.status == SolveStatus::Sat)
            res.status = PipelineResult::Status::Sat;
          else if (outcome.status == SolveStatus::Unsat)
            res.status = PipelineResult::Status::Unsat;
        }
      }
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
      std::size_t learnt_facts = 0;
      for (const auto& t : res.trace)
        if (t.phase != Phase::Propagate) learnt_facts += t.facts.size();
      csv << (base.kind == BenchSpec::Kind::ToyFeistel ? "feistel" : "planted")
          << "-" << i << ","
          << (base.kind == BenchSpec::Kind::ToyFeistel ? "toy-feistel"
                                                       : "random-planted")
          << "," << spec.seed << "," << (learn ? "learn" : "no-learn") << ","
          << (res.status == PipelineResult::Status::Sat
                  ? "SAT"
                  : res.status == PipelineResult::Status::Unsat ? "UNSAT"
                                                                : "UNKNOWN")
          << "," << res.iterations << "," << learnt_facts << "," << ms << "\n";
    }
  }
  if (csv_path.empty())
    std::cout << csv.str();
  else
    write_file(csv_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ANF/CNF preprocessor and solver with XL, ElimLin and "
               "conflict-bounded CDCL fact learning"};
  app.require_subcommand(0, 1);

  std::string anf_path, cnf_path;
  std::string out_anf, out_cnf, out_map, out_solution;
  PipelineConfig cfg;
  uint64_t confl_budget = 0;
  bool no_learn = false, quiet = false;

  app.add_option("--anf", anf_path, "input ANF file");
  app.add_option("--cnf", cnf_path, "input DIMACS CNF file");
  app.add_option("--out-anf", out_anf, "write the processed ANF here");
  app.add_option("--out-cnf", out_cnf, "write the processed CNF here");
  app.add_option("--out-map", out_map, "write the monomial map here");
  app.add_option("--out-solution", out_solution, "write the solution here");
  app.add_option("--xl-deg", cfg.xl.expansion_degree, "XL expansion degree D")
      ->capture_default_str();
  app.add_option("--karn", cfg.conv.karnaugh_vars, "Karnaugh variable bound K")
      ->capture_default_str();
  app.add_option("--xor-cut", cfg.conv.xor_cut, "XOR-cutting length L")
      ->check(CLI::Range(2u, 30u))
      ->capture_default_str();
  app.add_option("--clause-cut", cfg.conv.clause_cut, "clause-cutting length L'")
      ->check(CLI::Range(1u, 30u))
      ->capture_default_str();
  app.add_option("--confl-budget", confl_budget,
                 "initial SAT conflict budget C");
  app.add_option("--sample-m", cfg.xl.sample_bits,
                 "subsampling budget exponent M")
      ->capture_default_str();
  app.add_option("--sample-dm", cfg.xl.expand_bits,
                 "expansion allowance exponent deltaM")
      ->capture_default_str();
  app.add_option("--seed", cfg.xl.seed, "PRNG seed")->capture_default_str();
  app.add_option("--max-time", cfg.max_seconds,
                 "wall-time bound in seconds (0 = none)");
  app.add_flag("--stop-on-sat,!--no-stop-on-sat", cfg.stop_on_sat,
               "exit the loop when the SAT solver finds a model");
  app.add_flag("--no-learn", no_learn, "convert only, learn no facts");
  app.add_flag("--quiet", quiet, "suppress the solution on stdout");

  auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
  BenchSpec spec;
  std::string kind_name = "planted", gen_out;
  gen->add_option("--kind", kind_name, "planted|feistel")
      ->check(CLI::IsMember({"planted", "feistel"}));
  gen->add_option("--vars", spec.vars, "variables (planted)");
  gen->add_option("--polys", spec.polys, "polynomial count (planted)");
  gen->add_option("--deg", spec.degree, "degree bound (planted)");
  gen->add_option("--width", spec.width, "half-block width (feistel)");
  gen->add_option("--rounds", spec.rounds, "rounds (feistel)");
  gen->add_option("--pairs", spec.pairs, "plaintext pairs (feistel)");
  gen->add_option("--gen-seed", spec.seed, "generator seed");
  gen->add_option("--out", gen_out, "output ANF file (default stdout)");

  auto* bench = app.add_subcommand(
      "bench", "run the with/without-learning comparison harness");
  uint32_t bench_count = 10;
  std::string csv_path;
  bench->add_option("--kind", kind_name, "planted|feistel")
      ->check(CLI::IsMember({"planted", "feistel"}));
  bench->add_option("--count", bench_count, "number of instances");
  bench->add_option("--vars", spec.vars, "variables (planted)");
  bench->add_option("--polys", spec.polys, "polynomial count (planted)");
  bench->add_option("--deg", spec.degree, "degree bound (planted)");
  bench->add_option("--width", spec.width, "half-block width (feistel)");
  bench->add_option("--rounds", spec.rounds, "rounds (feistel)");
  bench->add_option("--pairs", spec.pairs, "plaintext pairs (feistel)");
  bench->add_option("--gen-seed", spec.seed, "generator seed");
  bench->add_option("--csv", csv_path, "CSV report path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (confl_budget > 0) {
    cfg.budget.start = confl_budget;
    cfg.budget.cap = std::max(cfg.budget.cap, confl_budget);
  }
  cfg.learn = !no_learn;
  spec.kind = kind_name == "feistel" ? BenchSpec::Kind::ToyFeistel
                                     : BenchSpec::Kind::RandomPlanted;

  try {
    if (gen->parsed()) {
      GeneratedInstance inst = generate(spec);
      std::string text = write_anf_document(inst.doc);
      if (gen_out.empty())
        std::cout << text;
      else
        write_file(gen_out, text);
      return 0;
    }
    if (bench->parsed()) return run_bench(spec, bench_count, cfg, csv_path);

    if (anf_path.empty() == cnf_path.empty()) {
      std::cerr << "error: give exactly one of --anf or --cnf\n";
      return 1;
    }
    return run_solve(anf_path, cnf_path, cfg, out_anf, out_cnf, out_map,
                     out_solution, quiet);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
