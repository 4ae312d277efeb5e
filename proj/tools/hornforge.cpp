#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hornforge/pipeline.hpp"
#include "hornforge/reconstruct.hpp"
#include "hornforge/smtlib.hpp"
#include "hornforge/tstp.hpp"

namespace fs = std::filesystem;
using namespace hornforge;

namespace {

bool use_color() {
  const char* c = std::getenv("HORNFORGE_COLOR");
  return c && std::string(c) != "0" && std::string(c) != "never";
}

void diag(const std::string& msg) {
  if (use_color()) {
    std::cerr << "\033[1;31merror:\033[0m " << msg << "\n";
  } else {
    std::cerr << "error: " << msg << "\n";
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
}

struct CommonFlags {
  std::vector<std::string> strategies;
  size_t max_clauses = 0;
  double timeout_secs = 0;
  bool sequential = false;
  bool parallel = false;
  bool no_ordering = false;
  bool emit_tstp = false;
  bool normalize = false;
  uint64_t seed = 0;
  std::string outdir;

  void attach(CLI::App* cmd, bool prover_flags) {
    if (prover_flags) {
      cmd->add_option("--strategy", strategies,
                      "age:weight[:ordered|:unordered]; repeatable, replaces the portfolio");
      cmd->add_option("--max-clauses", max_clauses, "kept-clause budget per strategy");
      cmd->add_option("--timeout-secs", timeout_secs, "time budget per strategy, seconds");
      cmd->add_flag("--sequential", sequential, "run portfolio strategies one after another");
      cmd->add_flag("--parallel", parallel, "run portfolio strategies concurrently");
      cmd->add_flag("--no-ordering", no_ordering, "drop KBO restrictions on superposition");
      cmd->add_flag("--emit-tstp", emit_tstp, "write the derivation even on failure");
    }
    cmd->add_flag("--normalize", normalize, "apply the light proof-term simplifier");
    cmd->add_option("--seed", seed, "seed for randomized corpus generation (recorded only)");
    cmd->add_option("-o,--output-dir", outdir, "directory for output files");
  }

  PipelineOptions to_options() const {
    PipelineOptions o;
    for (const std::string& s : strategies) o.strategies.push_back(Strategy::parse(s));
    if (max_clauses) o.max_clauses = max_clauses;
    if (timeout_secs > 0) o.timeout_secs = timeout_secs;
    o.sequential = !parallel;
    o.no_ordering = no_ordering;
    o.normalize = normalize;
    o.seed = seed;
    return o;
  }
};

fs::path out_base(const CommonFlags& flags, const fs::path& input) {
  fs::path dir = flags.outdir.empty() ? input.parent_path() : fs::path(flags.outdir);
  if (!dir.empty()) fs::create_directories(dir);
  return dir / input.stem();
}

int run_prove_cmd(const std::string& input, const CommonFlags& flags) {
  Problem problem = parse_problem(slurp(input));
  ProveArtifacts art = run_prove(problem, flags.to_options());
  fs::path base = out_base(flags, input);
  spit(base.string() + ".report.json", art.report.to_json());
  if (!art.derivation_tstp.empty() &&
      (art.report.outcome == Outcome::kProved || flags.emit_tstp))
    spit(base.string() + ".tstp", art.derivation_tstp);
  if (art.report.outcome == Outcome::kProved) {
    spit(base.string() + ".transformed.tstp", art.transformed_tstp);
    spit(base.string() + ".prf", art.proof_surface);
    std::cout << "proved: " << base.string() << ".prf ("
              << art.report.proof_defs << " definitions, "
              << art.report.derivation_steps << " derivation steps)\n";
  } else {
    diag(std::string(outcome_name(art.report.outcome)) +
         (art.report.detail.empty() ? "" : ": " + art.report.detail));
  }
  return static_cast<int>(art.report.outcome);
}

int run_reconstruct_cmd(const std::string& input, const std::string& tstp,
                        const CommonFlags& flags) {
  Problem problem = parse_problem(slurp(input));
  Derivation d = parse_tstp(slurp(tstp), problem.signature);
  ProveArtifacts art = run_reconstruct(problem, d, flags.to_options());
  fs::path base = out_base(flags, input);
  spit(base.string() + ".report.json", art.report.to_json());
  if (art.report.outcome == Outcome::kProved) {
    spit(base.string() + ".transformed.tstp", art.transformed_tstp);
    spit(base.string() + ".prf", art.proof_surface);
    std::cout << "reconstructed: " << base.string() << ".prf\n";
  } else {
    diag(std::string(outcome_name(art.report.outcome)) +
         (art.report.detail.empty() ? "" : ": " + art.report.detail));
  }
  return static_cast<int>(art.report.outcome);
}

int run_check_cmd(const std::string& prf, const std::string& input) {
  Problem problem = parse_problem(slurp(input));
  Proof proof = parse_surface(slurp(prf), problem.signature);
  RunReport rep = run_check(problem, proof);
  if (rep.outcome == Outcome::kProved) {
    std::cout << "ok: " << prf << " proves " << emit_smt_atom(problem.goal.atom, problem.signature)
              << "\n";
    return 0;
  }
  diag(rep.detail);
  return static_cast<int>(rep.outcome);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hornforge: Horn-logic prover and proof round-trip toolkit"};
  app.require_subcommand(1);

  CommonFlags prove_flags, rec_flags;
  std::string prove_input, rec_input, rec_tstp, check_prf, check_input;

  CLI::App* prove = app.add_subcommand("prove", "prove a goal and emit a checked proof");
  prove->add_option("input", prove_input, "problem file (.smt2)")->required();
  prove_flags.attach(prove, true);

  CLI::App* rec = app.add_subcommand("reconstruct", "replay an external derivation");
  rec->add_option("input", rec_input, "problem file (.smt2)")->required();
  rec->add_option("derivation", rec_tstp, "derivation file (.tstp/.p)")->required();
  rec_flags.attach(rec, false);

  CLI::App* check = app.add_subcommand("check", "kernel-check a proof against a problem");
  check->add_option("proof", check_prf, "proof file (.prf)")->required();
  check->add_option("input", check_input, "problem file (.smt2)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (prove->parsed()) return run_prove_cmd(prove_input, prove_flags);
    if (rec->parsed()) return run_reconstruct_cmd(rec_input, rec_tstp, rec_flags);
    if (check->parsed()) return run_check_cmd(check_prf, check_input);
  } catch (const ParseError& e) {
    diag(e.what());
    return 64;
  } catch (const std::exception& e) {
    diag(e.what());
    return 64;
  }
  return 64;
}
