#include <iostream>

#include "CLI11.hpp"
#include "lolli/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"linear-logic workbench: proofs, normalization and a small imperative language"};
  app.require_subcommand(1);

  std::string prog, mem, proof, emit, outp;
  std::string system = "full", to = "reduced";
  long budget = 100000;
  bool trace = false;

  auto* run = app.add_subcommand("run", "evaluate a program under the big-step semantics");
  run->add_option("program", prog, "program file")->required();
  run->add_option("memory", mem, "memory file, one `location value` pair per line")->required();
  run->add_option("-b,--budget", budget, "derivation node budget");

  auto* prove = app.add_subcommand("prove", "run a program by proof search over its translation");
  prove->add_option("program", prog, "program file")->required();
  prove->add_option("memory", mem, "memory file")->required();
  prove->add_option("-b,--budget", budget, "backchaining node budget");
  prove->add_option("-o,--emit-proof", emit, "write the proof tree here");
  prove->add_flag("-t,--trace", trace, "print the backchaining trace");

  auto* check = app.add_subcommand("check", "check a proof tree file");
  check->add_option("proof", proof, "proof file")->required();
  check->add_option("-s,--system", system, "full or reduced")
      ->check(CLI::IsMember({"full", "reduced"}));

  auto* norm = app.add_subcommand("normalize", "normalize a proof toward the reduced system");
  norm->add_option("proof", proof, "proof file")->required();
  norm->add_option("-t,--to", to, "target stage")
      ->check(CLI::IsMember({"uniform", "simple", "coincided", "reduced"}));
  norm->add_option("-o,--out", outp, "write the normalized proof here");

  auto* cmp = app.add_subcommand("compare", "run both semantics and align the two accounts");
  cmp->add_option("program", prog, "program file")->required();
  cmp->add_option("memory", mem, "memory file")->required();
  cmp->add_option("-b,--budget", budget, "node budget for both sides");

  CLI11_PARSE(app, argc, argv);

  lolli::CmdResult r;
  if (run->parsed()) r = lolli::cmd_run(prog, mem, budget);
  else if (prove->parsed()) r = lolli::cmd_prove(prog, mem, budget, emit, trace);
  else if (check->parsed()) r = lolli::cmd_check(proof, system);
  else if (norm->parsed()) r = lolli::cmd_normalize(proof, to, outp);
  else r = lolli::cmd_compare(prog, mem, budget);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
