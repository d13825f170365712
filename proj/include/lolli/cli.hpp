#pragma once

// Command layer behind the executable.  Each command reads its inputs from
// disk, renders a deterministic report into `out` (diagnostics and timings
// go to `err`) and returns the process exit code:
//
//   0  success / comparison agreed
//   1  comparison disagreed
//   2  unreadable or unparsable input
//   3  stuck program or unprovable goal
//   4  budget exhausted
//   5  proof rejected by the checker
//
// Keeping the commands in the library makes them callable in-process from
// tests and bindings; the executable is a thin argument parser.

#include <string>

namespace lolli {

struct CmdResult {
  int code = 0;
  std::string out;
  std::string err;
};

// big-step evaluation; budget bounds derivation nodes
CmdResult cmd_run(const std::string& prog_path, const std::string& mem_path, long budget);

// proof search over the translated program; budget bounds BC nodes.
// emit_path, when nonempty, receives the proof tree on success.
CmdResult cmd_prove(const std::string& prog_path, const std::string& mem_path, long budget,
                    const std::string& emit_path = "", bool trace = false);

// system is "full" or "reduced"
CmdResult cmd_check(const std::string& proof_path, const std::string& system);

// to is "uniform", "simple", "coincided" or "reduced"; earlier stages are
// applied in order and every relocation is reported as `step <scheme> @ <path>`
CmdResult cmd_normalize(const std::string& proof_path, const std::string& to,
                        const std::string& out_path);

// run both semantics and align them; agreement on failure (stuck vs
// unprovable) exits 0, a budget on either side exits 4
CmdResult cmd_compare(const std::string& prog_path, const std::string& mem_path, long budget);

}  // namespace lolli
