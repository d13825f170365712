#include "lolli/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "lolli/encode.hpp"
#include "lolli/normalize.hpp"
#include "lolli/proof_io.hpp"

namespace lolli {

namespace {

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// FNV-1a over the file bytes; enough to tell inputs apart in transcripts
std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
  }
};

int fail(CmdResult& r, int code, const std::string& msg) {
  r.code = code;
  r.err += msg + "\n";
  return code;
}

// loads and parses both inputs; on success the digests are appended to the
// mode line and the program/memory are handed back
struct ProgInputs {
  ProgPtr prog;
  Memory mem;
};

std::optional<ProgInputs> load_prog_inputs(CmdResult& r, std::ostringstream& out,
                                           const std::string& mode, const std::string& prog_path,
                                           const std::string& mem_path) {
  auto ptext = slurp(prog_path);
  if (!ptext) {
    fail(r, 2, "cannot read " + prog_path);
    return std::nullopt;
  }
  auto mtext = slurp(mem_path);
  if (!mtext) {
    fail(r, 2, "cannot read " + mem_path);
    return std::nullopt;
  }
  ProgInputs in;
  try {
    in.prog = parse_program(*ptext);
    in.mem = parse_memory(*mtext);
  } catch (const ImpError& e) {
    fail(r, 2, e.what());
    return std::nullopt;
  }
  out << mode << " " << digest(*ptext) << " " << digest(*mtext) << "\n";
  return in;
}

void print_memory(std::ostringstream& out, const Memory& m) {
  for (const auto& [loc, val] : m) out << "mem " << loc << " " << val << "\n";
}

std::optional<ProofPtr> load_proof(CmdResult& r, std::ostringstream& out, const std::string& mode,
                                   const std::string& proof_path) {
  auto text = slurp(proof_path);
  if (!text) {
    fail(r, 2, "cannot read " + proof_path);
    return std::nullopt;
  }
  // the m/e constructors are pinned so emitted encoding proofs read back
  Signature sig = encoding_signature();
  ProofPtr p;
  try {
    p = parse_proof(*text, sig);
  } catch (const ParseError& e) {
    fail(r, 2, e.what());
    return std::nullopt;
  }
  out << mode << " " << digest(*text) << "\n";
  return p;
}

}  // namespace

CmdResult cmd_run(const std::string& prog_path, const std::string& mem_path, long budget) {
  CmdResult r;
  std::ostringstream out;
  Timer t;
  auto in = load_prog_inputs(r, out, "run", prog_path, mem_path);
  if (!in) return r;
  EvalResult e = eval_oracle(in->prog, in->mem, budget);
  switch (e.status) {
    case EvalStatus::Ok:
      out << "ok\n"
          << "value " << e.value << "\n";
      print_memory(out, e.memory);
      break;
    case EvalStatus::Stuck:
      out << "stuck\n";
      r.code = 3;
      break;
    case EvalStatus::Budget:
      out << "budget-exhausted\n";
      r.code = 4;
      break;
  }
  out << "steps " << e.steps << "\n";
  r.out = out.str();
  r.err += "elapsed " + std::to_string(t.ms()) + "ms\n";
  return r;
}

CmdResult cmd_prove(const std::string& prog_path, const std::string& mem_path, long budget,
                    const std::string& emit_path, bool trace) {
  CmdResult r;
  std::ostringstream out;
  Timer t;
  auto in = load_prog_inputs(r, out, "prove", prog_path, mem_path);
  if (!in) return r;
  SearchConfig cfg;
  cfg.budget = budget;
  LogicRun run = run_via_logic(in->prog, in->mem, cfg);
  switch (run.status) {
    case LogicRun::Status::Ok:
      out << "ok\n"
          << "value " << run.value << "\n";
      print_memory(out, run.memory);
      out << "bc " << run.bc_nodes << "\n";
      if (trace)
        for (const auto& e : run.trace) out << "trace " << trace_line(e) << "\n";
      if (!emit_path.empty()) {
        std::ofstream f(emit_path, std::ios::binary);
        f << proof_str(run.proof);
        if (!f) return fail(r, 2, "cannot write " + emit_path), r;
        r.err += "wrote " + emit_path + "\n";
      }
      break;
    case LogicRun::Status::Unprovable:
      out << "unprovable\n";
      r.code = 3;
      break;
    case LogicRun::Status::Budget:
      out << "budget-exhausted\n";
      r.code = 4;
      break;
  }
  r.out = out.str();
  r.err += "elapsed " + std::to_string(t.ms()) + "ms\n";
  return r;
}

CmdResult cmd_check(const std::string& proof_path, const std::string& system) {
  CmdResult r;
  std::ostringstream out;
  if (system != "full" && system != "reduced") return fail(r, 2, "unknown system: " + system), r;
  auto p = load_proof(r, out, "check " + system, proof_path);
  if (!p) return r;
  CheckResult c = system == "full" ? check_full(*p) : check_reduced(*p);
  if (!c.ok) {
    out << "violation " << c.error << " @ " << path_str(c.where) << "\n";
    r.code = 5;
  } else {
    out << "ok\n"
        << "nodes " << tree_size(*p) << "\n"
        << "end " << sequent_str((*p)->conclusion) << "\n";
    if (system == "full") {
      out << "uniform " << (is_uniform(*p).uniform ? "yes" : "no") << "\n"
          << "simple " << (is_simple(*p).simple ? "yes" : "no") << "\n"
          << "coincided " << (is_coincided(*p).coincided ? "yes" : "no") << "\n";
    }
  }
  r.out = out.str();
  return r;
}

CmdResult cmd_normalize(const std::string& proof_path, const std::string& to,
                        const std::string& out_path) {
  CmdResult r;
  std::ostringstream out;
  Timer t;
  static const std::vector<std::string> stages = {"uniform", "simple", "coincided", "reduced"};
  size_t last = 0;
  while (last < stages.size() && stages[last] != to) last++;
  if (last == stages.size()) return fail(r, 2, "unknown stage: " + to), r;
  auto p = load_proof(r, out, "normalize " + to, proof_path);
  if (!p) return r;
  ProofPtr cur = *p;
  try {
    for (size_t i = 0; i <= last; i++) {
      NormalizeResult n = i == 0   ? to_uniform(cur)
                          : i == 1 ? to_simple(cur)
                          : i == 2 ? to_coincided(cur)
                                   : to_reduced(cur);
      out << "stage " << stages[i] << " steps " << n.steps.size() << "\n";
      for (const auto& s : n.steps) out << "step " << s.scheme << " @ " << path_str(s.at) << "\n";
      cur = n.proof;
    }
  } catch (const NormalizeError& e) {
    out << "violation " << e.what() << "\n";
    r.code = 5;
    r.out = out.str();
    return r;
  }
  CheckResult c = to == "reduced" ? check_reduced(cur) : check_full(cur);
  if (!c.ok) {
    out << "violation " << c.error << " @ " << path_str(c.where) << "\n";
    r.code = 5;
    r.out = out.str();
    return r;
  }
  out << "ok\n"
      << "nodes " << tree_size(cur) << "\n"
      << "end " << sequent_str(cur->conclusion) << "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    f << proof_str(cur);
    if (!f) return fail(r, 2, "cannot write " + out_path), r;
    r.err += "wrote " + out_path + "\n";
  }
  r.out = out.str();
  r.err += "elapsed " + std::to_string(t.ms()) + "ms\n";
  return r;
}

CmdResult cmd_compare(const std::string& prog_path, const std::string& mem_path, long budget) {
  CmdResult r;
  std::ostringstream out;
  Timer t;
  auto in = load_prog_inputs(r, out, "compare", prog_path, mem_path);
  if (!in) return r;
  EvalResult e = eval_oracle(in->prog, in->mem, budget);
  SearchConfig cfg;
  cfg.budget = budget;
  LogicRun run = run_via_logic(in->prog, in->mem, cfg);

  switch (e.status) {
    case EvalStatus::Ok: out << "oracle ok value " << e.value << "\n"; break;
    case EvalStatus::Stuck: out << "oracle stuck\n"; break;
    case EvalStatus::Budget: out << "oracle budget-exhausted\n"; break;
  }
  switch (run.status) {
    case LogicRun::Status::Ok: out << "logic ok value " << run.value << "\n"; break;
    case LogicRun::Status::Unprovable: out << "logic unprovable\n"; break;
    case LogicRun::Status::Budget: out << "logic budget-exhausted\n"; break;
  }

  if (e.status == EvalStatus::Budget || run.status == LogicRun::Status::Budget) {
    out << "budget-exhausted\n";
    r.code = 4;
  } else if (e.status == EvalStatus::Stuck && run.status == LogicRun::Status::Unprovable) {
    out << "agree-on-failure\n";
  } else if (e.status == EvalStatus::Ok && run.status == LogicRun::Status::Ok) {
    MimicryReport rep = mimicry_report(e.deriv, run.proof);
    out << "mimicry\n" << rep.text();
    bool agree = e.value == run.value && e.memory == run.memory && rep.ok;
    out << (agree ? "agree\n" : "disagree\n");
    r.code = agree ? 0 : 1;
  } else {
    out << "disagree\n";
    r.code = 1;
  }
  r.out = out.str();
  r.err += "elapsed " + std::to_string(t.ms()) + "ms\n";
  return r;
}

}  // namespace lolli
