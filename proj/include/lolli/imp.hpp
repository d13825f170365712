#pragma once

// The imperative object language: arithmetic over naturals, memory lookup
// and update, sequencing and while loops.  A big-step evaluator returns the
// value, the final memory and the derivation tree it built; the derivation
// checker re-verifies such trees rule by rule against the schemas.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lolli {

enum class PKind { Num, Add, Sub, Gt, Deref, Assign, Seq, While };

struct Prog;
using ProgPtr = std::shared_ptr<const Prog>;

struct Prog {
  PKind kind;
  std::uint64_t num = 0;  // Num: the literal
  ProgPtr a, b;           // operands; Deref uses a only
};

ProgPtr p_num(std::uint64_t n);
ProgPtr p_add(ProgPtr a, ProgPtr b);
ProgPtr p_sub(ProgPtr a, ProgPtr b);
ProgPtr p_gt(ProgPtr a, ProgPtr b);
ProgPtr p_deref(ProgPtr a);
ProgPtr p_assign(ProgPtr target, ProgPtr source);
ProgPtr p_seq(ProgPtr a, ProgPtr b);
ProgPtr p_while(ProgPtr guard, ProgPtr body);

bool prog_eq(const ProgPtr& a, const ProgPtr& b);
std::string prog_str(const ProgPtr& p);  // surface syntax, minimally parenthesized

struct ImpError : std::runtime_error {
  explicit ImpError(const std::string& what) : std::runtime_error(what) {}
};

// Surface syntax: numerals, *e, e+e, e-e, e>e, e<-e, e;e, while e do e and
// parentheses.  Precedence, tightest first: * (prefix), + and - (left
// associative), >, <- (right associative), ; (right associative); a while
// body extends as far right as possible.  Errors carry line and column.
ProgPtr parse_program(const std::string& text);

// memory: finite map from locations to stored values
using Memory = std::map<std::uint64_t, std::uint64_t>;

Memory parse_memory(const std::string& text);  // one "loc value" pair per line
std::string memory_str(const Memory& m);       // "loc value" lines sorted by loc

enum class DRule { Num, Add, Sub, GtTrue, GtFalse, Deref, Assign, Seq, WhileTrue, WhileFalse };

const char* drule_name(DRule r);

struct Deriv;
using DerivPtr = std::shared_ptr<const Deriv>;

// One judgment <prog, mem_in> ~> (value, mem_out), its subderivations in
// left-to-right premise order, and the side conditions the rule instance
// relied on rendered as text (the checker recomputes them, it does not
// trust the strings).
struct Deriv {
  DRule rule;
  ProgPtr prog;
  Memory mem_in;
  std::uint64_t value = 0;
  Memory mem_out;
  std::vector<DerivPtr> premises;
  std::vector<std::string> sides;
};

int deriv_size(const DerivPtr& d);
void count_drules(const DerivPtr& d, std::map<DRule, int>& out);
std::string deriv_str(const DerivPtr& d);  // one node per line, indented

struct DerivCheck {
  bool ok = true;
  std::string error;
};

// structural re-verification: rule matches the program shape, premises chain
// memories left to right, values follow the schema, lookups are defined
DerivCheck check_derivation(const DerivPtr& d);

enum class EvalStatus { Ok, Stuck, Budget };

struct EvalResult {
  EvalStatus status = EvalStatus::Ok;
  std::uint64_t value = 0;
  Memory memory;
  DerivPtr deriv;  // on Ok
  long steps = 0;  // derivation nodes built, also counted on failures
};

// numerals self-evaluate; add/sub/gt evaluate left then right (sub is monus,
// gt yields 1 or 0); deref reads the evaluated address; assign requires the
// target location to exist already and returns the stored value; seq returns
// its second value; a false while guard returns 0.  The budget bounds the
// number of derivation nodes.
EvalResult eval_oracle(const ProgPtr& p, const Memory& m, long step_budget = 100000);

// the summing loop U and the driver program V built around it
ProgPtr sum_loop();                 // while *1 > 0 do (0 <- *0 + *1 ; 1 <- *1 - 1)
ProgPtr sum_prog(std::uint64_t n);  // 0 <- 0 ; (1 <- n ; U)
// runs V on a memory defined at 0 and 1; the sum of 0..n ends up at location 0
std::pair<std::uint64_t, Memory> run_sum(std::uint64_t n);

}  // namespace lolli
