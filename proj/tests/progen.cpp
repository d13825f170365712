#include "progen.hpp"

namespace lolli {

namespace {

ProgPtr literal(std::mt19937& rng) {
  // mostly plausible locations, occasionally a bigger value
  if (rng() % 5 == 0) return p_num(rng() % 100);
  return p_num(rng() % 6);
}

}  // namespace

ProgPtr random_program(std::mt19937& rng, int depth, bool loops) {
  if (depth <= 0) return literal(rng);
  auto sub = [&] { return random_program(rng, depth - 1, loops); };
  // addresses stay inside the populated locations most of the time
  auto addr = [&] { return rng() % 5 < 4 ? p_num(rng() % 4) : sub(); };
  switch (rng() % (loops ? 20 : 19)) {
    case 0:
    case 1:
      return literal(rng);
    case 2:
    case 3:
      return p_add(sub(), sub());
    case 4:
    case 5:
      return p_sub(sub(), sub());
    case 6:
      return p_gt(sub(), sub());
    case 7:
    case 8:
    case 9:
      return p_deref(addr());
    case 10:
    case 11:
    case 12:
      return p_assign(addr(), sub());
    case 13:
    case 14:
    case 15:
      return p_seq(sub(), sub());
    case 16:
    case 17:
      return p_seq(p_assign(literal(rng), sub()), sub());
    case 18:
      return p_deref(literal(rng));
    default:
      return p_while(p_gt(p_deref(literal(rng)), literal(rng)), sub());
  }
}

Memory random_memory(std::mt19937& rng) {
  Memory m;
  for (std::uint64_t loc = 0; loc < 3; loc++) m[loc] = rng() % 100;
  return m;
}

}  // namespace lolli
