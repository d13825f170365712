#pragma once

// Textual proof format, one node per line, indented by depth:
//
//   (rule [gamma ; delta |- goal] p=0 i=0,1 w=(term) t={u ; b |- head}
//     premise
//     ...)
//
// p: principal index (delta for left rules/id/BCb, gamma for absorb/BCu);
// i: per-premise intro positions; w: witness; t: backchaining triple.
// Gamma/delta are comma separated, empty sides are left blank.

#include "lolli/proof.hpp"

namespace lolli {

std::string proof_str(const ProofPtr& p);
ProofPtr parse_proof(const std::string& text, Signature& sig);

Sequent parse_sequent(const std::string& text, Signature& sig);

}  // namespace lolli
