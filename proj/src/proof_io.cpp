#include "lolli/proof_io.hpp"

#include <sstream>

namespace lolli {

namespace {

void print_node(const ProofPtr& n, int depth, std::ostringstream& os) {
  os << std::string(2 * depth, ' ') << "(" << rule_name(n->rule) << " "
     << sequent_str(n->conclusion);
  if (n->principal >= 0) os << " p=" << n->principal;
  bool any_intro = false;
  for (int i : n->intro) any_intro = any_intro || i >= 0;
  if (any_intro) {
    os << " i=";
    for (size_t k = 0; k < n->intro.size(); k++) os << (k ? "," : "") << n->intro[k];
  }
  if (n->witness) os << " w=(" << formula_str(n->witness) << ")";
  if (n->triple) {
    const ClauseTriple& t = *n->triple;
    os << " t={";
    for (size_t i = 0; i < t.unbounded.size(); i++)
      os << (i ? ", " : "") << formula_str(t.unbounded[i]);
    os << " ; ";
    for (size_t i = 0; i < t.bounded.size(); i++)
      os << (i ? ", " : "") << formula_str(t.bounded[i]);
    os << " |- " << formula_str(t.head) << "}";
  }
  for (const auto& q : n->premises) {
    os << "\n";
    print_node(q, depth + 1, os);
  }
  os << ")";
}

struct ProofParser {
  const std::string& s;
  size_t p = 0;
  Signature& sig;

  ProofParser(const std::string& text, Signature& g) : s(text), sig(g) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(p));
  }

  void ws() {
    while (p < s.size() && isspace((unsigned char)s[p])) p++;
  }

  bool eat(char c) {
    ws();
    if (p < s.size() && s[p] == c) { p++; return true; }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    ws();
    size_t start = p;
    while (p < s.size() && (isalnum((unsigned char)s[p]) || s[p] == '_')) p++;
    if (p == start) fail("expected identifier");
    return s.substr(start, p - start);
  }

  // raw text until the given closer at bracket depth 0 (parens tracked)
  std::string until(char closer) {
    size_t start = p;
    int depth = 0;
    while (p < s.size()) {
      char c = s[p];
      if (depth == 0 && c == closer) {
        std::string out = s.substr(start, p - start);
        p++;
        return out;
      }
      if (c == '(') depth++;
      if (c == ')') depth--;
      p++;
    }
    fail(std::string("unterminated, expected '") + closer + "'");
  }

  static std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : text) {
      if (c == '(') depth++;
      if (c == ')') depth--;
      if (c == sep && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    return parts;
  }

  static bool blank(const std::string& t) {
    for (char c : t)
      if (!isspace((unsigned char)c)) return false;
    return true;
  }

  std::vector<TermPtr> formula_list(const std::string& text) {
    std::vector<TermPtr> out;
    if (blank(text)) return out;
    for (const auto& part : split(text, ','))
      out.push_back(parse_formula(part, sig));
    return out;
  }

  // splits "ctx |- goal" on the last top-level turnstile
  static std::pair<std::string, std::string> split_turnstile(const std::string& text) {
    int depth = 0;
    size_t at = std::string::npos;
    for (size_t i = 0; i + 1 < text.size(); i++) {
      if (text[i] == '(') depth++;
      if (text[i] == ')') depth--;
      if (depth == 0 && text[i] == '|' && text[i + 1] == '-') at = i;
    }
    if (at == std::string::npos) throw ParseError("missing |- in: " + text);
    return {text.substr(0, at), text.substr(at + 2)};
  }

  Sequent sequent(const std::string& text) {
    auto [ctx, goal] = split_turnstile(text);
    auto sides = split(ctx, ';');
    if (sides.size() != 2) throw ParseError("expected 'gamma ; delta |- goal' in: " + text);
    Sequent seq;
    seq.gamma = formula_list(sides[0]);
    canon_gamma(seq.gamma);
    seq.delta = formula_list(sides[1]);
    seq.goal = parse_formula(goal, sig);
    return seq;
  }

  ClauseTriple triple(const std::string& text) {
    auto [ctx, head] = split_turnstile(text);
    auto sides = split(ctx, ';');
    if (sides.size() != 2) throw ParseError("expected '{u ; b |- head}' in: " + text);
    ClauseTriple t;
    t.unbounded = formula_list(sides[0]);
    t.bounded = formula_list(sides[1]);
    t.head = parse_formula(head, sig);
    return t;
  }

  ProofPtr node() {
    expect('(');
    std::string rname = ident();
    auto rule = rule_by_name(rname);
    if (!rule) fail("unknown rule " + rname);
    ws();
    expect('[');
    Sequent seq = sequent(until(']'));
    auto n = std::make_shared<ProofNode>();
    n->rule = *rule;
    n->conclusion = std::move(seq);
    std::string witness_text;
    std::string triple_text;
    bool have_triple = false;
    while (true) {
      ws();
      if (p >= s.size()) fail("unterminated node");
      if (s[p] == '(' || s[p] == ')') break;
      std::string key = ident();
      expect('=');
      if (key == "p") {
        n->principal = number();
      } else if (key == "i") {
        n->intro.clear();
        n->intro.push_back(number());
        while (eat(',')) n->intro.push_back(number());
      } else if (key == "w") {
        expect('(');
        witness_text = until(')');
      } else if (key == "t") {
        expect('{');
        int depth = 0;
        size_t start = p;
        while (p < s.size() && !(depth == 0 && s[p] == '}')) {
          if (s[p] == '(') depth++;
          if (s[p] == ')') depth--;
          p++;
        }
        if (p >= s.size()) fail("unterminated triple");
        triple_text = s.substr(start, p - start);
        have_triple = true;
        p++;
      } else {
        fail("unknown attribute " + key);
      }
    }
    while (true) {
      ws();
      if (p < s.size() && s[p] == '(') {
        n->premises.push_back(node());
      } else {
        break;
      }
    }
    expect(')');
    // premise formulas may declare constants the witness mentions
    if (!witness_text.empty()) n->witness = parse_term(witness_text, sig);
    if (have_triple) n->triple = triple(triple_text);
    if (n->intro.empty()) n->intro.assign(n->premises.size(), -1);
    while (n->intro.size() < n->premises.size()) n->intro.push_back(-1);
    return n;
  }

  int number() {
    ws();
    bool neg = p < s.size() && s[p] == '-';
    if (neg) p++;
    size_t start = p;
    while (p < s.size() && isdigit((unsigned char)s[p])) p++;
    if (p == start) fail("expected number");
    int v = std::stoi(s.substr(start, p - start));
    return neg ? -v : v;
  }
};

}  // namespace

std::string proof_str(const ProofPtr& p) {
  std::ostringstream os;
  print_node(p, 0, os);
  os << "\n";
  return os.str();
}

ProofPtr parse_proof(const std::string& text, Signature& sig) {
  ProofParser pp(text, sig);
  ProofPtr n = pp.node();
  pp.ws();
  if (pp.p != text.size()) pp.fail("trailing input after proof");
  return n;
}

Sequent parse_sequent(const std::string& text, Signature& sig) {
  std::string t = text;
  // allow surrounding brackets
  size_t a = t.find_first_not_of(" \t\n");
  size_t b = t.find_last_not_of(" \t\n");
  if (a != std::string::npos && t[a] == '[' && t[b] == ']') t = t.substr(a + 1, b - a - 1);
  ProofParser pp(t, sig);
  return pp.sequent(t);
}

}  // namespace lolli
