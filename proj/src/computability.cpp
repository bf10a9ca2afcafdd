#include "actmux/computability.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace actmux {

// ---- quantifier-free arithmetic ----------------------------------------------

bool qf_is_term(const QfNode& n) { return static_cast<unsigned>(n.tag) <= static_cast<unsigned>(QfTag::Mul); }

std::size_t qf_max_var(const QfNode& n) {
  std::size_t m = n.tag == QfTag::Var ? n.var : 0;
  for (const auto& k : n.kids) m = std::max(m, qf_max_var(k));
  return m;
}

namespace {

QfNode node(QfTag t, std::vector<QfNode> kids = {}) { return QfNode{t, 0, std::move(kids)}; }

struct QfParser {
  std::string_view s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(msg + " at offset " + std::to_string(i));
  }
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  QfNode formula() {
    QfNode l = conj();
    if (eat('|')) return node(QfTag::Or, {l, formula()});
    return l;
  }
  QfNode conj() {
    QfNode l = neg();
    if (eat('&')) return node(QfTag::And, {l, conj()});
    return l;
  }
  QfNode neg() {
    if (eat('!')) return node(QfTag::Not, {neg()});
    ws();
    if (i < s.size() && s[i] == '(') {
      std::size_t save = i;
      ++i;
      try {
        QfNode f = formula();
        if (eat(')')) {
          ws();
          // A parenthesized term followed by a comparison is an atom instead.
          if (i < s.size() && std::string_view("=<+*").find(s[i]) != std::string_view::npos) throw std::invalid_argument("");
          return f;
        }
      } catch (const std::invalid_argument&) {
      }
      i = save;
    }
    return atom();
  }
  QfNode atom() {
    QfNode l = term();
    if (eat('=')) return node(QfTag::Eq, {l, term()});
    if (eat('<')) return node(QfTag::Lt, {l, term()});
    fail("expected = or <");
  }
  QfNode term() {
    QfNode l = product();
    while (eat('+')) l = node(QfTag::Add, {l, product()});
    return l;
  }
  QfNode product() {
    QfNode l = factor();
    while (eat('*')) l = node(QfTag::Mul, {l, factor()});
    return l;
  }
  QfNode factor() {
    ws();
    if (eat('(')) {
      QfNode t = term();
      if (!eat(')')) fail("expected )");
      return t;
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) fail("expected variable number");
      std::size_t v = std::stoul(std::string(s.substr(i, j - i)));
      if (v == 0) fail("variables start at x1");
      i = j;
      return QfNode{QfTag::Var, v, {}};
    }
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("expected term");
    std::size_t v = std::stoul(std::string(s.substr(i, j - i)));
    i = j;
    if (v == 0) return node(QfTag::Zero);
    QfNode t = node(QfTag::One);
    for (std::size_t k = 1; k < v; ++k) t = node(QfTag::Add, {t, node(QfTag::One)});
    return t;
  }
};

int prec(QfTag t) {
  switch (t) {
    case QfTag::Or: return 1;
    case QfTag::And: return 2;
    case QfTag::Not: return 3;
    case QfTag::Add: return 4;
    case QfTag::Mul: return 5;
    default: return 6;
  }
}

std::string print_child(const QfNode& c, int parent, bool strict) {
  std::string s = print_qf(c);
  int p = prec(c.tag);
  bool paren = strict ? p <= parent : p < parent;
  if (c.tag == QfTag::Eq || c.tag == QfTag::Lt) paren = parent == prec(QfTag::Not);
  return paren ? "(" + s + ")" : s;
}

void tokens(const QfNode& n, std::vector<Nat>& out) {
  out.push_back(static_cast<unsigned>(n.tag));
  if (n.tag == QfTag::Var) out.push_back(n.var);
  for (const auto& k : n.kids) tokens(k, out);
}

std::optional<QfNode> read(const std::vector<Nat>& t, std::size_t& pos, bool want_term) {
  if (pos >= t.size() || t[pos] > 9) return std::nullopt;
  auto tag = static_cast<QfTag>(static_cast<unsigned>(t[pos++]));
  QfNode n{tag, 0, {}};
  if (qf_is_term(n) != want_term) return std::nullopt;
  std::size_t arity = 0;
  bool kid_terms = true;
  switch (tag) {
    case QfTag::Var:
      if (pos >= t.size() || t[pos] == 0 || t[pos] > 1'000'000) return std::nullopt;
      n.var = static_cast<std::size_t>(t[pos++]);
      break;
    case QfTag::Add:
    case QfTag::Mul:
    case QfTag::Eq:
    case QfTag::Lt: arity = 2; break;
    case QfTag::Not: arity = 1, kid_terms = false; break;
    case QfTag::And:
    case QfTag::Or: arity = 2, kid_terms = false; break;
    default: break;
  }
  for (std::size_t k = 0; k < arity; ++k) {
    auto c = read(t, pos, kid_terms);
    if (!c) return std::nullopt;
    n.kids.push_back(std::move(*c));
  }
  return n;
}

Nat eval_term(const QfNode& n, const std::vector<Nat>& a) {
  switch (n.tag) {
    case QfTag::Zero: return 0;
    case QfTag::One: return 1;
    case QfTag::Var: return a.at(n.var - 1);
    case QfTag::Add: return eval_term(n.kids[0], a) + eval_term(n.kids[1], a);
    case QfTag::Mul: return eval_term(n.kids[0], a) * eval_term(n.kids[1], a);
    default: throw std::invalid_argument("not a term");
  }
}

}  // namespace

QfNode parse_qf(std::string_view text) {
  QfParser p{text, 0};
  QfNode f = p.formula();
  p.ws();
  if (p.i != text.size()) p.fail("unexpected input");
  return f;
}

std::string print_qf(const QfNode& n) {
  switch (n.tag) {
    case QfTag::Zero: return "0";
    case QfTag::One: return "1";
    case QfTag::Var: return "x" + std::to_string(n.var);
    case QfTag::Add: return print_child(n.kids[0], 4, false) + "+" + print_child(n.kids[1], 4, true);
    case QfTag::Mul: return print_child(n.kids[0], 5, false) + "*" + print_child(n.kids[1], 5, true);
    case QfTag::Eq: return print_qf(n.kids[0]) + "=" + print_qf(n.kids[1]);
    case QfTag::Lt: return print_qf(n.kids[0]) + "<" + print_qf(n.kids[1]);
    case QfTag::Not: return "!" + print_child(n.kids[0], 3, false);
    case QfTag::And: return print_child(n.kids[0], 2, true) + " & " + print_child(n.kids[1], 2, false);
    case QfTag::Or: return print_child(n.kids[0], 1, true) + " | " + print_child(n.kids[1], 1, false);
  }
  return "?";
}

Nat qf_number(const QfNode& n) {
  std::vector<Nat> t;
  tokens(n, t);
  return tuple_encode(t);
}

std::optional<QfNode> qf_decode(const Nat& c) {
  auto t = tuple_decode(c);
  if (!t) return std::nullopt;
  std::size_t pos = 0;
  auto n = read(*t, pos, false);
  if (!n || pos != t->size()) return std::nullopt;
  return n;
}

bool qf_eval(const QfNode& n, const std::vector<Nat>& a) {
  switch (n.tag) {
    case QfTag::Eq: return eval_term(n.kids[0], a) == eval_term(n.kids[1], a);
    case QfTag::Lt: return eval_term(n.kids[0], a) < eval_term(n.kids[1], a);
    case QfTag::Not: return !qf_eval(n.kids[0], a);
    case QfTag::And: return qf_eval(n.kids[0], a) && qf_eval(n.kids[1], a);
    case QfTag::Or: return qf_eval(n.kids[0], a) || qf_eval(n.kids[1], a);
    default: throw std::invalid_argument("not a formula");
  }
}

bool qf_eval(const Nat& c, std::size_t i, const std::vector<Nat>& a) {
  auto n = qf_decode(c);
  if (!n) throw std::invalid_argument("invalid qf number");
  if (qf_max_var(*n) > i) throw std::invalid_argument("formula uses variables beyond x" + std::to_string(i));
  if (a.size() != i) throw std::invalid_argument("assignment length differs from the arity");
  return qf_eval(*n, a);
}

// ---- machines ------------------------------------------------------------------

namespace {

std::mutex registry_mu;

std::deque<RegistryMachine>& registry() {
  static std::deque<RegistryMachine> r = [] {
    std::deque<RegistryMachine> v;
    v.push_back({"diverge", [](const Nat&) -> std::optional<std::size_t> { return std::nullopt; }, true, {}});
    v.push_back({"total", [](const Nat&) -> std::optional<std::size_t> { return 1; }, false, {}});
    v.push_back({"even", [](const Nat& n) -> std::optional<std::size_t> {
                   if (n % 2 != 0) return std::nullopt;
                   if (n > 1'000'000) return std::nullopt;
                   return static_cast<std::size_t>(n) + 1;
                 },
                 false, {}});
    Nat c_eq = qf_number(parse_qf("x1=x2"));
    Nat member = encode_triple(Ordinal(), 1, c_eq);
    v.push_back({"single-eq", [member](const Nat& n) -> std::optional<std::size_t> {
                   if (n == member) return 1;
                   return std::nullopt;
                 },
                 true, {member}});
    return v;
  }();
  return r;
}

}  // namespace

std::size_t registry_size() {
  std::lock_guard lock(registry_mu);
  return registry().size();
}

const RegistryMachine& registry_entry(std::size_t k) {
  std::lock_guard lock(registry_mu);
  return registry().at(k);
}

Nat register_machine(RegistryMachine m) {
  std::lock_guard lock(registry_mu);
  registry().push_back(std::move(m));
  return Nat(2) * (registry().size() - 1);
}

Nat register_finite_machine(std::string name, std::vector<Nat> members) {
  std::vector<Nat> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  auto fn = [sorted](const Nat& n) -> std::optional<std::size_t> {
    if (std::binary_search(sorted.begin(), sorted.end(), n)) return 1;
    return std::nullopt;
  };
  return register_machine({std::move(name), fn, true, std::move(sorted)});
}

Nat encode_machine(std::size_t states, std::size_t symbols, const std::vector<CodedTransition>& delta) {
  std::vector<Nat> t{states, symbols};
  for (const auto& d : delta) t.insert(t.end(), {d.q, d.a, d.r, d.b, d.d});
  return 2 * tuple_encode(t) + 1;
}

std::optional<TuringMachine> decode_machine(const Nat& e) {
  if (e % 2 == 0) return std::nullopt;
  auto t = tuple_decode((e - 1) / 2);
  if (!t || t->size() < 2 || (t->size() - 2) % 5 != 0) return std::nullopt;
  if ((*t)[0] < 2 || (*t)[1] < 2 || (*t)[0] > 4096 || (*t)[1] > 4096) return std::nullopt;
  auto nq = static_cast<std::size_t>((*t)[0]);
  auto ns = static_cast<std::size_t>((*t)[1]);
  TuringMachine tm;
  for (std::size_t q = 0; q < nq; ++q) tm.states.push_back("q" + std::to_string(q));
  for (std::size_t s = 0; s < ns; ++s) tm.tape.push_back("s" + std::to_string(s));
  tm.blank = "s0";
  tm.input = {"s1"};
  tm.output.assign(tm.tape.begin() + 1, tm.tape.end());
  tm.q0 = "q0";
  tm.qa = "q1";
  for (std::size_t k = 2; k < t->size(); k += 5) {
    const Nat &q = (*t)[k], &a = (*t)[k + 1], &r = (*t)[k + 2], &b = (*t)[k + 3], &d = (*t)[k + 4];
    if (q >= nq || q == 1 || a >= ns || r >= nq || b >= ns || d > 2) return std::nullopt;
    tm.delta.push_back({tm.states[static_cast<std::size_t>(q)], tm.tape[static_cast<std::size_t>(a)],
                        tm.states[static_cast<std::size_t>(r)], tm.tape[static_cast<std::size_t>(b)],
                        "LRN"[static_cast<std::size_t>(d)]});
  }
  return tm;
}

bool halt(const Nat& n, const Nat& e, const Nat& y) {
  if (y == 0) return false;
  if (e % 2 == 0) {
    Nat k = e / 2;
    if (k >= registry_size()) return false;
    auto st = registry_entry(static_cast<std::size_t>(k)).steps(n);
    return st && Nat(*st) <= y;
  }
  auto tm = decode_machine(e);
  if (!tm || n > 1'000'000) return false;
  std::size_t cap = y > 10'000'000 ? 10'000'000 : static_cast<std::size_t>(y);
  Word input(static_cast<std::size_t>(n), "s1");
  TmRun run = run_tm(*tm, input, cap);
  return run.status == TmStatus::Accepted && run.steps <= cap;
}

std::set<Nat> enumerate_we(const Nat& e, const Nat& Y, const Nat& N) {
  std::set<Nat> out;
  for (Nat n = 0; n <= N; ++n)
    if (halt(n, e, Y)) out.insert(n);
  if (e % 2 == 0 && e / 2 < registry_size()) {
    const auto& m = registry_entry(static_cast<std::size_t>(e / 2));
    for (const Nat& n : m.members)
      if (halt(n, e, Y)) out.insert(n);
  }
  return out;
}

bool we_complete(const Nat& e, const Nat& Y) {
  if (e % 2 == 1) return !decode_machine(e).has_value();
  Nat k = e / 2;
  if (k >= registry_size()) return true;
  const auto& m = registry_entry(static_cast<std::size_t>(k));
  if (!m.finite_known) return false;
  for (const Nat& n : m.members)
    if (!halt(n, e, Y)) return false;
  return true;
}

// ---- computable infinitary formulas -------------------------------------------

Quant dual(Quant x) { return x == Quant::Sigma ? Quant::Pi : Quant::Sigma; }
const char* to_string(Quant x) { return x == Quant::Sigma ? "Sigma" : "Pi"; }

Nat InfIndex::code() const { return tuple_encode({Nat(static_cast<unsigned>(x)), p, i, e}); }

std::optional<InfIndex> decode_index(const Nat& code) {
  auto t = tuple_decode(code);
  if (!t || t->size() != 4) return std::nullopt;
  if ((*t)[0] != 1 && (*t)[0] != 2) return std::nullopt;
  if ((*t)[1] == 0) return std::nullopt;
  return InfIndex{(*t)[0] == 1 ? Quant::Sigma : Quant::Pi, (*t)[1], (*t)[2], (*t)[3]};
}

InfIndex parse_index(std::string_view text) {
  auto at = text.find('@');
  if (at == std::string_view::npos) throw std::invalid_argument("index literal needs '@'");
  InfIndex idx;
  std::string_view q = text.substr(0, at);
  if (q == "Sigma") idx.x = Quant::Sigma;
  else if (q == "Pi") idx.x = Quant::Pi;
  else throw std::invalid_argument("index literal must start with Sigma or Pi");
  std::string rest(text.substr(at + 1));
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= rest.size(); ++k)
    if (k == rest.size() || rest[k] == ':') {
      parts.push_back(rest.substr(start, k - start));
      start = k + 1;
    }
  std::string err;
  auto alpha = parse_ordinal(parts[0], &err);
  if (!alpha) throw std::invalid_argument("bad ordinal in index literal: " + err);
  idx.p = pi_encode(*alpha);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const std::string& part = parts[k];
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad field '" + part + "'");
    auto v = parse_nat(part.substr(eq + 1));
    if (!v) throw std::invalid_argument("bad number in field '" + part + "'");
    std::string key = part.substr(0, eq);
    if (key == "i") idx.i = *v;
    else if (key == "e" || key == "c") idx.e = *v;
    else throw std::invalid_argument("unknown field '" + key + "'");
  }
  return idx;
}

std::string print_index(const InfIndex& idx) {
  auto a = pi_decode(idx.p);
  return std::string(to_string(idx.x)) + "@" + (a ? to_string(*a) : "?") + ":i=" + to_string(idx.i) +
         ":e=" + to_string(idx.e);
}

Nat sub(const InfIndex& idx, const std::vector<Nat>& a) {
  if (Nat(a.size()) != idx.i) throw std::invalid_argument("assignment length differs from the index arity");
  return pair_encode(idx.code(), tuple_encode(a));
}

Nat encode_input(const SatInput& in) { return sub(in.idx, in.args); }

std::optional<SatInput> decode_input(const Nat& inp) {
  auto t = tuple_decode(inp);
  if (!t || t->size() != 2) return std::nullopt;
  auto idx = decode_index((*t)[0]);
  if (!idx || !pi_decode(idx->p)) return std::nullopt;
  auto args = tuple_decode((*t)[1]);
  if (!args || Nat(args->size()) != idx->i) return std::nullopt;
  return SatInput{*idx, *args};
}

std::optional<Triple> decode_triple(const Nat& c) {
  auto t = tuple_decode(c);
  if (!t || t->size() != 3 || (*t)[1] > 64) return std::nullopt;
  auto beta = pi_decode((*t)[0]);
  if (!beta) return std::nullopt;
  return Triple{*beta, static_cast<std::size_t>((*t)[1]), (*t)[2]};
}

Nat encode_triple(const Ordinal& beta, std::size_t k, const Nat& e) { return tuple_encode({pi_encode(beta), k, e}); }

namespace {

constexpr std::size_t kMaxWitnessTuples = 1'000'000;

// Calls f on every tuple in [0, N]^k in lexicographic order until it returns false.
// Returns false when the tuple count exceeds the cap.
bool for_each_witness(std::size_t k, const Nat& N, const std::function<bool(const std::vector<Nat>&)>& f) {
  Nat count = 1;
  for (std::size_t j = 0; j < k; ++j) count *= N + 1;
  if (count > kMaxWitnessTuples) return false;
  std::vector<Nat> w(k, Nat(0));
  for (;;) {
    if (!f(w)) return true;
    std::size_t j = k;
    while (j > 0 && w[j - 1] == N) w[--j] = 0;
    if (j == 0) return true;
    ++w[j - 1];
  }
}

}  // namespace

SatResult bounded_sat(const SatInput& in, const SatBudget& budget) {
  auto alpha = pi_decode(in.idx.p);
  if (!alpha) return {Truth::Unknown, "malformed rank notation"};
  if (Nat(in.args.size()) != in.idx.i) return {Truth::Unknown, "arity mismatch"};
  if (alpha->is_zero()) {
    auto f = qf_decode(in.idx.e);
    if (!f) return {Truth::Unknown, "invalid qf number"};
    if (qf_max_var(*f) > in.args.size()) return {Truth::Unknown, "qf formula uses unassigned variables"};
    return {qf_eval(*f, in.args) ? Truth::True : Truth::False, ""};
  }
  const bool sigma = in.idx.x == Quant::Sigma;
  // A disjunct making a Sigma formula true, or a conjunct making a Pi formula false.
  const Truth decisive = sigma ? Truth::True : Truth::False;
  const Truth neutral = sigma ? Truth::False : Truth::True;
  bool exhaustive = we_complete(in.idx.e, budget.halt_bound);
  std::string diag;
  for (const Nat& c : enumerate_we(in.idx.e, budget.halt_bound, budget.witness_bound)) {
    auto tr = decode_triple(c);
    if (!tr || !(tr->beta < *alpha)) continue;
    if (tr->k > 0) exhaustive = false;
    bool hit = false;
    bool capped = !for_each_witness(tr->k, budget.witness_bound, [&](const std::vector<Nat>& w) {
      SatInput next{{dual(in.idx.x), pi_encode(tr->beta), in.idx.i + tr->k, tr->e}, in.args};
      next.args.insert(next.args.end(), w.begin(), w.end());
      SatResult r = bounded_sat(next, budget);
      if (r.value == decisive) {
        hit = true;
        return false;
      }
      if (r.value != neutral) {
        exhaustive = false;
        if (diag.empty()) diag = r.diagnostic;
      }
      return true;
    });
    if (hit) return {decisive, ""};
    if (capped) exhaustive = false;
  }
  if (exhaustive) return {neutral, ""};
  return {Truth::Unknown, diag.empty() ? "enumeration budget not exhaustive" : diag};
}

}  // namespace actmux
