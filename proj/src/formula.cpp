#include "actmux/formula.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace actmux {

namespace {

struct Key {
  Op op;
  std::string name;
  Formula a, b;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<std::string>{}(k.name) * 31 + static_cast<std::size_t>(k.op);
    h = h * 1000003 ^ (k.a ? k.a->hash : 17);
    h = h * 1000003 ^ (k.b ? k.b->hash : 29);
    return h;
  }
};

struct Interner {
  std::mutex mu;
  std::deque<Node> nodes;
  std::unordered_map<Key, Formula, KeyHash> table;

  Formula get(Op op, std::string name, Formula a, Formula b) {
    std::lock_guard lock(mu);
    Key k{op, std::move(name), a, b};
    auto it = table.find(k);
    if (it != table.end()) return it->second;
    Node n{k.op, k.name, a, b, KeyHash{}(k), 1, nodes.size(), Ordinal(), false, false};
    if (a) n.size += a->size;
    if (b) n.size += b->size;
    switch (op) {
      case Op::Prim:
      case Op::Zero:
      case Op::One:
        n.rank = Ordinal::finite(1);
        break;
      case Op::Bang:
      case Op::Star:
        n.rank = times_omega(a->rank).succ();
        break;
      case Op::Nabla:
        n.rank = a->rank.succ();
        break;
      default:
        n.rank = hessenberg_sum(a->rank, b->rank).succ();
    }
    n.has_star = op == Op::Star || (a && a->has_star) || (b && b->has_star);
    n.star_in_bang = (op == Op::Bang && a->has_star) || (a && a->star_in_bang) || (b && b->star_in_bang);
    nodes.push_back(std::move(n));
    Formula f = &nodes.back();
    table.emplace(std::move(k), f);
    return f;
  }
};

Interner& interner() {
  static Interner* in = new Interner;
  return *in;
}

bool valid_prim_name(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

Formula prim(std::string_view name) {
  if (!valid_prim_name(name)) throw std::invalid_argument("bad primitive name: " + std::string(name));
  return interner().get(Op::Prim, std::string(name), nullptr, nullptr);
}
Formula zero() { return interner().get(Op::Zero, "", nullptr, nullptr); }
Formula one() { return interner().get(Op::One, "", nullptr, nullptr); }
Formula under(Formula l, Formula r) { return interner().get(Op::Under, "", l, r); }
Formula over(Formula l, Formula r) { return interner().get(Op::Over, "", l, r); }
Formula prod(Formula l, Formula r) { return interner().get(Op::Prod, "", l, r); }
Formula meet(Formula l, Formula r) { return interner().get(Op::Meet, "", l, r); }
Formula join(Formula l, Formula r) { return interner().get(Op::Join, "", l, r); }
Formula bang(Formula f) { return interner().get(Op::Bang, "", f, nullptr); }
Formula star(Formula f) { return interner().get(Op::Star, "", f, nullptr); }
Formula nabla(Formula f) { return interner().get(Op::Nabla, "", f, nullptr); }

Formula make(Op op, Formula a, Formula b) {
  switch (op) {
    case Op::Zero: return zero();
    case Op::One: return one();
    case Op::Prim: throw std::invalid_argument("make: primitive needs a name");
    default: return interner().get(op, "", a, is_unary(op) ? nullptr : b);
  }
}

Formula prods(const std::vector<Formula>& fs) {
  Formula acc = fs.back();
  for (std::size_t k = fs.size() - 1; k-- > 0;) acc = prod(fs[k], acc);
  return acc;
}

Formula meets(const std::vector<Formula>& fs) {
  Formula acc = fs.back();
  for (std::size_t k = fs.size() - 1; k-- > 0;) acc = meet(fs[k], acc);
  return acc;
}

Formula unders(const std::vector<Formula>& lefts, Formula body) {
  Formula acc = body;
  for (std::size_t k = lefts.size(); k-- > 0;) acc = under(lefts[k], acc);
  return acc;
}

bool is_prim(Formula f) { return f->op == Op::Prim; }
bool is_binary(Op op) { return op >= Op::Under && op <= Op::Join; }
bool is_unary(Op op) { return op >= Op::Bang; }

std::size_t connectives(Formula f) {
  if (f->op == Op::Prim || f->op == Op::Zero || f->op == Op::One) return 0;
  return 1 + connectives(f->a) + (f->b ? connectives(f->b) : 0);
}

std::size_t SequentHash::operator()(const Sequent& s) const {
  std::size_t h = s.suc ? s.suc->hash : 0;
  for (Formula f : s.ant) h = h * 0x9e3779b97f4a7c15ULL + f->hash;
  return h;
}

bool sequent_less(const Sequent& a, const Sequent& b) { return print(a) < print(b); }

// ---- parsing ---------------------------------------------------------------

namespace {

struct Parser {
  std::string_view s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool at(std::string_view tok) {
    ws();
    return s.substr(i, tok.size()) == tok;
  }
  bool at_turnstile() { return at("|-"); }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

  Formula join_expr() {
    Formula l = meet_expr();
    if (!at_turnstile() && eat('|')) return join(l, join_expr());
    return l;
  }
  Formula meet_expr() {
    Formula l = prod_expr();
    if (eat('&')) return meet(l, meet_expr());
    return l;
  }
  Formula prod_expr() {
    Formula l = div_expr();
    if (eat('.')) return prod(l, prod_expr());
    return l;
  }
  Formula div_expr() {
    Formula l = unary_expr();
    while (eat('/')) l = over(l, unary_expr());
    if (eat('\\')) return under(l, div_expr());
    return l;
  }
  Formula unary_expr() {
    if (eat('!')) return bang(unary_expr());
    if (eat('@')) return nabla(unary_expr());
    Formula f = primary();
    while (eat('*')) f = star(f);
    return f;
  }
  Formula primary() {
    ws();
    if (i >= s.size()) fail("unexpected end of input");
    char c = s[i];
    if (c == '(') {
      ++i;
      Formula f = join_expr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (c == '0' || c == '1') {
      ++i;
      if (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) fail("bad constant");
      return c == '0' ? zero() : one();
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      Formula f = prim(s.substr(i, j - i));
      i = j;
      return f;
    }
    fail(std::string("unexpected '") + c + "'");
  }
  void end() {
    ws();
    if (i != s.size()) fail("trailing input");
  }
  Nat run_suffix() {
    ws();
    if (!(i < s.size() && s[i] == '^')) return 1;
    ++i;
    if (!eat('{')) fail("expected '{' after '^'");
    ws();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("expected repetition count");
    Nat n(std::string(s.substr(i, j - i)));
    i = j;
    if (!eat('}')) fail("expected '}'");
    return n;
  }
  RunSequent sequent(bool allow_runs) {
    RunSequent out;
    if (!at_turnstile()) {
      for (;;) {
        Formula f = join_expr();
        Nat n = allow_runs ? run_suffix() : Nat(1);
        out.ant.push_back({f, n});
        if (!eat(',')) break;
      }
    }
    if (!at_turnstile()) fail("expected '|-'");
    i += 2;
    out.suc = join_expr();
    end();
    return out;
  }
};

int level(Formula f, const Abbrev* ab, bool top) {
  if (!top && ab && (*ab)(f)) return 6;
  switch (f->op) {
    case Op::Join: return 1;
    case Op::Meet: return 2;
    case Op::Prod: return 3;
    case Op::Under:
    case Op::Over: return 4;
    case Op::Bang:
    case Op::Nabla: return 5;
    default: return 6;
  }
}

std::string pr(Formula f, const Abbrev* ab, bool top);

std::string wrap(Formula f, const Abbrev* ab, bool ok) {
  std::string s = pr(f, ab, false);
  return ok ? s : "(" + s + ")";
}

std::string pr(Formula f, const Abbrev* ab, bool top) {
  if (!top && ab) {
    if (auto name = (*ab)(f)) return *name;
  }
  auto lv = [&](Formula g) { return level(g, ab, false); };
  auto is_under = [&](Formula g) { return lv(g) == 4 && g->op == Op::Under; };
  switch (f->op) {
    case Op::Prim: return f->name;
    case Op::Zero: return "0";
    case Op::One: return "1";
    case Op::Join: return wrap(f->a, ab, lv(f->a) >= 2) + " | " + wrap(f->b, ab, lv(f->b) >= 1);
    case Op::Meet: return wrap(f->a, ab, lv(f->a) >= 3) + " & " + wrap(f->b, ab, lv(f->b) >= 2);
    case Op::Prod: return wrap(f->a, ab, lv(f->a) >= 4) + "." + wrap(f->b, ab, lv(f->b) >= 3);
    case Op::Under:
      return wrap(f->a, ab, lv(f->a) >= 4 && !is_under(f->a)) + "\\" + wrap(f->b, ab, lv(f->b) >= 4);
    case Op::Over:
      return wrap(f->a, ab, lv(f->a) >= 4 && !is_under(f->a)) + "/" + wrap(f->b, ab, lv(f->b) >= 5);
    case Op::Bang: return "!" + wrap(f->a, ab, lv(f->a) >= 5);
    case Op::Nabla: return "@" + wrap(f->a, ab, lv(f->a) >= 5);
    case Op::Star: return wrap(f->a, ab, lv(f->a) >= 6) + "*";
  }
  return "?";
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p{text};
  Formula f = p.join_expr();
  p.end();
  return f;
}

Sequent parse_sequent(std::string_view text) {
  Parser p{text};
  RunSequent r = p.sequent(false);
  Sequent s;
  for (auto& run : r.ant) s.ant.push_back(run.f);
  s.suc = r.suc;
  return s;
}

RunSequent parse_run_sequent(std::string_view text) {
  Parser p{text};
  return p.sequent(true);
}

std::string print(Formula f) { return pr(f, nullptr, true); }

std::string print_abbrev(Formula f, const Abbrev& ab, bool expand_top) { return pr(f, &ab, expand_top); }

std::string print(const Sequent& s) {
  std::string out;
  for (std::size_t k = 0; k < s.ant.size(); ++k) {
    if (k) out += ", ";
    out += print(s.ant[k]);
  }
  return out + (out.empty() ? "|- " : " |- ") + print(s.suc);
}

std::string print(const RunSequent& s) {
  std::string out;
  for (const Run& r : s.ant) {
    if (r.count == 0) continue;
    if (!out.empty()) out += ", ";
    out += print(r.f);
    if (r.count != 1) out += "^{" + r.count.str() + "}";
  }
  return out + (out.empty() ? "|- " : " |- ") + print(s.suc);
}

// ---- rank and fragments ----------------------------------------------------

Ordinal rank(Formula f) { return f->rank; }

Ordinal rank(const Sequent& s) {
  Ordinal r = s.suc->rank;
  for (Formula f : s.ant) r = hessenberg_sum(r, f->rank);
  return r;
}

std::size_t star_bang_depth(Formula f) { return f->rank.degree(); }

bool star_inside_bang(Formula f) { return f->star_in_bang; }

bool in_fragment(const Sequent& s, std::size_t k, bool minus) {
  auto ok = [&](Formula f) { return star_bang_depth(f) <= k && !(minus && f->star_in_bang); };
  for (Formula f : s.ant)
    if (!ok(f)) return false;
  return ok(s.suc);
}

Formula sugar(SugarKind kind, Formula b, Formula a) {
  switch (kind) {
    case SugarKind::Query: return under(b, prod(b, a));
    case SugarKind::Arrow: return under(b, prod(a, b));
    case SugarKind::Okay: {
      Formula okay = prim("okay");
      return under(okay, okay);
    }
  }
  return nullptr;
}

// ---- Goedel numbering ------------------------------------------------------

namespace {

constexpr std::string_view kTail = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";

void tokens(Formula f, std::vector<Nat>& out) {
  switch (f->op) {
    case Op::Prim:
      out.push_back(0);
      out.push_back(prim_name_number(f->name));
      return;
    default:
      out.push_back(static_cast<int>(f->op));
      if (f->a) tokens(f->a, out);
      if (f->b) tokens(f->b, out);
  }
}

std::optional<Formula> untokens(const std::vector<Nat>& t, std::size_t& i) {
  if (i >= t.size()) return std::nullopt;
  const Nat& tag = t[i++];
  if (tag == 0) {
    if (i >= t.size()) return std::nullopt;
    auto name = prim_name_from_number(t[i++]);
    if (!name) return std::nullopt;
    return prim(*name);
  }
  if (tag > static_cast<int>(Op::Nabla)) return std::nullopt;
  Op op = static_cast<Op>(static_cast<int>(tag));
  if (op == Op::Zero) return zero();
  if (op == Op::One) return one();
  auto a = untokens(t, i);
  if (!a) return std::nullopt;
  if (is_unary(op)) return make(op, *a, nullptr);
  auto b = untokens(t, i);
  if (!b) return std::nullopt;
  return make(op, *a, *b);
}

}  // namespace

Nat prim_name_number(std::string_view name) {
  Nat rest = 0;
  for (std::size_t k = 1; k < name.size(); ++k) rest = rest * 63 + (kTail.find(name[k]) + 1);
  return Nat(name[0] - 'a') + 26 * rest;
}

std::optional<std::string> prim_name_from_number(const Nat& n) {
  std::string out(1, static_cast<char>('a' + static_cast<int>(n % 26)));
  Nat rest = n / 26;
  std::string tail;
  while (rest > 0) {
    rest -= 1;
    tail.push_back(kTail[static_cast<std::size_t>(rest % 63)]);
    rest /= 63;
  }
  out.append(tail.rbegin(), tail.rend());
  return out;
}

Nat goedel_encode(const Sequent& s) {
  std::vector<Nat> t{Nat(s.ant.size())};
  for (Formula f : s.ant) tokens(f, t);
  tokens(s.suc, t);
  return tuple_encode(t);
}

std::optional<Sequent> goedel_decode(const Nat& code) {
  auto t = tuple_decode(code);
  if (!t || t->empty()) return std::nullopt;
  if ((*t)[0] > Nat(t->size())) return std::nullopt;
  std::size_t n = static_cast<std::size_t>((*t)[0]);
  std::size_t i = 1;
  Sequent s;
  for (std::size_t k = 0; k < n; ++k) {
    auto f = untokens(*t, i);
    if (!f) return std::nullopt;
    s.ant.push_back(*f);
  }
  auto c = untokens(*t, i);
  if (!c || i != t->size()) return std::nullopt;
  s.suc = *c;
  return s;
}

}  // namespace actmux
