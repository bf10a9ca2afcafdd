#include "actmux/decider.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace actmux {

namespace {

Formula killer() { return energy_formula(EnergyKind::Killer); }

void flatten(Formula f, Op op, std::vector<Formula>& out) {
  if (f->op == op) {
    flatten(f->a, op, out);
    flatten(f->b, op, out);
  } else {
    out.push_back(f);
  }
}

bool all_prims(const std::vector<Run>& ant, std::size_t from, std::size_t to) {
  for (std::size_t k = from; k < to; ++k)
    if (ant[k].count != 0 && !is_prim(ant[k].f)) return false;
  return true;
}

bool all_locked(const std::vector<Run>& ant, std::size_t from, std::size_t to) {
  for (std::size_t k = from; k < to; ++k)
    if (ant[k].count != 0 && !is_locked(ant[k].f)) return false;
  return true;
}

std::vector<Run> slice(const std::vector<Run>& ant, std::size_t from, std::size_t to) {
  return {ant.begin() + static_cast<long>(from), ant.begin() + static_cast<long>(to)};
}

// Removes the last formula of a run list, which must be p.
bool pop_back_if(std::vector<Run>& runs, Formula p) {
  while (!runs.empty() && runs.back().count == 0) runs.pop_back();
  if (runs.empty() || runs.back().f != p) return false;
  runs.back().count -= 1;
  if (runs.back().count == 0) runs.pop_back();
  return true;
}

std::vector<Run> concat(std::vector<Run> a, const std::vector<Run>& mid, const std::vector<Run>& b) {
  a.insert(a.end(), mid.begin(), mid.end());
  a.insert(a.end(), b.begin(), b.end());
  return normalize_runs(std::move(a));
}

Nat total_length(const std::vector<Run>& ant) {
  Nat n = 0;
  for (const Run& r : ant) n += r.count;
  return n;
}

}  // namespace

bool is_locked(Formula f) {
  auto prim_under = [](Formula g) { return g->op == Op::Under && is_prim(g->a); };
  if (prim_under(f)) return true;
  return f->op == Op::Meet && prim_under(f->a) && prim_under(f->b);
}

bool is_locked(const std::vector<Formula>& fs) {
  return std::all_of(fs.begin(), fs.end(), [](Formula f) { return is_locked(f); });
}

Formula goal() { return prod(atoms().a_L, atoms().okay); }

RunSequent StructuredSequent::runs() const { return {ant, goal()}; }

Sequent StructuredSequent::sequent(const Nat& cap) const { return expand(runs(), cap); }

std::vector<Run> normalize_runs(std::vector<Run> ant) {
  std::vector<Run> out;
  for (Run& r : ant) {
    if (r.count == 0) continue;
    if (!out.empty() && out.back().f == r.f)
      out.back().count += r.count;
    else
      out.push_back(std::move(r));
  }
  return out;
}

std::vector<Run> to_runs(const std::vector<Formula>& ant) {
  std::vector<Run> out;
  for (Formula f : ant) out.push_back({f, 1});
  return normalize_runs(std::move(out));
}

std::optional<StructuredSequent> refocus(const std::vector<Run>& ant) {
  std::vector<Run> runs = normalize_runs(ant);
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (is_prim(runs[k].f)) continue;
    if (runs[k].count > 1) {
      Run rest{runs[k].f, runs[k].count - 1};
      runs[k].count = 1;
      runs.insert(runs.begin() + static_cast<long>(k) + 1, rest);
    }
    return StructuredSequent{runs, k};
  }
  return std::nullopt;
}

StructuredSequent focused(const std::vector<Formula>& ant, std::size_t focus) {
  if (focus >= ant.size()) throw BtaError("focus index out of range");
  StructuredSequent s;
  for (std::size_t k = 0; k < ant.size(); ++k) s.ant.push_back({ant[k], 1});
  s.focus = focus;
  return s;
}

bool in_form_one(const StructuredSequent& s) {
  return all_prims(s.ant, 0, s.focus) && all_locked(s.ant, s.focus + 1, s.ant.size());
}

bool in_form_two(const StructuredSequent& s, bool* side_condition_ok) {
  std::vector<Run> theta;
  for (std::size_t k = 0; k < s.ant.size(); ++k)
    if (k != s.focus && s.ant[k].count != 0) theta.push_back(s.ant[k]);
  std::size_t g = 0;
  while (g < theta.size() && is_prim(theta[g].f)) ++g;
  if (g == theta.size() || !all_locked(theta, g, theta.size())) return false;
  Formula first = theta[g].f;
  if (first->op != Op::Under || !is_prim(first->a)) return false;
  if (side_condition_ok) {
    *side_condition_ok = true;
    for (std::size_t k = 0; k < g; ++k)
      if (theta[k].f == first->a) *side_condition_ok = false;
  }
  return true;
}

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Deterministic: return "Deterministic";
    case StepKind::Exists: return "Exists";
    case StepKind::Forall: return "Forall";
    case StepKind::Fail: return "Fail";
  }
  return "?";
}

StepResult bta_step(const StructuredSequent& s, std::size_t n_max, std::size_t max_placements) {
  if (s.focus >= s.ant.size()) throw BtaError("focus missing");
  if (s.ant[s.focus].count != 1) throw BtaError("focus run must have count 1");
  const Formula a = s.focus_formula();
  const std::vector<Run> left = slice(s.ant, 0, s.focus);
  const std::vector<Run> right = slice(s.ant, s.focus + 1, s.ant.size());
  const bool one = in_form_one(s);
  bool side = true;
  const bool two = in_form_two(s, &side);
  auto need_one = [&](const char* item) {
    if (!one) throw BtaError(std::string("item ") + item + " needs primitive formulas before the focus and locked ones after it");
  };
  auto need_two = [&](const char* item) {
    if (!two) throw BtaError(std::string("item ") + item + " needs the context Gamma, b\\E, Psi");
    if (!side) throw BtaError(std::string("item ") + item + ": the trigger atom of the first locked formula occurs in Gamma");
  };

  StepResult r;
  switch (a->op) {
    case Op::Under: {
      if (!is_prim(a->a)) throw BtaError("no item applies to B\\C with composite B");
      if (one) {
        r.item = "1a";
        std::vector<Run> l = left;
        if (!pop_back_if(l, a->a)) {
          r.kind = StepKind::Fail;
          r.note = "the formula left of the focus is not " + print(a->a);
          return r;
        }
        r.kind = StepKind::Deterministic;
        r.branches.push_back(concat(l, {{a->b, 1}}, right));
        return r;
      }
      need_two("2b");
      r.item = "2b";
      std::vector<Run> l = left;
      Formula body = a;
      while (body->op == Op::Under && is_prim(body->a)) {
        if (!pop_back_if(l, body->a)) {
          r.kind = StepKind::Fail;
          r.note = "Theta_1 does not end with the peeled atoms";
          return r;
        }
        body = body->b;
      }
      r.kind = StepKind::Deterministic;
      r.branches.push_back(concat(l, {{body, 1}}, right));
      return r;
    }
    case Op::Prod: {
      need_one("1b");
      r.item = "1b";
      std::vector<Formula> parts;
      flatten(a, Op::Prod, parts);
      r.kind = StepKind::Deterministic;
      r.branches.push_back(concat(left, to_runs(parts), right));
      return r;
    }
    case Op::Meet: {
      need_one("1c");
      r.item = "1c";
      r.kind = StepKind::Exists;
      std::vector<Formula> parts;
      flatten(a, Op::Meet, parts);
      for (std::size_t k = 0; k < parts.size(); ++k) {
        r.branches.push_back(concat(left, {{parts[k], 1}}, right));
        r.branch_labels.push_back("i=" + std::to_string(k + 1));
      }
      return r;
    }
    case Op::Bang:
    case Op::Star: {
      const bool bang_case = a->op == Op::Bang;
      need_one(bang_case ? "1d" : "1e");
      r.item = bang_case ? "1d" : "1e";
      r.kind = bang_case ? StepKind::Exists : StepKind::Forall;
      r.truncated = true;
      for (std::size_t n = 0; n <= n_max; ++n) {
        r.branches.push_back(concat(left, {{a->a, n}}, right));
        r.branch_labels.push_back("n=" + std::to_string(n));
      }
      return r;
    }
    case Op::Nabla: {
      need_two("2a");
      r.item = "2a";
      r.kind = StepKind::Exists;
      std::vector<Run> theta = concat(left, {}, right);
      if (total_length(theta) + 1 > max_placements) throw BtaError("too many placements for item 2a");
      for (std::size_t k = 0; k <= theta.size(); ++k) {
        const Nat limit = k < theta.size() ? theta[k].count : Nat(1);
        for (Nat off = 0; off < limit; ++off) {
          std::vector<Run> pre = slice(theta, 0, k), post = slice(theta, k, theta.size());
          if (off > 0) {
            pre.push_back({theta[k].f, off});
            post.front().count -= off;
          }
          r.branches.push_back(concat(pre, {{a->a, 1}}, post));
          r.branch_labels.push_back("pos=" + to_string(total_length(pre)));
        }
      }
      return r;
    }
    default: break;
  }
  throw BtaError("no bottom-top item applies to " + print(a));
}

Verdict combine(const StepResult& r, const std::vector<Verdict>& v) {
  const bool all_listed = v.size() == r.branches.size() && !r.truncated;
  auto any = [&](Verdict x) { return std::find(v.begin(), v.end(), x) != v.end(); };
  auto every = [&](Verdict x) { return std::all_of(v.begin(), v.end(), [&](Verdict y) { return y == x; }); };
  switch (r.kind) {
    case StepKind::Fail: return Verdict::Underivable;
    case StepKind::Deterministic: return v.empty() ? Verdict::Unknown : v[0];
    case StepKind::Exists:
      if (any(Verdict::Derivable)) return Verdict::Derivable;
      return all_listed && every(Verdict::Underivable) ? Verdict::Underivable : Verdict::Unknown;
    case StepKind::Forall:
      if (any(Verdict::Underivable)) return Verdict::Underivable;
      return all_listed && every(Verdict::Derivable) ? Verdict::Derivable : Verdict::Unknown;
  }
  return Verdict::Unknown;
}

// ---- helper lemmas -----------------------------------------------------------

bool lemma10_applies(const std::vector<Run>& ant_in) {
  std::vector<Run> ant = normalize_runs(ant_in);
  const Atoms& A = atoms();
  if (ant.size() < 2 || ant[0].f != A.a_L || ant[0].count != 1 || ant[1].f != A.okay || ant[1].count != 1)
    return false;
  for (std::size_t k = 2; k < ant.size(); ++k) {
    Formula f = ant[k].f;
    if (f->op != Op::Meet || f->a != okay_formula() || f->b->op != Op::Under || !is_prim(f->b->a)) return false;
  }
  return true;
}

std::optional<std::vector<Run>> lemma11(const std::vector<Run>& ant_in) {
  std::vector<Run> ant = normalize_runs(ant_in);
  std::size_t g = 0;
  while (g < ant.size() && is_prim(ant[g].f)) ++g;
  if (g == 0 || ant[g - 1].f != atoms().go) return std::nullopt;
  Nat c = 0;
  Formula p = nullptr;
  std::size_t rest = g;
  if (g < ant.size()) {
    Formula f = ant[g].f;
    // [go]->p = go\(p.go)
    if (f->op == Op::Under && f->a == atoms().go && f->b->op == Op::Prod && is_prim(f->b->a) &&
        f->b->b == atoms().go) {
      p = f->b->a;
      c = ant[g].count;
      rest = g + 1;
    }
  }
  if (!all_locked(ant, rest, ant.size())) return std::nullopt;
  std::vector<Run> out = slice(ant, 0, g);
  pop_back_if(out, atoms().go);
  if (p) out.push_back({p, c});
  out.push_back({atoms().go, 1});
  return concat(out, {}, slice(ant, rest, ant.size()));
}

std::optional<TechnicalParts> match_technical(Formula f) {
  const Atoms& A = atoms();
  if (f->op != Op::Under || f->a != A.go) return std::nullopt;
  Formula x = f->b;
  if (x->op != Op::Prod || x->a != A.a_R) return std::nullopt;
  x = x->b;
  if (x->op != Op::Prod || x->a != A.go) return std::nullopt;
  x = x->b;
  if (x->op != Op::Prod || x->a->op != Op::Bang) return std::nullopt;
  Formula rule = x->a->a;
  x = x->b;
  if (x->op != Op::Under || x->a != A.go) return std::nullopt;
  x = x->b;
  if (x->op != Op::Under || x->a != A.fin) return std::nullopt;
  x = x->b;
  if (x->op != Op::Meet || x->a->op != Op::Under || x->b->op != Op::Under || x->a->a != A.a_1 || x->b->a != A.a_2)
    return std::nullopt;
  return TechnicalParts{rule, {x->a->b, x->b->b}};
}

namespace {

struct SrShape {
  std::vector<Run> u;  // before go, starting with a_L
  TechnicalParts tech;
  std::vector<Run> psi;
};

SrShape sr_shape(const StructuredSequent& s) {
  auto tech = match_technical(s.focus_formula());
  if (!tech) throw BtaError("focus is not a Technical formula");
  std::vector<Run> u = slice(s.ant, 0, s.focus);
  if (!pop_back_if(u, atoms().go)) throw BtaError("Technical formula must follow go");
  if (!all_prims(u, 0, u.size())) throw BtaError("the context before go must be primitive");
  u = normalize_runs(u);
  if (u.empty() || u.front().f != atoms().a_L) throw BtaError("the context before go must start with a_L");
  std::vector<Run> psi = slice(s.ant, s.focus + 1, s.ant.size());
  if (!all_locked(psi, 0, psi.size())) throw BtaError("the formulas after the Technical formula must be locked");
  return {u, *tech, psi};
}

std::optional<SrContinuation> continuation(RunWord v, const FMap& f, const std::vector<Run>& psi) {
  RunWord w;
  for (auto& [sym, n] : v)
    if (n != 0) w.push_back({sym, n});
  if (w.empty()) return std::nullopt;
  Symbol last = w.back().first;
  if (last != "a_1" && last != "a_2") return std::nullopt;
  if (--w.back().second == 0) w.pop_back();
  SrContinuation c;
  c.last = last;
  c.w = RunWord{{"a_L", 1}};
  c.w.insert(c.w.end(), w.begin(), w.end());
  for (const auto& [sym, n] : c.w) c.ant.push_back({symbol_atom(sym), n});
  c.ant.push_back({last == "a_1" ? f.on_a1 : f.on_a2, 1});
  c.ant = concat(c.ant, {}, psi);
  return c;
}

}  // namespace

std::optional<SrContinuation> sr_segment(const StructuredSequent& s, const HostFunction& fn) {
  SrShape sh = sr_shape(s);
  RunWord u;
  for (std::size_t k = 1; k < sh.u.size(); ++k) u.push_back({sh.u[k].f->name, sh.u[k].count});
  if (sh.u.front().count > 1) u.insert(u.begin(), {"a_L", sh.u.front().count - 1});
  auto v = fn(u);
  if (!v) return std::nullopt;
  return continuation(*v, sh.tech.f, sh.psi);
}

SrLiteralResult sr_segment_literal(const StructuredSequent& s, const SRS& sr, std::size_t max_words) {
  SrShape sh = sr_shape(s);
  auto to_symbol = [&](const std::string& name) -> Symbol {
    const std::string suffix = "_prime";
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      Symbol p = primed(name.substr(0, name.size() - suffix.size()));
      if (sr.alphabet.count(p)) return p;
    }
    return name;
  };
  Word start;
  for (const Run& r : sh.u) {
    if (r.count > 100000) throw BtaError("word too long for the literal rewriting path");
    for (Nat k = 0; k < r.count; ++k) start.push_back(to_symbol(r.f->name));
  }
  start.push_back("a_R");
  Closure cl = closure(sr, start, max_words);
  SrLiteralResult out;
  out.complete = cl.complete;
  for (const Word& w : cl.words) {
    if (w.size() < 2 || w.back() != "fin") continue;
    const Symbol& a = w[w.size() - 2];
    if (a != "a_1" && a != "a_2") continue;
    if (w.front() != "a_L") continue;
    RunWord v;
    for (std::size_t k = 1; k + 1 < w.size(); ++k) {
      if (!v.empty() && v.back().first == w[k])
        v.back().second += 1;
      else
        v.push_back({w[k], 1});
    }
    if (auto c = continuation(v, sh.tech.f, sh.psi)) out.continuations.push_back(*c);
  }
  return out;
}

Verdict close_primitive(const std::vector<Run>& ant_in, std::string* why) {
  std::vector<Run> ant = normalize_runs(ant_in);
  std::size_t g = 0;
  while (g < ant.size() && is_prim(ant[g].f)) ++g;
  std::vector<Run> gamma = slice(ant, 0, g);
  auto say = [&](std::string s) {
    if (why) *why = std::move(s);
  };
  if (!all_locked(ant, g, ant.size())) {
    say("the formulas after the primitive prefix are not locked");
    return Verdict::Unknown;
  }
  Formula t = gamma.empty() ? nullptr : gamma.back().f;
  for (std::size_t k = g; k < ant.size(); ++k) {
    std::vector<Formula> parts;
    flatten(ant[k].f, Op::Meet, parts);
    bool pass = false;
    for (Formula c : parts) {
      if (c->op != Op::Under || !is_prim(c->a)) {
        say("conjunct " + print(c) + " is not locked");
        return Verdict::Unknown;
      }
      if (c->a != t) continue;
      if (c->b != t) {
        say("conjunct " + print(c) + " fits the context");
        return Verdict::Unknown;
      }
      pass = true;
    }
    if (!pass) {
      say(print_abbrev(ant[k].f, trace_abbrev) + " is locked on an atom other than " + (t ? print(t) : "nothing"));
      return Verdict::Underivable;
    }
  }
  Sequent base{{}, goal()};
  for (const Run& r : gamma) {
    if (r.count > 2) {
      say("the primitive context is not a_L, okay");
      return Verdict::Underivable;
    }
    for (Nat n = 0; n < r.count; ++n) base.ant.push_back(r.f);
  }
  if (base.ant == std::vector<Formula>{atoms().a_L, atoms().okay}) {
    say("reduces to a_L, okay |- a_L.okay");
    return Verdict::Derivable;
  }
  say("the primitive context is not a_L, okay");
  return Verdict::Underivable;
}

// ---- traces --------------------------------------------------------------------

std::string format_trace(const BTATrace& t) {
  std::string out;
  for (const TraceLine& l : t) {
    out += std::string(2 * l.depth, ' ') + l.text;
    if (!l.label.empty()) out += "    " + l.label;
    out += '\n';
  }
  return out;
}

std::optional<std::string> trace_abbrev(Formula f) {
  static const Formula t0 = technical_formula(rule_placeholder(0), f_zero());
  static const Formula t1s = technical_formula(rule_placeholder(1), f_sigma());
  static const Formula t1p = technical_formula(rule_placeholder(1), f_pi());
  if (f == t0) return "Technical(sr0,f0)";
  if (f == t1s) return "Technical(sr1,f_Sigma)";
  if (f == t1p) return "Technical(sr1,f_Pi)";
  return energy_abbrev(f);
}

std::string print_runs(const std::vector<Run>& ant) {
  std::string out;
  for (const Run& r : ant) {
    if (r.count == 0) continue;
    if (!out.empty()) out += ", ";
    out += print_abbrev(r.f, trace_abbrev);
    if (r.count != 1) out += "^{" + r.count.str() + "}";
  }
  return out + (out.empty() ? "|- " : " |- ") + print(goal());
}

std::string print_structured(const StructuredSequent& s) {
  std::string out;
  for (std::size_t k = 0; k < s.ant.size(); ++k) {
    const Run& r = s.ant[k];
    if (r.count == 0) continue;
    if (!out.empty()) out += ", ";
    if (k == s.focus) {
      out += "[" + print_abbrev(r.f, trace_abbrev, true) + "]";
      continue;
    }
    out += print_abbrev(r.f, trace_abbrev);
    if (r.count != 1) out += "^{" + r.count.str() + "}";
  }
  return out + " |- " + print(goal());
}

namespace {

std::vector<Run> encoded_prefix(const Nat& inp, Quant x) {
  const Atoms& A = atoms();
  return {{A.a_L, 1}, {A.a_1, inp}, {x == Quant::Sigma ? A.a_Sigma : A.a_Pi, 1}, {A.eps, 1}};
}

bool fails_at_once(const std::vector<Run>& branch) {
  auto s = refocus(branch);
  if (!s) return false;
  try {
    return bta_step(*s, 0).kind == StepKind::Fail;
  } catch (const BtaError&) {
    return false;
  }
}

// Applies deterministic steps, and existential ones whose other branches fail
// immediately, recording one trace line per step.
StructuredSequent step_chain(StructuredSequent s, std::size_t steps, BTATrace* trace, std::size_t depth) {
  for (std::size_t i = 0; i < steps; ++i) {
    StepResult r = bta_step(s, 0);
    std::vector<Run> next;
    if (r.kind == StepKind::Deterministic) {
      next = r.branches[0];
    } else if (r.kind == StepKind::Exists) {
      std::vector<std::size_t> alive;
      for (std::size_t k = 0; k < r.branches.size(); ++k)
        if (!fails_at_once(r.branches[k])) alive.push_back(k);
      if (alive.size() != 1) throw BtaError("the chain does not collapse at " + print_structured(s));
      next = r.branches[alive[0]];
    } else {
      throw BtaError("unexpected " + std::string(to_string(r.kind)) + " step at " + print_structured(s));
    }
    if (trace) trace->push_back({depth, print_structured(s), r.item});
    auto f = refocus(next);
    if (!f) throw BtaError("the chain ran out of composite formulas");
    s = *f;
  }
  return s;
}

}  // namespace

BTATrace example5_trace(const Nat& inp, Quant x, const std::vector<std::size_t>& tail) {
  std::vector<Run> ant = encoded_prefix(inp, x);
  ant.push_back({energy_level(0), 1});
  for (std::size_t h : tail) ant.push_back({energy_level(h), 1});
  BTATrace t;
  StructuredSequent s = step_chain(*refocus(ant), 4, &t, 0);
  t.push_back({0, print_runs(s.ant), ""});
  return t;
}

// ---- the decision procedure -----------------------------------------------------

namespace {

class Engine {
 public:
  Engine(Variant v, const DecideBudget& b, bool trace) : v_(v), b_(b), tracing_(trace) {}

  Verdict state(const Nat& inp, Quant x, std::vector<Run> psi, std::size_t depth) {
    psi = normalize_runs(std::move(psi));
    if (++nodes_ > b_.max_nodes) return unknown("node budget exhausted");
    std::string key = inp.str() + (x == Quant::Sigma ? "S" : "P");
    for (const Run& r : psi) key += "|" + std::to_string(r.f->id) + "^" + r.count.str();
    if (auto it = memo_.find(key); it != memo_.end()) {
      line(depth, print_runs(concat(encoded_prefix(inp, x), {}, psi)), std::string("seen: ") + to_string(it->second));
      return it->second;
    }
    Verdict v = dispatch(inp, x, psi, depth);
    memo_[key] = v;
    return v;
  }

  std::size_t nodes() const { return nodes_; }
  BTATrace trace_;
  std::string reason_;
  std::string unknown_reason_;

 private:
  Verdict dispatch(const Nat& inp, Quant x, const std::vector<Run>& psi, std::size_t depth) {
    std::vector<Run> ant = concat(encoded_prefix(inp, x), {}, psi);
    if (psi.empty()) {
      line(depth, print_runs(ant), "Underivable: no composite formula and the context is not a_L, okay");
      return definite(Verdict::Underivable, "no energy formula left");
    }
    Formula f = psi[0].f;
    if (f == killer()) {
      if (psi.size() != 1 || psi[0].count != 1) throw BtaError("Killer must be the last formula");
      line(depth, print_runs(ant), "Derivable: Killer derivation");
      return definite(Verdict::Derivable, "closed by Killer");
    }
    auto k = level_of(f);
    if (!k) throw BtaError("unexpected formula " + print_abbrev(f, trace_abbrev) + " in the energy part");
    return *k > 0 ? case_limit(inp, x, psi, *k, depth) : case_base(inp, x, psi, depth);
  }

  std::optional<std::size_t> level_of(Formula f) {
    for (std::size_t k = 0; k < 16; ++k) {
      Formula e = v_ == Variant::Standard ? energy_level(k) : energy_hlevel(k);
      if (f == e) return k;
    }
    return std::nullopt;
  }

  Ordinal energy_of(const std::vector<Run>& runs) {
    Ordinal o;
    for (const Run& r : runs)
      if (auto k = level_of(r.f)) o = hessenberg_sum(o, Ordinal::omega_pow(*k, r.count));
    return o;
  }

  Verdict case_limit(const Nat& inp, Quant x, const std::vector<Run>& psi, std::size_t k, std::size_t depth) {
    StructuredSequent s = step_chain(*refocus(concat(encoded_prefix(inp, x), {}, psi)), 3, trace(), depth);
    Formula inner = s.focus_formula()->a;
    std::vector<Run> rest = psi;
    rest[0].count -= 1;
    rest = normalize_runs(rest);
    auto sub = [&](const Nat& l) {
      std::vector<Run> p{{inner, l}};
      return state(inp, x, concat(p, {}, rest), depth + 1);
    };
    if (v_ == Variant::Minus) {
      line(depth, print_structured(s), "1e  for each l");
      for (std::size_t l = 0; l <= b_.n_max; ++l) {
        line(depth, "l = " + std::to_string(l), "");
        if (sub(l) == Verdict::Underivable) return definite(Verdict::Underivable, "a branch of the universal step over l fails");
      }
      return unknown("universal step over l checked only for l <= n_max");
    }
    if (!f0_direct(inp)) {
      line(depth, print_structured(s), "1d  every branch reaches f0, which diverges");
      return definite(Verdict::Underivable, "f0 diverges on a_1^{inp}");
    }
    Ordinal alpha = *pi_decode(decode_input(inp)->idx.p);
    Ordinal rest_energy = energy_of(rest);
    Nat bound = alpha.coeff(k - 1) + 1;
    std::optional<Nat> lmin;
    if (hessenberg_sum(rest_energy, Ordinal::omega_pow(k - 1, bound)) > alpha) {
      Nat lo = 0, hi = bound;
      while (lo < hi) {
        Nat mid = (lo + hi) / 2;
        if (hessenberg_sum(rest_energy, Ordinal::omega_pow(k - 1, mid)) > alpha)
          hi = mid;
        else
          lo = mid + 1;
      }
      lmin = lo;
    }
    if (lmin) {
      line(depth, print_structured(s), "1d  l = " + lmin->str() + ", the least l with energy above alpha");
      return sub(*lmin);
    }
    line(depth, print_structured(s), "1d  energy does not exceed alpha, trying l <= n_max");
    for (std::size_t l = 0; l <= b_.n_max; ++l)
      if (sub(l) == Verdict::Derivable) return definite(Verdict::Derivable, "a branch of the existential step over l");
    return unknown("energy does not exceed alpha and no l <= n_max succeeded");
  }

  Verdict close(const std::vector<Run>& ant, std::size_t depth) {
    if (lemma10_applies(ant)) {
      line(depth, print_runs(ant), "Derivable by lemma10");
      return definite(Verdict::Derivable, "closed by lemma10");
    }
    std::string why;
    Verdict v = close_primitive(ant, &why);
    line(depth, print_runs(ant), std::string(to_string(v)) + ": " + why);
    return v == Verdict::Unknown ? unknown(why) : definite(v, why);
  }

  Verdict case_base(const Nat& inp, Quant x, const std::vector<Run>& psi, std::size_t depth) {
    StructuredSequent s = step_chain(*refocus(concat(encoded_prefix(inp, x), {}, psi)), 5, trace(), depth);
    line(depth, print_structured(s), "lemma9  f0");
    auto cont = sr_segment(s, [](const RunWord& u) -> std::optional<RunWord> {
      Nat n = 0;
      for (const auto& [sym, c] : u) {
        if (sym != "a_1") return std::nullopt;
        n += c;
      }
      return f0_direct(n);
    });
    if (!cont) {
      line(depth, "f0 diverges on a_1^{" + inp.str() + "}", "Underivable");
      return definite(Verdict::Underivable, "f0 diverges on a_1^{inp}");
    }
    if (cont->last == "a_1") return close(cont->ant, depth);
    auto in = decode_input(inp);
    Ordinal alpha = *pi_decode(in->idx.p);
    auto next = *refocus(cont->ant);
    return x == Quant::Sigma ? sigma(next, *in, alpha, depth) : pi(next, *in, alpha, depth);
  }

  // Calls fn(c) for every c = <c', y, w> whose f1 image is a new input, in
  // increasing order of c' and w; y is the least halting bound. Returns false
  // when fn asked to stop.
  bool choices(const SatInput& in, const Ordinal& alpha, bool& exhaustive,
               const std::function<bool(const Nat&, const std::string&)>& fn) {
    exhaustive = we_complete(in.idx.e, b_.halt_bound);
    std::size_t tuples = 0;
    for (const Nat& cp : enumerate_we(in.idx.e, b_.halt_bound, b_.witness_bound)) {
      auto tr = decode_triple(cp);
      if (!tr || !(tr->beta < alpha)) continue;
      if (tr->k > 0) exhaustive = false;
      Nat y = 1;
      while (y <= b_.halt_bound && !halt(cp, in.idx.e, y)) ++y;
      std::vector<Nat> wit(tr->k, 0);
      while (true) {
        if (++tuples > b_.max_witness_tuples) {
          exhaustive = false;
          return true;
        }
        std::string label = "c' = " + cp.str() + ", y = " + y.str() + ", witnesses (";
        for (std::size_t j = 0; j < wit.size(); ++j) label += (j ? "," : "") + wit[j].str();
        label += ")";
        if (!fn(encode_choice(cp, y, wit), label)) return false;
        std::size_t j = wit.size();
        while (j > 0 && wit[j - 1] == b_.witness_bound) wit[--j] = 0;
        if (j == 0) break;
        wit[j - 1] += 1;
      }
    }
    return true;
  }

  // a_L, a_1^inp, a_2^c, go, OKAY & Technical(sr1, f), Psi
  Verdict after_choice(const SatInput& in, const std::vector<Run>& gamma_go_b2_psi, std::size_t depth) {
    StructuredSequent s = step_chain(*refocus(gamma_go_b2_psi), 1, trace(), depth);
    line(depth, print_structured(s), "lemma9  f1");
    bool hit = false;
    auto cont = sr_segment(s, [&](const RunWord& w) -> std::optional<RunWord> {
      F1Result r = f1_direct(w, b_.halt_bound);
      hit = r.budget_hit;
      return r.out;
    });
    if (hit) return unknown("halting bound exceeded inside f1");
    if (!cont) throw BtaError("f1 output does not end in a_1 or a_2");
    if (cont->last == "a_1") return close(cont->ant, depth);
    auto next = step_chain(*refocus(cont->ant), 1, trace(), depth);
    (void)next;
    Nat inp2 = cont->w[1].second;
    std::vector<Run> psi = slice(cont->ant, 3, cont->ant.size());
    return state(inp2, dual(in.idx.x), psi, depth + 1);
  }

  Verdict sigma(StructuredSequent s, const SatInput& in, const Ordinal& alpha, std::size_t depth) {
    s = step_chain(s, 3, trace(), depth);
    line(depth, print_structured(s), "1d  for some c");
    Formula arrow_f = s.focus_formula()->a;
    std::vector<Run> gamma = slice(s.ant, 0, s.focus);
    std::vector<Run> tail = slice(s.ant, s.focus + 1, s.ant.size());
    bool exhaustive = true, unknown_seen = false, found = false;
    choices(in, alpha, exhaustive, [&](const Nat& c, const std::string& label) {
      line(depth + 1, label, "");
      std::vector<Run> ant = concat(gamma, {{arrow_f, c}}, tail);
      auto after = lemma11(ant);
      line(depth + 1, print_runs(ant), "lemma11");
      Verdict v = after_choice(in, *after, depth + 1);
      if (v == Verdict::Derivable) found = true;
      if (v == Verdict::Unknown) unknown_seen = true;
      return !found;
    });
    if (found) return definite(Verdict::Derivable, "a choice of c succeeds");
    if (exhaustive && !unknown_seen) return definite(Verdict::Underivable, "every choice of c fails");
    return unknown("the existential step over c is not exhaustive within the bounds");
  }

  Verdict pi(StructuredSequent s, const SatInput& in, const Ordinal& alpha, std::size_t depth) {
    s = step_chain(s, 3, trace(), depth);
    line(depth, print_structured(s), "1e  for each c");
    std::vector<Run> gamma = slice(s.ant, 0, s.focus);
    std::vector<Run> tail = slice(s.ant, s.focus + 1, s.ant.size());
    Formula a2 = s.focus_formula()->a;
    auto sub = [&](const Nat& c) { return after_choice(in, concat(gamma, {{a2, c}}, tail), depth + 1); };
    line(depth + 1, "c = 0, standing for every c that f1 rejects", "");
    Verdict v0 = sub(0);
    if (v0 == Verdict::Underivable) return definite(Verdict::Underivable, "a rejected c leads to an underivable sequent");
    bool exhaustive = true, unknown_seen = v0 == Verdict::Unknown, failed = false;
    choices(in, alpha, exhaustive, [&](const Nat& c, const std::string& label) {
      line(depth + 1, label, "");
      Verdict v = sub(c);
      if (v == Verdict::Underivable) failed = true;
      if (v == Verdict::Unknown) unknown_seen = true;
      return !failed;
    });
    if (failed) return definite(Verdict::Underivable, "some c leads to an underivable sequent");
    if (exhaustive && !unknown_seen) return definite(Verdict::Derivable, "every c leads to a derivable sequent");
    return unknown("the universal step over c is not exhaustive within the bounds");
  }

  BTATrace* trace() { return tracing_ && trace_.size() < b_.max_trace ? &trace_ : nullptr; }

  void line(std::size_t depth, std::string text, std::string label) {
    if (!tracing_) return;
    if (trace_.size() < b_.max_trace)
      trace_.push_back({depth, std::move(text), std::move(label)});
    else if (trace_.size() == b_.max_trace)
      trace_.push_back({0, "... trace truncated", ""});
  }

  Verdict definite(Verdict v, std::string why) {
    reason_ = std::move(why);
    return v;
  }
  Verdict unknown(std::string why) {
    unknown_reason_ = std::move(why);
    return Verdict::Unknown;
  }

  Variant v_;
  DecideBudget b_;
  bool tracing_;
  std::size_t nodes_ = 0;
  std::map<std::string, Verdict> memo_;
};

}  // namespace

Decision decide_state(const Nat& inp, Quant x, const std::vector<Run>& psi, Variant v, const DecideBudget& b,
                      bool trace) {
  Engine e(v, b, trace);
  Decision d;
  d.verdict = e.state(inp, x, psi, 0);
  d.reason = d.verdict == Verdict::Unknown ? e.unknown_reason_ : e.reason_;
  d.trace = std::move(e.trace_);
  d.nodes = e.nodes();
  return d;
}

Decision decide_encoded(const Nat& inp, Variant v, const DecideBudget& b, bool trace) {
  RunSequent s = seq_encode(inp, v);
  Quant x = s.ant[2].f == atoms().a_Pi ? Quant::Pi : Quant::Sigma;
  std::vector<Run> psi(s.ant.begin() + 4, s.ant.end());
  return decide_state(inp, x, psi, v, b, trace);
}

Decision decide_sequent(const RunSequent& s, const DecideBudget& b, bool trace) {
  const Atoms& A = atoms();
  if (s.suc != goal()) throw BtaError("the succedent must be a_L.okay");
  std::vector<Run> ant = normalize_runs(s.ant);
  std::size_t k = 0;
  if (k >= ant.size() || ant[k].f != A.a_L || ant[k].count != 1) throw BtaError("the antecedent must start with a_L");
  ++k;
  Nat inp = 0;
  if (k < ant.size() && ant[k].f == A.a_1) inp = ant[k++].count;
  if (k >= ant.size() || (ant[k].f != A.a_Sigma && ant[k].f != A.a_Pi) || ant[k].count != 1)
    throw BtaError("expected a_Sigma or a_Pi after the a_1 run");
  Quant x = ant[k++].f == A.a_Sigma ? Quant::Sigma : Quant::Pi;
  if (k >= ant.size() || ant[k].f != A.eps || ant[k].count != 1) throw BtaError("expected eps after a_X");
  ++k;
  std::vector<Run> psi(ant.begin() + static_cast<long>(k), ant.end());
  Variant v = Variant::Standard;
  for (const Run& r : psi) {
    if (r.f == killer()) v = Variant::Minus;
    for (std::size_t h = 1; h < 16; ++h)
      if (r.f == energy_hlevel(h)) v = Variant::Minus;
  }
  return decide_state(inp, x, psi, v, b, trace);
}

}  // namespace actmux
