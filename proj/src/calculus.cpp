#include "actmux/calculus.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace actmux {

namespace mp = boost::multiprecision;

// ---- descriptor codes ------------------------------------------------------

namespace {

unsigned exp_of(const Nat& v) {
  if (v > 100000) throw std::length_error("descriptor parameter too large to encode");
  return static_cast<unsigned>(v);
}

Nat strip(Nat& t, unsigned p) {
  Nat e = 0;
  while (t % p == 0) {
    t /= p;
    ++e;
  }
  return e;
}

}  // namespace

Nat base_code(const RuleDescriptor& t) {
  return mp::pow(Nat(2), exp_of(Nat(t.m))) * mp::pow(Nat(3), exp_of(t.l));
}

Nat descriptor_code(const RuleDescriptor& t) {
  Nat c = base_code(t);
  if (t.perm) {
    c *= mp::pow(Nat(5), exp_of(Nat(t.perm->pos)));
    c *= mp::pow(Nat(7), exp_of(Nat(2 * t.perm->dist + (t.perm->right ? 1 : 0))));
  }
  return c;
}

std::optional<RuleDescriptor> descriptor_decode(const Nat& code) {
  if (code <= 0) return std::nullopt;
  Nat t = code;
  Nat m = strip(t, 2), l = strip(t, 3), a = strip(t, 5), b = strip(t, 7);
  if (t != 1 || m > 1'000'000) return std::nullopt;
  RuleDescriptor d{static_cast<std::size_t>(m), l, std::nullopt};
  if (a == 0 && b == 0) return d;
  if (a == 0 || b < 2 || a > 1'000'000 || b > 2'000'001) return std::nullopt;
  std::size_t bb = static_cast<std::size_t>(b);
  d.perm = Perm{static_cast<std::size_t>(a), (bb & 1) != 0, bb / 2};
  return d;
}

Nat star_pieces_encode(const std::vector<std::size_t>& lens) {
  Nat l = 1;
  for (std::size_t len : lens) {
    for (std::size_t k = 0; k < len; ++k) l = (l << 1) | 1;
    l <<= 1;
  }
  return l;
}

std::optional<std::vector<std::size_t>> star_pieces_decode(const Nat& l) {
  if (l <= 0) return std::nullopt;
  std::vector<std::size_t> out;
  std::size_t run = 0;
  for (long long k = static_cast<long long>(mp::msb(l)) - 1; k >= 0; --k) {
    if (mp::bit_test(l, static_cast<unsigned>(k))) {
      ++run;
    } else {
      out.push_back(run);
      run = 0;
    }
  }
  if (run != 0) return std::nullopt;
  return out;
}

// ---- rule application ------------------------------------------------------

namespace {

using Tagged = std::vector<std::pair<Formula, long>>;

Tagged tag(const std::vector<Formula>& ant) {
  Tagged t;
  for (std::size_t k = 0; k < ant.size(); ++k) t.push_back({ant[k], static_cast<long>(k)});
  return t;
}

Tagged slice(const Tagged& t, std::size_t from, std::size_t to) {
  return Tagged(t.begin() + static_cast<long>(from), t.begin() + static_cast<long>(to));
}

Tagged cat(std::initializer_list<Tagged> parts) {
  Tagged out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Tagged fresh(std::initializer_list<Formula> fs) {
  Tagged out;
  for (Formula f : fs) out.push_back({f, -1});
  return out;
}

void add(RuleApp& app, const Tagged& ant, Formula suc) {
  Sequent s;
  std::vector<long> o;
  for (const auto& [f, k] : ant) {
    s.ant.push_back(f);
    o.push_back(k);
  }
  s.suc = suc;
  app.premises.push_back(std::move(s));
  app.origin.push_back(std::move(o));
}

std::optional<std::size_t> small(const Nat& l, std::size_t bound) {
  if (l > Nat(bound)) return std::nullopt;
  return static_cast<std::size_t>(l);
}

std::optional<RuleApp> apply_base(const Sequent& s, std::size_t m, const Nat& l) {
  const std::size_t n = s.ant.size();
  Tagged all = tag(s.ant);
  RuleApp app;
  if (m == 0) {
    Formula c = s.suc;
    switch (c->op) {
      case Op::Under:
        if (l != 0) return std::nullopt;
        app.name = "\\R";
        add(app, cat({fresh({c->a}), all}), c->b);
        return app;
      case Op::Over:
        if (l != 0) return std::nullopt;
        app.name = "/R";
        add(app, cat({all, fresh({c->b})}), c->a);
        return app;
      case Op::Prod: {
        auto g = small(l, n);
        if (!g) return std::nullopt;
        app.name = ".R";
        add(app, slice(all, 0, *g), c->a);
        add(app, slice(all, *g, n), c->b);
        return app;
      }
      case Op::Meet:
        if (l != 0) return std::nullopt;
        app.name = "&R";
        add(app, all, c->a);
        add(app, all, c->b);
        return app;
      case Op::Join: {
        if (l > 1) return std::nullopt;
        app.name = l == 0 ? "|R1" : "|R2";
        add(app, all, l == 0 ? c->a : c->b);
        return app;
      }
      case Op::Bang:
      case Op::Nabla: {
        if (l != 0 || n != 1 || s.ant[0]->op != c->op) return std::nullopt;
        app.name = c->op == Op::Bang ? "!R" : "@R";
        add(app, fresh({s.ant[0]->a}), c->a);
        return app;
      }
      case Op::Star: {
        auto lens = star_pieces_decode(l);
        if (!lens || lens->empty()) return std::nullopt;
        std::size_t total = 0;
        for (std::size_t x : *lens) total += x;
        if (total != n) return std::nullopt;
        app.name = "*R_" + std::to_string(lens->size());
        std::size_t at = 0;
        for (std::size_t x : *lens) {
          add(app, slice(all, at, at + x), c->a);
          at += x;
        }
        return app;
      }
      default:
        return std::nullopt;
    }
  }
  if (m > n) return std::nullopt;
  const std::size_t i = m - 1;
  Formula f = s.ant[i];
  app.principal = static_cast<long>(i);
  Tagged left = slice(all, 0, i), right = slice(all, m, n);
  switch (f->op) {
    case Op::Under: {
      auto pi = small(l, i);
      if (!pi) return std::nullopt;
      app.name = "\\L";
      add(app, cat({slice(all, 0, i - *pi), fresh({f->b}), right}), s.suc);
      add(app, slice(all, i - *pi, i), f->a);
      return app;
    }
    case Op::Over: {
      auto pi = small(l, n - m);
      if (!pi) return std::nullopt;
      app.name = "/L";
      add(app, cat({left, fresh({f->a}), slice(all, m + *pi, n)}), s.suc);
      add(app, slice(all, m, m + *pi), f->b);
      return app;
    }
    case Op::Prod:
      if (l != 0) return std::nullopt;
      app.name = ".L";
      add(app, cat({left, fresh({f->a, f->b}), right}), s.suc);
      return app;
    case Op::Meet:
      if (l > 1) return std::nullopt;
      app.name = l == 0 ? "&L1" : "&L2";
      add(app, cat({left, fresh({l == 0 ? f->a : f->b}), right}), s.suc);
      return app;
    case Op::Join:
      if (l != 0) return std::nullopt;
      app.name = "|L";
      add(app, cat({left, fresh({f->a}), right}), s.suc);
      add(app, cat({left, fresh({f->b}), right}), s.suc);
      return app;
    case Op::One:
      if (l != 0) return std::nullopt;
      app.name = "1L";
      add(app, cat({left, right}), s.suc);
      return app;
    case Op::Bang: {
      auto k = small(l, 1'000'000);
      if (!k) return std::nullopt;
      app.name = "!L_" + std::to_string(*k);
      Tagged copies(*k, {f->a, -1});
      add(app, cat({left, copies, right}), s.suc);
      return app;
    }
    case Op::Nabla: {
      if (l == 0) {
        app.name = "@L";
        add(app, cat({left, fresh({f->a}), right}), s.suc);
        return app;
      }
      auto code = small(l, 2 * n + 2);
      if (!code) return std::nullopt;
      bool right_move = (*code % 2) == 1;
      std::size_t d = (*code + 1) / 2;
      app.permutation = true;
      if (right_move) {
        if (i + d >= n) return std::nullopt;
        app.name = "@P1";
        Tagged t = cat({left, slice(all, m, m + d), slice(all, i, m), slice(all, m + d, n)});
        add(app, t, s.suc);
      } else {
        if (d > i) return std::nullopt;
        app.name = "@P2";
        Tagged t = cat({slice(all, 0, i - d), slice(all, i, m), slice(all, i - d, i), right});
        add(app, t, s.suc);
      }
      return app;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<RuleApp> apply_rule(const Sequent& s, const RuleDescriptor& t) {
  if (!t.perm) return apply_base(s, t.m, t.l);
  const Perm& p = *t.perm;
  const std::size_t n = s.ant.size();
  if (p.pos < 1 || p.pos > n || p.dist < 1 || s.ant[p.pos - 1]->op != Op::Nabla) return std::nullopt;
  std::size_t from = p.pos - 1;
  if (p.right ? from + p.dist >= n : p.dist > from) return std::nullopt;
  std::size_t to = p.right ? from + p.dist : from - p.dist;
  // moved[j] = conclusion index of the j-th formula of the permuted sequent
  std::vector<long> moved;
  for (std::size_t k = 0; k < n; ++k)
    if (k != from) moved.push_back(static_cast<long>(k));
  moved.insert(moved.begin() + static_cast<long>(to), static_cast<long>(from));
  Sequent sp;
  for (long k : moved) sp.ant.push_back(s.ant[static_cast<std::size_t>(k)]);
  sp.suc = s.suc;
  auto app = apply_base(sp, t.m, t.l);
  if (!app || app->permutation) return std::nullopt;
  for (auto& o : app->origin)
    for (long& k : o)
      if (k >= 0) k = moved[static_cast<std::size_t>(k)];
  if (app->principal >= 0) app->principal = moved[static_cast<std::size_t>(app->principal)];
  app->name += std::string("+@P") + (p.right ? "1" : "2");
  return app;
}

std::optional<std::vector<Sequent>> premises(const Sequent& s, const RuleDescriptor& t) {
  auto app = apply_rule(s, t);
  if (!app) return std::nullopt;
  return app->premises;
}

Nat premise_code(const Nat& c, const Nat& t, const Nat& k) {
  auto s = goedel_decode(c);
  if (!s) return 0;
  auto d = descriptor_decode(t);
  if (!d) return 0;
  auto prem = premises(*s, *d);
  if (!prem) return 0;
  if (k >= Nat(prem->size())) return goedel_encode(Sequent{{one()}, one()});
  return goedel_encode((*prem)[static_cast<std::size_t>(k)]);
}

std::string axiom_name(const Sequent& s) {
  if (s.ant.size() == 1 && s.ant[0] == s.suc) return "ax";
  if (s.ant.empty() && s.suc->op == Op::One) return "1R";
  if (s.ant.empty() && s.suc->op == Op::Star) return "*R_0";
  for (Formula f : s.ant)
    if (f->op == Op::Zero) return "0L";
  return "";
}

bool is_axiom(const Sequent& s) { return !axiom_name(s).empty(); }

bool rank_decreases(const Sequent& s, const RuleDescriptor& t) {
  auto prem = premises(s, t);
  if (!prem) return false;
  Ordinal r = rank(s);
  for (const Sequent& p : *prem)
    if (!(rank(p) < r)) return false;
  return true;
}

namespace {

void compositions(std::size_t n, std::size_t max_parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    if (!cur.empty()) out.push_back(cur);
    return;
  }
  if (cur.size() == max_parts) return;
  for (std::size_t x = 1; x <= n; ++x) {
    cur.push_back(x);
    compositions(n - x, max_parts, cur, out);
    cur.pop_back();
  }
}

void plain_descriptors(const Sequent& s, const EnumOptions& opt, std::vector<RuleDescriptor>& out) {
  const std::size_t n = s.ant.size();
  auto put = [&](std::size_t m, const Nat& l) { out.push_back({m, l, std::nullopt}); };
  switch (s.suc->op) {
    case Op::Under:
    case Op::Over:
    case Op::Meet:
      put(0, 0);
      break;
    case Op::Prod:
      for (std::size_t g = 0; g <= n; ++g) put(0, g);
      break;
    case Op::Join:
      put(0, 0);
      put(0, 1);
      break;
    case Op::Bang:
    case Op::Nabla:
      if (n == 1 && s.ant[0]->op == s.suc->op) put(0, 0);
      break;
    case Op::Star: {
      std::vector<std::vector<std::size_t>> comps;
      std::vector<std::size_t> cur;
      compositions(n, opt.n_max, cur, comps);
      for (auto& c : comps) put(0, star_pieces_encode(c));
      break;
    }
    default:
      break;
  }
  for (std::size_t m = 1; m <= n; ++m) {
    Formula f = s.ant[m - 1];
    switch (f->op) {
      case Op::Under:
        for (std::size_t l = 0; l < m; ++l) put(m, l);
        break;
      case Op::Over:
        for (std::size_t l = 0; l <= n - m; ++l) put(m, l);
        break;
      case Op::Prod:
      case Op::Join:
      case Op::One:
        put(m, 0);
        break;
      case Op::Meet:
        put(m, 0);
        put(m, 1);
        break;
      case Op::Bang:
        for (std::size_t k = 0; k <= opt.n_max; ++k) put(m, k);
        break;
      case Op::Nabla:
        put(m, 0);
        if (opt.bare_perms) {
          for (std::size_t d = 1; m - 1 + d < n; ++d) put(m, 2 * d - 1);
          for (std::size_t d = 1; d < m; ++d) put(m, 2 * d);
        }
        break;
      default:
        break;
    }
  }
}

}  // namespace

std::vector<RuleDescriptor> enumerate_descriptors(const Sequent& s, const EnumOptions& opt) {
  std::vector<RuleDescriptor> out;
  plain_descriptors(s, opt, out);
  if (!opt.generalized) return out;
  const std::size_t n = s.ant.size();
  EnumOptions inner = opt;
  inner.bare_perms = false;
  for (std::size_t from = 0; from < n; ++from) {
    if (s.ant[from]->op != Op::Nabla) continue;
    for (std::size_t to = 0; to < n; ++to) {
      if (to == from) continue;
      Perm p{from + 1, to > from, to > from ? to - from : from - to};
      auto moved = apply_rule(s, {from + 1, Nat(p.right ? 2 * p.dist - 1 : 2 * p.dist), std::nullopt});
      if (!moved) continue;
      std::vector<RuleDescriptor> base;
      plain_descriptors(moved->premises[0], inner, base);
      for (auto& b : base) {
        b.perm = p;
        out.push_back(b);
      }
    }
  }
  return out;
}

// ---- derivation trees ------------------------------------------------------

Proof make_axiom(const Sequent& s) {
  auto d = std::make_shared<Derivation>();
  d->seq = s;
  d->kind = NodeKind::Axiom;
  d->name = axiom_name(s);
  return d;
}

Proof make_hyp(const Sequent& s) {
  auto d = std::make_shared<Derivation>();
  d->seq = s;
  d->kind = NodeKind::Hyp;
  d->name = "hyp";
  return d;
}

Proof make_rule(const Sequent& s, const RuleDescriptor& t, std::vector<Proof> kids) {
  auto app = apply_rule(s, t);
  if (!app) throw std::invalid_argument("descriptor does not apply to " + print(s));
  auto d = std::make_shared<Derivation>();
  d->seq = s;
  d->kind = NodeKind::Rule;
  d->rule = t;
  d->name = app->name;
  d->kids = std::move(kids);
  return d;
}

namespace {

void check_rec(const Proof& d, bool allow_hyp, std::vector<std::size_t>& path, CheckResult& res) {
  if (!res.ok) return;
  auto fail = [&](std::string msg) {
    res.ok = false;
    res.path = path;
    res.message = std::move(msg) + ": " + print(d->seq);
  };
  switch (d->kind) {
    case NodeKind::Axiom:
      if (!is_axiom(d->seq)) fail("not an axiom");
      return;
    case NodeKind::Hyp:
      if (!allow_hyp) fail("hypothesis leaf");
      return;
    case NodeKind::Rule:
      break;
  }
  auto prem = premises(d->seq, d->rule);
  if (!prem) return fail("invalid rule descriptor");
  if (prem->size() != d->kids.size()) return fail("premise count mismatch");
  for (std::size_t k = 0; k < prem->size(); ++k) {
    if (!(d->kids[k]->seq == (*prem)[k])) {
      path.push_back(k);
      res.ok = false;
      res.path = path;
      res.message = "premise mismatch: expected " + print((*prem)[k]) + ", found " + print(d->kids[k]->seq);
      return;
    }
  }
  for (std::size_t k = 0; k < d->kids.size(); ++k) {
    path.push_back(k);
    check_rec(d->kids[k], allow_hyp, path, res);
    path.pop_back();
  }
}

}  // namespace

CheckResult check_derivation(const Proof& d, bool allow_hypotheses) {
  CheckResult res;
  std::vector<std::size_t> path;
  check_rec(d, allow_hypotheses, path, res);
  return res;
}

namespace {

bool is_identity(const Proof& d, Formula p) {
  return d->kind == NodeKind::Axiom && d->seq.ant.size() == 1 && d->seq.ant[0] == p && d->seq.suc == p;
}

void basic_rec(const Proof& d, std::vector<std::size_t>& path, BasicnessReport& rep) {
  if (d->kind != NodeKind::Rule) return;
  auto app = apply_rule(d->seq, d->rule);
  auto violate = [&](int c) {
    rep.ok = false;
    rep.violations.push_back({path, c});
  };
  // Positions refer to the permuted sequent for generalized nodes.
  Sequent base = d->seq;
  if (d->rule.perm) {
    auto mv = apply_rule(d->seq, {d->rule.perm->pos,
                                  Nat(d->rule.perm->right ? 2 * d->rule.perm->dist - 1 : 2 * d->rule.perm->dist),
                                  std::nullopt});
    if (mv) base = mv->premises[0];
  }
  const std::size_t m = d->rule.m;
  if (app && m >= 1 && m <= base.ant.size()) {
    Formula f = base.ant[m - 1];
    if (f->op == Op::Under && is_prim(f->a)) {
      bool ok = d->rule.l == 1 && base.ant[m - 2] == f->a && d->kids.size() == 2 && is_identity(d->kids[1], f->a);
      if (!ok) violate(1);
    }
    if (f->op == Op::Meet) {
      Formula sel = d->rule.l == 0 ? f->a : f->b;
      if (sel->op == Op::Under) {
        const Proof& k = d->kids[0];
        bool ok = k->kind == NodeKind::Rule && !k->rule.perm && k->rule.m == m && k->name == "\\L";
        if (!ok) violate(3);
      }
    }
  }
  if (app && m == 0 && d->seq.suc->op == Op::Prod && is_prim(d->seq.suc->a) && is_prim(d->seq.suc->b)) {
    Formula p = d->seq.suc->a, q = d->seq.suc->b;
    bool ok = base.ant.size() == 2 && base.ant[0] == p && base.ant[1] == q && d->kids.size() == 2 &&
              is_identity(d->kids[0], p) && is_identity(d->kids[1], q);
    if (!ok) violate(2);
  }
  for (std::size_t k = 0; k < d->kids.size(); ++k) {
    path.push_back(k);
    basic_rec(d->kids[k], path, rep);
    path.pop_back();
  }
}

void hyp_rec(const Proof& d, std::vector<Sequent>& out) {
  if (d->kind == NodeKind::Hyp) {
    if (std::find(out.begin(), out.end(), d->seq) == out.end()) out.push_back(d->seq);
    return;
  }
  for (const auto& k : d->kids) hyp_rec(k, out);
}

std::vector<Formula> concat(const std::vector<Formula>& a, const std::vector<Formula>& b,
                            const std::vector<Formula>& c) {
  std::vector<Formula> out = a;
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

Proof node(const Sequent& s, const RuleDescriptor& t, std::vector<Proof> kids, std::string name) {
  auto d = std::make_shared<Derivation>();
  d->seq = s;
  d->kind = NodeKind::Rule;
  d->rule = t;
  d->name = std::move(name);
  d->kids = std::move(kids);
  return d;
}

}  // namespace

BasicnessReport check_basic(const Proof& d) {
  BasicnessReport rep;
  std::vector<std::size_t> path;
  basic_rec(d, path, rep);
  return rep;
}

std::vector<Sequent> hypotheses(const Proof& d) {
  std::vector<Sequent> out;
  hyp_rec(d, out);
  return out;
}

std::size_t proof_size(const Proof& d) {
  std::size_t n = 1;
  for (const auto& k : d->kids) n += proof_size(k);
  return n;
}

Proof aug(const Proof& d, const std::vector<Formula>& gamma, const std::vector<Formula>& delta, Formula c) {
  Formula p = d->seq.suc;
  if (!is_prim(p)) throw std::invalid_argument("aug: root succedent must be primitive");
  if (gamma.empty() && delta.empty() && c == p) throw std::invalid_argument("aug: context is trivial");
  Sequent s{concat(gamma, d->seq.ant, delta), c};
  switch (d->kind) {
    case NodeKind::Hyp:
      return make_hyp(s);
    case NodeKind::Axiom:
      if (d->seq.ant.size() == 1 && d->seq.ant[0] == p) return make_hyp(s);
      return make_axiom(s);  // 0L stays an axiom in any context
    case NodeKind::Rule:
      break;
  }
  RuleDescriptor t = d->rule;
  if (t.m == 0) throw std::invalid_argument("aug: right rule with primitive succedent");
  t.m += gamma.size();
  if (t.perm) t.perm->pos += gamma.size();
  auto app = apply_rule(d->seq, d->rule);
  bool side = app && (app->name.rfind("\\L", 0) == 0 || app->name.rfind("/L", 0) == 0);
  std::vector<Proof> kids;
  for (std::size_t k = 0; k < d->kids.size(); ++k)
    kids.push_back(side && k == 1 ? d->kids[k] : aug(d->kids[k], gamma, delta, c));
  return node(s, t, std::move(kids), d->name);
}

Proof graft(const Proof& t, const Proof& d) {
  if (t->kind == NodeKind::Hyp) {
    if (!(t->seq == d->seq)) throw std::invalid_argument("graft: hypothesis " + print(t->seq) + " differs from " + print(d->seq));
    return d;
  }
  if (t->kids.empty()) return t;
  std::vector<Proof> kids;
  for (const auto& k : t->kids) kids.push_back(graft(k, d));
  auto c = std::make_shared<Derivation>(*t);
  c->kids = std::move(kids);
  return c;
}

Proof conj_widen(const Proof& d, std::size_t pos, Formula other, bool other_left) {
  if (pos >= d->seq.ant.size()) throw std::invalid_argument("conj_widen: occurrence not found");
  Formula a = d->seq.ant[pos];
  Formula w = other_left ? meet(other, a) : meet(a, other);
  Sequent s = d->seq;
  s.ant[pos] = w;
  auto wrap = [&] { return node(s, {pos + 1, Nat(other_left ? 1 : 0), std::nullopt}, {d}, other_left ? "&L2" : "&L1"); };
  switch (d->kind) {
    case NodeKind::Hyp:
      return make_hyp(s);
    case NodeKind::Axiom:
      if (is_axiom(s)) return make_axiom(s);
      return wrap();
    case NodeKind::Rule:
      break;
  }
  auto app = apply_rule(d->seq, d->rule);
  if (!app) throw std::invalid_argument("conj_widen: invalid node");
  if (app->principal == static_cast<long>(pos) && !app->permutation) return wrap();
  std::vector<Proof> kids;
  bool traced = false;
  for (std::size_t k = 0; k < d->kids.size(); ++k) {
    const auto& o = app->origin[k];
    auto it = std::find(o.begin(), o.end(), static_cast<long>(pos));
    if (it == o.end()) {
      kids.push_back(d->kids[k]);
    } else {
      traced = true;
      kids.push_back(conj_widen(d->kids[k], static_cast<std::size_t>(it - o.begin()), other, other_left));
    }
  }
  if (!traced) return wrap();
  return node(s, d->rule, std::move(kids), d->name);
}

namespace {

Proof eta(Formula a) {
  Sequent s{{a}, a};
  auto ax = [](Formula f) { return eta(f); };
  switch (a->op) {
    case Op::Prim:
    case Op::Zero:
    case Op::Star:
      return make_axiom(s);
    case Op::One:
      return make_rule(s, {1, 0, std::nullopt}, {make_axiom(Sequent{{}, one()})});
    case Op::Under: {
      Sequent inner{{a->a, a}, a->b};
      return make_rule(s, {0, 0, std::nullopt}, {make_rule(inner, {2, 1, std::nullopt}, {ax(a->b), ax(a->a)})});
    }
    case Op::Over: {
      Sequent inner{{a, a->b}, a->a};
      return make_rule(s, {0, 0, std::nullopt}, {make_rule(inner, {1, 1, std::nullopt}, {ax(a->a), ax(a->b)})});
    }
    case Op::Prod: {
      Sequent inner{{a->a, a->b}, a};
      return make_rule(s, {1, 0, std::nullopt}, {make_rule(inner, {0, 1, std::nullopt}, {ax(a->a), ax(a->b)})});
    }
    case Op::Meet: {
      auto l = make_rule(Sequent{{a}, a->a}, {1, 0, std::nullopt}, {ax(a->a)});
      auto r = make_rule(Sequent{{a}, a->b}, {1, 1, std::nullopt}, {ax(a->b)});
      return make_rule(s, {0, 0, std::nullopt}, {l, r});
    }
    case Op::Join: {
      auto l = make_rule(Sequent{{a->a}, a}, {0, 0, std::nullopt}, {ax(a->a)});
      auto r = make_rule(Sequent{{a->b}, a}, {0, 1, std::nullopt}, {ax(a->b)});
      return make_rule(s, {1, 0, std::nullopt}, {l, r});
    }
    case Op::Bang:
    case Op::Nabla:
      return make_rule(s, {0, 0, std::nullopt}, {ax(a->a)});
  }
  return make_axiom(s);
}

}  // namespace

Proof eta_expand(const Proof& d) {
  if (d->kind == NodeKind::Axiom) {
    const Sequent& s = d->seq;
    if (s.ant.size() == 1 && s.ant[0] == s.suc) return eta(s.suc);
    return d;
  }
  if (d->kids.empty()) return d;
  auto c = std::make_shared<Derivation>(*d);
  for (auto& k : c->kids) k = eta_expand(k);
  return c;
}

Proof desugar_generalized(const Proof& d) {
  std::vector<Proof> kids;
  for (const auto& k : d->kids) kids.push_back(desugar_generalized(k));
  if (d->kind != NodeKind::Rule) return d;
  if (!d->rule.perm) {
    auto c = std::make_shared<Derivation>(*d);
    c->kids = std::move(kids);
    return c;
  }
  const Perm& p = *d->rule.perm;
  RuleDescriptor mv{p.pos, Nat(p.right ? 2 * p.dist - 1 : 2 * p.dist), std::nullopt};
  Sequent moved = apply_rule(d->seq, mv)->premises[0];
  RuleDescriptor base = d->rule;
  base.perm.reset();
  return make_rule(d->seq, mv, {make_rule(moved, base, std::move(kids))});
}

namespace {

Proof bz(const Proof& d) {
  if (d->kind != NodeKind::Rule) return d;
  std::vector<Proof> kids;
  for (const auto& k : d->kids) kids.push_back(bz(k));
  const Sequent& s = d->seq;
  const std::size_t m = d->rule.m;
  auto rebuilt = [&] { return node(s, d->rule, kids, d->name); };
  if (d->name == "\\L") {
    Formula f = s.ant[m - 1];
    if (!is_prim(f->a)) return rebuilt();
    std::size_t pi = static_cast<std::size_t>(d->rule.l);
    if (pi == 1 && is_identity(kids[1], f->a)) return rebuilt();
    std::vector<Formula> gamma(s.ant.begin(), s.ant.begin() + static_cast<long>(m - 1 - pi));
    std::vector<Formula> rest(s.ant.begin() + static_cast<long>(m - 1), s.ant.end());
    Proof t = aug(kids[1], gamma, rest, s.suc);
    std::vector<Formula> mid{f->a, f};
    std::vector<Formula> delta(s.ant.begin() + static_cast<long>(m), s.ant.end());
    Sequent conc{concat(gamma, mid, delta), s.suc};
    Proof inner = make_rule(conc, {gamma.size() + 2, 1, std::nullopt}, {kids[0], make_axiom(Sequent{{f->a}, f->a})});
    return graft(t, inner);
  }
  if (d->name == ".R" && is_prim(s.suc->a) && is_prim(s.suc->b)) {
    Formula p1 = s.suc->a, p2 = s.suc->b;
    if (s.ant.size() == 2 && is_identity(kids[0], p1) && is_identity(kids[1], p2)) return rebuilt();
    std::size_t g = static_cast<std::size_t>(d->rule.l);
    std::vector<Formula> theta2(s.ant.begin() + static_cast<long>(g), s.ant.end());
    Proof t1 = aug(kids[0], {}, theta2, s.suc);
    Proof t2 = aug(kids[1], {p1}, {}, s.suc);
    Proof d3 = make_rule(Sequent{{p1, p2}, s.suc}, {0, 1, std::nullopt},
                         {make_axiom(Sequent{{p1}, p1}), make_axiom(Sequent{{p2}, p2})});
    return graft(t1, graft(t2, d3));
  }
  if (d->name == "&L1" || d->name == "&L2") {
    Formula f = s.ant[m - 1];
    bool first = d->name == "&L1";
    Formula sel = first ? f->a : f->b;
    if (sel->op == Op::Under) return conj_widen(kids[0], m - 1, first ? f->b : f->a, !first);
  }
  return rebuilt();
}

}  // namespace

Proof basicize(const Proof& d) { return bz(eta_expand(desugar_generalized(d))); }

// ---- proof files -----------------------------------------------------------

namespace {

void write_rec(const Proof& d, std::size_t depth, std::ostringstream& os) {
  os << std::string(2 * depth, ' ') << print(d->seq);
  switch (d->kind) {
    case NodeKind::Axiom:
      break;
    case NodeKind::Hyp:
      os << " @(hyp)";
      break;
    case NodeKind::Rule:
      os << " @(" << d->rule.m << "," << d->rule.l;
      if (d->rule.perm)
        os << "," << d->rule.perm->pos << ":" << (d->rule.perm->right ? "R" : "L") << ":" << d->rule.perm->dist;
      os << ")";
      break;
  }
  os << "\n";
  for (const auto& k : d->kids) write_rec(k, depth + 1, os);
}

struct Line {
  std::size_t indent;
  std::size_t number;
  Sequent seq;
  NodeKind kind;
  RuleDescriptor rule;
};

Proof build(const std::vector<Line>& lines, std::size_t& i) {
  const Line& ln = lines[i++];
  std::vector<Proof> kids;
  while (i < lines.size() && lines[i].indent > ln.indent) {
    if (lines[i].indent != ln.indent + 2)
      throw ParseError("bad indentation on line " + std::to_string(lines[i].number), 0);
    kids.push_back(build(lines, i));
  }
  if (ln.kind == NodeKind::Hyp) return make_hyp(ln.seq);
  if (ln.kind == NodeKind::Axiom) {
    if (!kids.empty()) throw ParseError("leaf marker on inner node, line " + std::to_string(ln.number), 0);
    return make_axiom(ln.seq);
  }
  auto app = apply_rule(ln.seq, ln.rule);
  auto d = std::make_shared<Derivation>();
  d->seq = ln.seq;
  d->kind = NodeKind::Rule;
  d->rule = ln.rule;
  d->name = app ? app->name : "?";
  d->kids = std::move(kids);
  return d;
}

}  // namespace

std::string write_proof(const Proof& d) {
  std::ostringstream os;
  write_rec(d, 0, os);
  return os.str();
}

Proof read_proof(std::string_view text) {
  static const std::regex suffix(R"(\s@\((hyp|(\d+),(\d+)(,(\d+):([LR]):(\d+))?)\)\s*$)");
  std::vector<Line> lines;
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(is, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t indent = raw.find_first_not_of(' ');
    std::string body = raw.substr(indent);
    Line ln{indent, number, {}, NodeKind::Axiom, {}};
    std::smatch mt;
    bool parsed = false;
    if (std::regex_search(body, mt, suffix)) {
      std::string head = body.substr(0, static_cast<std::size_t>(mt.position(0)));
      try {
        ln.seq = parse_sequent(head);
        parsed = true;
        if (mt[1] == "hyp") {
          ln.kind = NodeKind::Hyp;
        } else {
          ln.kind = NodeKind::Rule;
          ln.rule.m = std::stoul(mt[2]);
          ln.rule.l = Nat(mt[3].str());
          if (mt[4].matched) ln.rule.perm = Perm{std::stoul(mt[5]), mt[6] == "R", std::stoul(mt[7])};
        }
      } catch (const ParseError&) {
        parsed = false;
      }
    }
    if (!parsed) {
      try {
        ln.seq = parse_sequent(body);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(number) + ": " + e.what(), e.offset);
      }
    }
    lines.push_back(std::move(ln));
  }
  if (lines.empty()) throw ParseError("empty proof", 0);
  std::size_t i = 0;
  Proof d = build(lines, i);
  if (i != lines.size()) throw ParseError("more than one root (line " + std::to_string(lines[i].number) + ")", 0);
  return d;
}

}  // namespace actmux
