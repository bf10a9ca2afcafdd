#include "actmux/search.hpp"

#include <algorithm>
#include <set>

namespace actmux {

namespace {

void arrangements(const std::vector<Formula>& fixed, std::vector<Formula> movable, std::size_t fi,
                  std::vector<Formula>& cur, std::vector<std::vector<Formula>>& out, std::size_t limit) {
  if (out.size() > limit) return;
  if (fi == fixed.size() && movable.empty()) {
    out.push_back(cur);
    return;
  }
  if (fi < fixed.size()) {
    cur.push_back(fixed[fi]);
    arrangements(fixed, movable, fi + 1, cur, out, limit);
    cur.pop_back();
  }
  std::set<std::size_t> tried;
  for (std::size_t k = 0; k < movable.size(); ++k) {
    if (!tried.insert(movable[k]->id).second) continue;
    Formula f = movable[k];
    std::vector<Formula> rest = movable;
    rest.erase(rest.begin() + static_cast<long>(k));
    cur.push_back(f);
    arrangements(fixed, rest, fi, cur, out, limit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Sequent> nabla_class(const Sequent& s, std::size_t limit) {
  std::vector<Formula> fixed, movable;
  for (Formula f : s.ant) (f->op == Op::Nabla ? movable : fixed).push_back(f);
  if (movable.empty()) return {s};
  std::vector<std::vector<Formula>> all;
  std::vector<Formula> cur;
  arrangements(fixed, movable, 0, cur, all, limit);
  if (all.size() > limit) return {};
  std::vector<Sequent> out{s};
  for (auto& a : all)
    if (a != s.ant) out.push_back(Sequent{a, s.suc});
  return out;
}

Proof permutation_chain(const Sequent& from, const Sequent& to, const Proof& top) {
  std::vector<std::pair<Sequent, RuleDescriptor>> steps;
  Sequent cur = from;
  for (std::size_t j = 0; j < cur.ant.size(); ++j) {
    while (cur.ant[j] != to.ant[j]) {
      RuleDescriptor t;
      if (to.ant[j]->op == Op::Nabla) {
        std::size_t k = j + 1;
        while (cur.ant[k] != to.ant[j]) ++k;
        t = {k + 1, Nat(2 * (k - j)), std::nullopt};
      } else {
        t = {j + 1, Nat(1), std::nullopt};  // nabla at j moves right by one
      }
      Sequent next = apply_rule(cur, t)->premises[0];
      steps.push_back({cur, t});
      cur = next;
    }
  }
  Proof p = top;
  for (std::size_t k = steps.size(); k-- > 0;) p = make_rule(steps[k].first, steps[k].second, {p});
  return p;
}

SearchResult Searcher::prove(const Sequent& s) {
  Entry e = prove_class(s);
  SearchResult r{e.v, e.p, ""};
  if (e.v == Verdict::Unknown) r.reason = budget_hit_ ? "node budget exhausted" : "instantiation caps reached";
  return r;
}

Searcher::Entry Searcher::prove_class(const Sequent& s) {
  if (auto it = memo_.find(s); it != memo_.end()) return it->second;
  auto cls = nabla_class(s, caps_.max_class);
  Entry res{Verdict::Underivable, nullptr};
  if (cls.empty()) {
    res.v = Verdict::Unknown;
  } else {
    for (const Sequent& v : cls) {
      Entry e = prove_fixed(v);
      if (e.v == Verdict::Derivable) {
        res = {Verdict::Derivable, v == s ? e.p : permutation_chain(s, v, e.p)};
        break;
      }
      if (e.v == Verdict::Unknown) res.v = Verdict::Unknown;
    }
  }
  memo_[s] = res;
  return res;
}

Searcher::Entry Searcher::combine(const Sequent& s, const RuleDescriptor& t, const std::vector<Sequent>& prem) {
  std::vector<Proof> kids;
  Verdict v = Verdict::Derivable;
  for (const Sequent& p : prem) {
    Entry e = prove_class(p);
    if (e.v == Verdict::Underivable) return {Verdict::Underivable, nullptr};
    if (e.v == Verdict::Unknown) v = Verdict::Unknown;
    kids.push_back(e.p);
  }
  if (v != Verdict::Derivable) return {v, nullptr};
  return {Verdict::Derivable, make_rule(s, t, std::move(kids))};
}

Searcher::Entry Searcher::prove_fixed(const Sequent& s) {
  if (auto it = fixed_.find(s); it != fixed_.end()) return it->second;
  auto done = [&](Entry e) {
    fixed_[s] = e;
    return e;
  };
  if (is_axiom(s)) return done({Verdict::Derivable, make_axiom(s)});
  if (++nodes_ > caps_.max_nodes) {
    budget_hit_ = true;
    return {Verdict::Unknown, nullptr};
  }
  if (caps_.invertible_first) {
    std::optional<RuleDescriptor> inv;
    switch (s.suc->op) {
      case Op::Under:
      case Op::Over:
      case Op::Meet:
        inv = RuleDescriptor{0, 0, std::nullopt};
        break;
      default:
        break;
    }
    for (std::size_t m = 1; !inv && m <= s.ant.size(); ++m) {
      Op op = s.ant[m - 1]->op;
      if (op == Op::Prod || op == Op::One || op == Op::Join) inv = RuleDescriptor{m, 0, std::nullopt};
    }
    if (inv) return done(combine(s, *inv, *premises(s, *inv)));
  }
  bool incomplete = false;
  EnumOptions opt{caps_.n_max, false, false};
  for (const RuleDescriptor& t : enumerate_descriptors(s, opt)) {
    auto prem = premises(s, t);
    if (!prem) continue;
    Entry e = combine(s, t, *prem);
    if (e.v == Verdict::Derivable) return done(e);
    if (e.v == Verdict::Unknown) incomplete = true;
  }
  bool has_star = false;
  for (std::size_t j = 0; j < s.ant.size(); ++j) {
    Op op = s.ant[j]->op;
    if (op == Op::Bang) incomplete = true;
    if (op != Op::Star) continue;
    has_star = true;
    for (std::size_t n = 0; n <= caps_.n_max; ++n) {
      Sequent inst = s;
      inst.ant.erase(inst.ant.begin() + static_cast<long>(j));
      inst.ant.insert(inst.ant.begin() + static_cast<long>(j), n, s.ant[j]->a);
      Entry e = prove_class(inst);
      if (e.v == Verdict::Underivable) return done({Verdict::Underivable, nullptr});
    }
  }
  if (has_star) incomplete = true;
  if (s.suc->op == Op::Star && s.ant.size() > caps_.n_max) incomplete = true;
  return done({incomplete ? Verdict::Unknown : Verdict::Underivable, nullptr});
}

SearchResult bounded_search(const Sequent& s, const SearchCaps& caps) {
  Searcher sr(caps);
  return sr.prove(s);
}

namespace {

std::vector<std::vector<bool>> iterate(const std::vector<Sequent>& universe, std::size_t n_max) {
  std::unordered_map<Sequent, std::size_t, SequentHash> index;
  for (std::size_t k = 0; k < universe.size(); ++k) index.emplace(universe[k], k);
  std::vector<bool> in(universe.size(), false);
  std::vector<std::vector<bool>> stages{in};
  EnumOptions opt{n_max, true, false};
  for (;;) {
    std::vector<bool> next = in;
    for (std::size_t k = 0; k < universe.size(); ++k) {
      if (in[k]) continue;
      const Sequent& s = universe[k];
      if (is_axiom(s)) {
        next[k] = true;
        continue;
      }
      for (const RuleDescriptor& t : enumerate_descriptors(s, opt)) {
        auto prem = premises(s, t);
        bool all = prem.has_value();
        for (std::size_t j = 0; all && j < prem->size(); ++j) {
          auto it = index.find((*prem)[j]);
          all = it != index.end() && in[it->second];
        }
        if (all) {
          next[k] = true;
          break;
        }
      }
    }
    if (next == in) break;
    in = next;
    stages.push_back(in);
  }
  return stages;
}

}  // namespace

std::vector<Sequent> saturate(const std::vector<Sequent>& universe, std::size_t n_max) {
  auto stages = iterate(universe, n_max);
  std::vector<Sequent> out;
  for (std::size_t k = 0; k < universe.size(); ++k)
    if (stages.back()[k]) out.push_back(universe[k]);
  return out;
}

std::vector<std::size_t> saturation_stages(const std::vector<Sequent>& universe, std::size_t n_max) {
  std::vector<std::size_t> out;
  for (const auto& st : iterate(universe, n_max)) out.push_back(static_cast<std::size_t>(std::count(st.begin(), st.end(), true)));
  return out;
}

}  // namespace actmux
