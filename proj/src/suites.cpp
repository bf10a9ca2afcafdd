#include "actmux/suites.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "actmux/calculus.hpp"
#include "actmux/computability.hpp"
#include "actmux/decider.hpp"
#include "actmux/der.hpp"
#include "actmux/encoding.hpp"
#include "actmux/rewriting.hpp"
#include "actmux/search.hpp"

namespace actmux {

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

struct Outcome {
  bool passed;
  std::string detail;
};

// ---- 1. Turing machines against their rewriting systems ------------------------

Outcome suite_tm_sr() {
  std::size_t checked = 0;
  for (const TuringMachine& tm : {toy_identity(), toy_unary_successor(), toy_eraser()}) {
    std::vector<Word> layer{{}};
    for (std::size_t len = 0; len <= 4; ++len) {
      for (const Word& u : layer) {
        ImplReport r = implements_check(tm, u, 200000);
        ++checked;
        if (r.verdict != ImplVerdict::Agree)
          return {false, "input '" + join_word(u) + "': " + to_string(r.verdict) + " " + r.detail};
      }
      std::vector<Word> next;
      for (const Word& u : layer)
        for (const Symbol& a : tm.input) {
          Word w = u;
          w.push_back(a);
          next.push_back(w);
        }
      layer = std::move(next);
    }
  }
  return {true, std::to_string(checked) + " machine/input pairs agree"};
}

// ---- 2. rank monotonicity ------------------------------------------------------

Formula random_formula(Rng& rng, std::size_t depth) {
  static const Formula leaves[] = {prim("p"), prim("q"), prim("p"), prim("q"), zero(), one()};
  if (depth == 0 || pick(rng, 4) == 0) return leaves[pick(rng, 6)];
  static const Op ops[] = {Op::Under, Op::Over, Op::Prod, Op::Meet, Op::Join, Op::Bang, Op::Star, Op::Nabla};
  Op op = ops[pick(rng, 8)];
  Formula a = random_formula(rng, depth - 1);
  return is_unary(op) ? make(op, a, nullptr) : make(op, a, random_formula(rng, depth - 1));
}

Outcome suite_rank_monotone() {
  Rng rng(20240601);
  std::size_t instances = 0, attempts = 0;
  EnumOptions opt{3, true, true};
  while (instances < 10000 && attempts < 200000) {
    ++attempts;
    Sequent s;
    for (std::size_t k = pick(rng, 4); k > 0; --k) s.ant.push_back(random_formula(rng, 3));
    s.suc = random_formula(rng, 3);
    auto ds = enumerate_descriptors(s, opt);
    if (ds.empty()) continue;
    const RuleDescriptor& t = ds[pick(rng, ds.size())];
    auto app = apply_rule(s, t);
    if (!app || app->permutation) continue;
    ++instances;
    const Ordinal r = rank(s);
    for (const Sequent& p : app->premises)
      if (!(rank(p) < r))
        return {false, "rule " + app->name + " on " + print(s) + " has premise " + print(p) + " of rank " +
                           to_string(rank(p)) + " >= " + to_string(r)};
  }
  if (instances < 10000) return {false, "only " + std::to_string(instances) + " instances generated"};
  return {true, std::to_string(instances) + " instances, all premises of lower rank"};
}

// ---- 3. basicization -------------------------------------------------------------

Outcome suite_basicize() {
  std::size_t proved = 0;
  for (const Sequent& s : decidable_corpus()) {
    SearchResult r = bounded_search(s);
    if (r.verdict != Verdict::Derivable) continue;
    ++proved;
    Proof b = basicize(r.proof);
    if (!(b->seq == s)) return {false, "basicize changed the root of " + print(s)};
    CheckResult c = check_derivation(b, false);
    if (!c.ok) return {false, "basicized proof of " + print(s) + " fails the check: " + c.message};
    BasicnessReport br = check_basic(b);
    if (!br.ok)
      return {false, "basicized proof of " + print(s) + " violates condition " +
                         std::to_string(br.violations.front().condition)};
  }
  return {true, std::to_string(proved) + " of " + std::to_string(decidable_corpus().size()) +
                    " corpus sequents proved, every basicized proof checks"};
}

// ---- 4. bottom-top soundness ----------------------------------------------------

struct BtaGen {
  Rng rng{777};
  std::vector<Formula> prims{prim("a_L"), prim("okay"), prim("p"), prim("q")};

  Formula atom() { return prims[pick(rng, prims.size())]; }
  Formula small(std::size_t depth) {
    if (depth == 0 || pick(rng, 3) == 0) return atom();
    switch (pick(rng, 4)) {
      case 0: return under(atom(), small(depth - 1));
      case 1: return prod(small(depth - 1), small(depth - 1));
      case 2: return meet(small(depth - 1), small(depth - 1));
      default: return nabla(atom());
    }
  }
  Formula locked() {
    Formula f = under(atom(), small(1));
    return pick(rng, 3) == 0 ? meet(f, under(atom(), small(1))) : f;
  }
  std::vector<Formula> gamma(std::size_t max) {
    std::vector<Formula> g;
    for (std::size_t k = pick(rng, max + 1); k > 0; --k) g.push_back(atom());
    return g;
  }

  StructuredSequent form_one() {
    std::vector<Formula> ant = gamma(3);
    Formula focus;
    switch (pick(rng, 6)) {
      case 0:
      case 1: focus = under(atom(), small(1)); break;
      case 2: focus = prod(small(1), small(1)); break;
      case 3: focus = meet(small(1), small(1)); break;
      case 4: focus = bang(atom()); break;
      default: focus = star(atom()); break;
    }
    std::size_t at = ant.size();
    ant.push_back(focus);
    for (std::size_t k = pick(rng, 3); k > 0; --k) ant.push_back(locked());
    return focused(ant, at);
  }

  StructuredSequent form_two() {
    std::vector<Formula> g = gamma(2);
    Formula b;
    do b = atom();
    while (std::find(g.begin(), g.end(), b) != g.end());
    std::vector<Formula> theta = g;
    theta.push_back(under(b, small(1)));
    if (pick(rng, 2)) theta.push_back(locked());
    Formula focus = pick(rng, 2) ? nabla(small(1)) : under(atom(), under(atom(), small(1)));
    std::size_t at = pick(rng, theta.size() + 1);
    theta.insert(theta.begin() + static_cast<long>(at), focus);
    return focused(theta, at);
  }
};

Outcome suite_bta() {
  BtaGen gen;
  SearchCaps caps;
  caps.max_nodes = 20000;
  std::map<std::string, std::size_t> per_item;
  std::size_t definite_cases = 0, attempts = 0;
  while (definite_cases < 600 && attempts < 20000) {
    ++attempts;
    StructuredSequent s = attempts % 3 == 0 ? gen.form_two() : gen.form_one();
    StepResult r;
    try {
      r = bta_step(s, 3);
    } catch (const BtaError&) {
      continue;
    }
    Verdict in = bounded_search(s.sequent(), caps).verdict;
    if (!definite(in)) continue;
    std::vector<Verdict> vs;
    for (const auto& b : r.branches) vs.push_back(bounded_search(expand(RunSequent{b, goal()}, 1000), caps).verdict);
    Verdict out = combine(r, vs);
    if (!definite(out)) continue;
    ++definite_cases;
    ++per_item[r.item];
    if (in != out)
      return {false, "item " + r.item + " on " + print_structured(s) + ": search says " + to_string(in) +
                         ", the branches say " + to_string(out)};
  }
  std::string items;
  for (const auto& [k, n] : per_item) items += " " + k + ":" + std::to_string(n);
  if (definite_cases < 500) return {false, "only " + std::to_string(definite_cases) + " definite cases;" + items};
  return {true, std::to_string(definite_cases) + " definite cases agree;" + items};
}

// ---- 5. worked trace replay ------------------------------------------------------------

Outcome suite_example5(const SuiteOptions& opt) {
  const std::string path = opt.golden_dir + "/example5.txt";
  std::ifstream in(path, std::ios::binary);
  if (!in) return {false, "cannot read " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string got = example5_text();
  if (buf.str() != got) {
    std::size_t k = 0;
    while (k < got.size() && k < buf.str().size() && got[k] == buf.str()[k]) ++k;
    return {false, "trace differs from the golden file at byte " + std::to_string(k)};
  }
  return {true, "9 traces match the golden file byte for byte"};
}

// ---- 6. closing lemma, go-shift lemma, Killer --------------------------------------------

Proof killer_derivation(const Nat& inp, bool sigma) {
  const Atoms& A = atoms();
  const std::size_t n = static_cast<std::size_t>(inp);
  Formula ax = sigma ? A.a_Sigma : A.a_Pi;
  Formula k = energy_formula(EnergyKind::Killer);
  Formula tail = under(star(A.a_1), A.okay);
  std::vector<Formula> ones(n, A.a_1);
  auto seq = [&](std::vector<Formula> mid) {
    Sequent s{{A.a_L}, goal()};
    s.ant.insert(s.ant.end(), mid.begin(), mid.end());
    return s;
  };
  auto with = [&](std::vector<Formula> v, std::vector<Formula> more) {
    v.insert(v.end(), more.begin(), more.end());
    return v;
  };
  // a_L, okay |- a_L.okay
  Sequent top = seq({A.okay});
  Proof p_top = make_rule(top, {0, 1, std::nullopt}, {make_axiom({{A.a_L}, A.a_L}), make_axiom({{A.okay}, A.okay})});
  // a_1^n |- a_1*
  Sequent ones_seq{ones, star(A.a_1)};
  Proof p_ones;
  if (n == 0) {
    p_ones = make_axiom(ones_seq);
  } else {
    std::vector<Proof> kids(n, make_axiom({{A.a_1}, A.a_1}));
    p_ones = make_rule(ones_seq, {0, star_pieces_encode(std::vector<std::size_t>(n, 1)), std::nullopt}, kids);
  }
  // a_L, a_1^n, a_1*\okay
  Sequent s3 = seq(with(ones, {tail}));
  Proof p3 = make_rule(s3, {n + 2, n, std::nullopt}, {p_top, p_ones});
  // a_L, a_1^n, a_X, a_X\(a_1*\okay)
  Sequent s2 = seq(with(ones, {ax, under(ax, tail)}));
  Proof p2 = make_rule(s2, {n + 3, 1, std::nullopt}, {p3, make_axiom({{ax}, ax})});
  // a_L, a_1^n, a_X, (a_Sigma\..) & (a_Pi\..)
  Sequent s1 = seq(with(ones, {ax, k->b}));
  Proof p1 = make_rule(s1, {n + 3, sigma ? 0 : 1, std::nullopt}, {p2});
  Sequent s0 = seq(with(ones, {ax, A.eps, k}));
  return make_rule(s0, {n + 4, 1, std::nullopt}, {p1, make_axiom({{A.eps}, A.eps})});
}

Outcome suite_lemmas() {
  const Atoms& A = atoms();
  SearchCaps caps;
  // (a)
  std::vector<Formula> members;
  for (Formula p : {A.eps, A.go})
    for (Formula b : {prim("q"), prod(A.go, prim("q")), A.okay}) members.push_back(meet(okay_formula(), under(p, b)));
  std::size_t a_count = 0;
  std::function<Outcome(std::vector<Formula>&)> grow = [&](std::vector<Formula>& psi) -> Outcome {
    Sequent s{{A.a_L, A.okay}, goal()};
    s.ant.insert(s.ant.end(), psi.begin(), psi.end());
    ++a_count;
    if (!lemma10_applies(to_runs(s.ant))) return {false, "lemma10 shape not recognized for " + print(s)};
    if (bounded_search(s, caps).verdict != Verdict::Derivable) return {false, "search does not derive " + print(s)};
    if (psi.size() == 3) return {true, ""};
    for (Formula f : members) {
      psi.push_back(f);
      Outcome o = grow(psi);
      psi.pop_back();
      if (!o.passed) return o;
    }
    return {true, ""};
  };
  std::vector<Formula> psi0;
  if (Outcome o = grow(psi0); !o.passed) return o;
  // (b)
  std::size_t b_count = 0;
  const Formula q = prim("q");
  std::vector<std::vector<Formula>> tails{{}, {under(A.go, A.okay)}, {meet(under(A.go, A.okay), okay_formula())},
                                          {under(A.go, under(q, A.okay))}};
  for (const std::vector<Formula>& g : std::vector<std::vector<Formula>>{{A.a_L}, {A.a_L, q}})
    for (Formula p : {A.okay, q})
      for (const auto& tail : tails)
        for (std::size_t c = 0; c <= 3; ++c) {
          Sequent before{g, goal()}, after{g, goal()};
          before.ant.push_back(A.go);
          for (std::size_t k = 0; k < c; ++k) {
            before.ant.push_back(arrow(A.go, p));
            after.ant.push_back(p);
          }
          after.ant.push_back(A.go);
          before.ant.insert(before.ant.end(), tail.begin(), tail.end());
          after.ant.insert(after.ant.end(), tail.begin(), tail.end());
          auto step = lemma11(to_runs(before.ant));
          if (!step || expand(RunSequent{*step, goal()}, 100) != after)
            return {false, "lemma11 rewrites " + print(before) + " wrongly"};
          Verdict v1 = bounded_search(before, caps).verdict, v2 = bounded_search(after, caps).verdict;
          ++b_count;
          if (!definite(v1) || v1 != v2)
            return {false, "lemma11 pair " + print(before) + " / " + print(after) + ": " + to_string(v1) + " vs " +
                               to_string(v2)};
        }
  // (c)
  for (std::size_t inp = 0; inp <= 3; ++inp)
    for (bool sigma : {true, false}) {
      Proof d = killer_derivation(inp, sigma);
      CheckResult c = check_derivation(d, false);
      if (!c.ok) return {false, "Killer derivation for inp " + std::to_string(inp) + " fails: " + c.message};
      if (bounded_search(d->seq, caps).verdict != Verdict::Derivable)
        return {false, "search does not re-find " + print(d->seq)};
    }
  return {true, std::to_string(a_count) + " lemma10 sequents, " + std::to_string(b_count) +
                    " lemma11 pairs, 8 Killer derivations"};
}

// ---- 7. alpha = 0 end to end --------------------------------------------------

// Random quantifier-free formula with its value computed on the side.
struct QfGen {
  Rng rng{4242};
  std::size_t arity = 1;
  std::vector<Nat> args;

  std::pair<std::string, Nat> term(std::size_t depth) {
    std::size_t c = depth == 0 ? pick(rng, 2) : pick(rng, 4);
    if (c == 0) {
      std::size_t v = pick(rng, arity);
      return {"x" + std::to_string(v + 1), args[v]};
    }
    if (c == 1) {
      std::size_t n = pick(rng, 10);
      return {std::to_string(n), Nat(n)};
    }
    auto [a, va] = term(depth - 1);
    auto [b, vb] = term(depth - 1);
    if (c == 2) return {"(" + a + "+" + b + ")", va + vb};
    return {"(" + a + "*" + b + ")", va * vb};
  }
  std::pair<std::string, bool> formula(std::size_t depth) {
    std::size_t c = depth == 0 ? pick(rng, 2) : pick(rng, 5);
    if (c <= 1) {
      auto [a, va] = term(1);
      auto [b, vb] = term(1);
      return c == 0 ? std::pair{a + "=" + b, va == vb} : std::pair{a + "<" + b, va < vb};
    }
    if (c == 2) {
      auto [f, v] = formula(depth - 1);
      return {"!(" + f + ")", !v};
    }
    auto [f, vf] = formula(depth - 1);
    auto [g, vg] = formula(depth - 1);
    if (c == 3) return {"(" + f + "&" + g + ")", vf && vg};
    return {"(" + f + "|" + g + ")", vf || vg};
  }
};

Outcome suite_alpha0() {
  QfGen gen;
  DecideBudget b;
  std::size_t ok[2] = {0, 0}, trues = 0;
  std::string first_miss;
  for (std::size_t n = 0; n < 100; ++n) {
    gen.arity = 1 + pick(gen.rng, 2);
    gen.args.clear();
    for (std::size_t k = 0; k < gen.arity; ++k) gen.args.push_back(pick(gen.rng, 10));
    auto [text, truth] = gen.formula(2);
    trues += truth;
    InfIndex idx{pick(gen.rng, 2) ? Quant::Sigma : Quant::Pi, pi_encode(Ordinal()), gen.arity, qf_number(parse_qf(text))};
    Nat inp = sub(idx, gen.args);
    for (int v = 0; v < 2; ++v) {
      Decision d = decide_encoded(inp, v == 0 ? Variant::Standard : Variant::Minus, b);
      const Verdict want = truth ? Verdict::Derivable : Verdict::Underivable;
      if (d.verdict == want)
        ++ok[v];
      else if (first_miss.empty())
        first_miss = std::string(v == 0 ? "standard" : "minus") + " on " + text + ": " + to_string(d.verdict) +
                     " (" + d.reason + ")";
    }
  }
  std::string detail = "standard " + std::to_string(ok[0]) + "/100, minus " + std::to_string(ok[1]) + "/100, " +
                       std::to_string(trues) + " true instances";
  if (!first_miss.empty()) detail += "; first mismatch: " + first_miss;
  return {ok[0] == 100 && ok[1] == 100, detail};
}

// ---- 8. alpha = 1 toy --------------------------------------------------------------

Outcome suite_alpha1() {
  DecideBudget b;
  SatBudget sb;
  const Nat e = 6;  // registry entry 3: W = {<pi(0), 1, number of x1=x2>}
  std::size_t pairs = 0;
  for (std::size_t n1 = 0; n1 <= 4; ++n1) {
    Verdict vs[2];
    for (int k = 0; k < 2; ++k) {
      InfIndex idx{k == 0 ? Quant::Sigma : Quant::Pi, pi_encode(Ordinal::finite(1)), 1, e};
      SatResult truth = bounded_sat({idx, {Nat(n1)}}, sb);
      Decision d = decide_encoded(sub(idx, {Nat(n1)}), Variant::Standard, b);
      vs[k] = d.verdict;
      if (d.verdict == Verdict::Unknown) return {false, "Unknown for " + print_index(idx) + ": " + d.reason};
      const Truth expect = d.verdict == Verdict::Derivable ? Truth::True : Truth::False;
      if (truth.value != expect)
        return {false, print_index(idx) + " at " + std::to_string(n1) + ": decider " + to_string(d.verdict) +
                           ", bounded_sat " + to_string(truth.value)};
    }
    if (vs[0] != Verdict::Derivable || vs[1] != Verdict::Underivable)
      return {false, "verdicts at " + std::to_string(n1) + " are not Derivable/Underivable"};
    ++pairs;
  }
  return {true, std::to_string(pairs) + " Sigma/Pi pairs: Derivable/Underivable, matching bounded_sat"};
}

// ---- 9. Der agreement ------------------------------------------------------------

Outcome suite_der_agree() {
  DerEvaluator ev(DerCaps{8, 4096, 5000000});
  std::size_t compared = 0, skipped = 0;
  for (const Sequent& s : decidable_corpus()) {
    Verdict sv = bounded_search(s).verdict;
    if (!definite(sv)) {
      ++skipped;
      continue;
    }
    ++compared;
    Truth dv = ev.eval(pi_encode(rank(s)), goedel_encode(s));
    if ((dv == Truth::True) != (sv == Verdict::Derivable))
      return {false, print(s) + ": der_eval " + to_string(dv) + ", search " + to_string(sv)};
  }
  return {skipped == 0, std::to_string(compared) + " sequents agree, " + std::to_string(skipped) +
                            " without a definite search verdict"};
}

// ---- 10. Der rank ------------------------------------------------------------------

Outcome suite_der_rank() {
  std::vector<Ordinal> alphas{Ordinal::finite(0), Ordinal::finite(1), Ordinal::finite(2), Ordinal::finite(5),
                              Ordinal::omega_pow(1)};
  for (const Ordinal& a : alphas) {
    Ordinal want = times_nat(a, 2).succ();
    DerRank r = der_rank(pi_encode(a));
    if (r.statement != want) return {false, "der_rank(" + to_string(a) + ") = " + to_string(r.statement)};
  }
  if (to_string(der_rank(pi_encode(Ordinal::omega_pow(1))).statement) != "w*2+1")
    return {false, "der_rank(pi(w)) is not w*2+1"};
  return {true, "alpha*2+1 for alpha in 0, 1, 2, 5, w"};
}

// ---- 11. cut ----------------------------------------------------------------------

Outcome suite_cut() {
  std::vector<Sequent> derivable;
  for (const Sequent& s : decidable_corpus())
    if (bounded_search(s).verdict == Verdict::Derivable) derivable.push_back(s);
  std::map<Formula, std::vector<std::pair<std::size_t, std::size_t>>> uses;
  for (std::size_t k = 0; k < derivable.size(); ++k)
    for (std::size_t j = 0; j < derivable[k].ant.size(); ++j) uses[derivable[k].ant[j]].push_back({k, j});
  Rng rng(99);
  std::size_t pairs = 0, attempts = 0;
  while (pairs < 200 && attempts < 100000) {
    ++attempts;
    const Sequent& left = derivable[pick(rng, derivable.size())];
    auto it = uses.find(left.suc);
    if (it == uses.end()) continue;
    auto [k, j] = it->second[pick(rng, it->second.size())];
    const Sequent& right = derivable[k];
    Sequent c{{}, right.suc};
    c.ant.insert(c.ant.end(), right.ant.begin(), right.ant.begin() + static_cast<long>(j));
    c.ant.insert(c.ant.end(), left.ant.begin(), left.ant.end());
    c.ant.insert(c.ant.end(), right.ant.begin() + static_cast<long>(j) + 1, right.ant.end());
    ++pairs;
    Verdict v = bounded_search(c).verdict;
    if (v != Verdict::Derivable)
      return {false, "cut of " + print(left) + " into " + print(right) + " gives " + print(c) + ": " + to_string(v)};
  }
  return {pairs == 200, std::to_string(pairs) + " cut conclusions derivable"};
}

// ---- 12. ordinals ------------------------------------------------------------------

Outcome suite_ordinals() {
  Rng rng(12);
  auto ord = [&] {
    std::vector<Nat> c(pick(rng, 5));
    for (Nat& x : c) x = pick(rng, 6);
    return Ordinal(c);
  };
  for (std::size_t n = 0; n < 10000; ++n) {
    Ordinal a = ord(), b = ord(), c = ord();
    if (hessenberg_sum(a, b) != hessenberg_sum(b, a)) return {false, "not commutative at " + to_string(a)};
    if (hessenberg_sum(hessenberg_sum(a, b), c) != hessenberg_sum(a, hessenberg_sum(b, c)))
      return {false, "not associative at " + to_string(a)};
    if (a < b && !(hessenberg_sum(a, c) < hessenberg_sum(b, c)))
      return {false, "not monotone at " + to_string(a) + ", " + to_string(b)};
    if (pi_decode(pi_encode(a)) != a) return {false, "pi round trip fails at " + to_string(a)};
  }
  return {true, "10000 samples"};
}

// ---- 13. fragment depth ---------------------------------------------------------

Outcome suite_depth() {
  for (std::size_t h = 0; h <= 4; ++h)
    if (star_bang_depth(energy_level(h)) != h + 1)
      return {false, "depth of E_" + std::to_string(h) + " is " + std::to_string(star_bang_depth(energy_level(h)))};
  std::size_t checked = 0;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<Ordinal> alphas{Ordinal::finite(0), Ordinal::finite(3)};
    if (k > 1) {
      std::vector<Nat> c(k, 2);
      alphas.push_back(Ordinal(c));
      alphas.push_back(Ordinal::omega_pow(k - 1, 7));
    }
    for (const Ordinal& a : alphas) {
      Nat inp = sub(InfIndex{Quant::Sigma, pi_encode(a), 0, 0}, {});
      RunSequent s = seq_encode(inp, Variant::Standard);
      for (const Run& r : s.ant)
        if (star_bang_depth(r.f) > k)
          return {false, "alpha " + to_string(a) + " below w^" + std::to_string(k) + " uses depth " +
                             std::to_string(star_bang_depth(r.f))};
      ++checked;
    }
  }
  return {true, "E_h has depth h+1 for h <= 4; " + std::to_string(checked) + " encoded sequents within their fragment"};
}

struct Entry {
  const char* name;
  double limit;
  std::function<Outcome(const SuiteOptions&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {"tm-sr", 10, [](const SuiteOptions&) { return suite_tm_sr(); }},
      {"rank-monotone", 5, [](const SuiteOptions&) { return suite_rank_monotone(); }},
      {"basicize", 60, [](const SuiteOptions&) { return suite_basicize(); }},
      {"bta", 120, [](const SuiteOptions&) { return suite_bta(); }},
      {"example5", 1, suite_example5},
      {"lemmas", 30, [](const SuiteOptions&) { return suite_lemmas(); }},
      {"alpha0", 30, [](const SuiteOptions&) { return suite_alpha0(); }},
      {"alpha1", 60, [](const SuiteOptions&) { return suite_alpha1(); }},
      {"der-agree", 120, [](const SuiteOptions&) { return suite_der_agree(); }},
      {"der-rank", 1, [](const SuiteOptions&) { return suite_der_rank(); }},
      {"cut", 120, [](const SuiteOptions&) { return suite_cut(); }},
      {"ordinals", 5, [](const SuiteOptions&) { return suite_ordinals(); }},
      {"depth", 1, [](const SuiteOptions&) { return suite_depth(); }},
  };
  return e;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const Entry& e : entries()) n.push_back(e.name);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  const auto& es = entries();
  for (std::size_t k = 0; k < es.size(); ++k) {
    if (name != es[k].name) continue;
    SuiteResult r;
    r.id = static_cast<int>(k) + 1;
    r.name = name;
    r.limit_seconds = es[k].limit;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = es[k].run(opt);
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = o.passed && r.seconds <= r.limit_seconds;
    r.detail = o.detail;
    if (o.passed && !r.passed) r.detail += "; over the time limit";
    return r;
  }
  std::string known;
  for (const std::string& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown suite '" + name + "'; available: " + known);
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt) {
  std::vector<SuiteResult> out;
  for (const std::string& n : suite_names()) out.push_back(run_suite(n, opt));
  return out;
}

const std::vector<Sequent>& decidable_corpus() {
  static const std::vector<Sequent> corpus = [] {
    const Op bins[] = {Op::Under, Op::Over, Op::Prod, Op::Meet, Op::Join};
    std::vector<std::vector<Formula>> by_size(3);
    by_size[0] = {prim("p"), prim("q")};
    for (std::size_t n = 1; n <= 2; ++n) {
      for (Formula a : by_size[n - 1]) by_size[n].push_back(nabla(a));
      for (Op op : bins)
        for (std::size_t i = 0; i < n; ++i)
          for (Formula a : by_size[i])
            for (Formula b : by_size[n - 1 - i]) by_size[n].push_back(make(op, a, b));
    }
    std::vector<Sequent> out;
    for (std::size_t cs = 0; cs <= 2; ++cs)
      for (Formula c : by_size[cs]) out.push_back({{}, c});
    for (std::size_t ca = 0; ca <= 2; ++ca)
      for (std::size_t cs = 0; ca + cs <= 2; ++cs)
        for (Formula a : by_size[ca])
          for (Formula c : by_size[cs]) out.push_back({{a}, c});
    for (std::size_t c1 = 0; c1 <= 1; ++c1)
      for (std::size_t c2 = 0; c1 + c2 <= 1; ++c2)
        for (std::size_t cs = 0; c1 + c2 + cs <= 1; ++cs)
          for (Formula a : by_size[c1])
            for (Formula b : by_size[c2])
              for (Formula c : by_size[cs]) out.push_back({{a, b}, c});
    // Sample with 3 to 6 connectives.
    Rng rng(31337);
    std::function<Formula(std::size_t)> gen = [&](std::size_t n) -> Formula {
      if (n == 0) return by_size[0][pick(rng, 2)];
      if (pick(rng, 6) == 0) return nabla(gen(n - 1));
      std::size_t i = pick(rng, n);
      return make(bins[pick(rng, 5)], gen(i), gen(n - 1 - i));
    };
    for (std::size_t k = 0; k < 600; ++k) {
      std::size_t total = 3 + pick(rng, 4);
      std::size_t parts = 2 + pick(rng, 3);  // antecedent formulas plus the succedent
      std::vector<std::size_t> share(parts, 0);
      for (std::size_t t = 0; t < total; ++t) ++share[pick(rng, parts)];
      Sequent s;
      for (std::size_t j = 0; j + 1 < parts; ++j) s.ant.push_back(gen(share[j]));
      s.suc = gen(share.back());
      out.push_back(s);
    }
    return out;
  }();
  return corpus;
}

std::string example5_text() {
  std::string out;
  for (int inp = 0; inp <= 8; ++inp) {
    out += "inp = " + std::to_string(inp) + "\n";
    out += format_trace(example5_trace(inp));
    out += "\n";
  }
  return out;
}

}  // namespace actmux
