#include <doctest.h>

#include "actmux/decider.hpp"
#include "actmux/search.hpp"
#include "actmux/suites.hpp"

using namespace actmux;

namespace {
Formula fml(const char* s) { return parse_formula(s); }
Nat qf_input(const char* text, std::vector<Nat> args) {
  InfIndex idx{Quant::Sigma, pi_encode(Ordinal()), args.size(), qf_number(parse_qf(text))};
  return sub(idx, args);
}
}  // namespace

TEST_SUITE("decider") {
  TEST_CASE("locked formulas") {
    CHECK(is_locked(okay_formula()));
    CHECK(is_locked(meet(under(atoms().a_Sigma, fml("e")), under(atoms().a_Pi, fml("f")))));
    CHECK_FALSE(is_locked(fml("p.q")));
  }

  TEST_CASE("left division against a matching atom") {
    const Atoms& A = atoms();
    Formula e = fml("p.q");
    StructuredSequent s = focused({A.a_L, A.eps, under(A.eps, e), okay_formula()}, 2);
    StepResult r = bta_step(s);
    CHECK(r.kind == StepKind::Deterministic);
    CHECK(r.item == "1a");
    REQUIRE(r.branches.size() == 1);
    CHECK(r.branches[0] == to_runs({A.a_L, e, okay_formula()}));
  }

  TEST_CASE("OKAY branch fails when Gamma does not end in okay") {
    const Atoms& A = atoms();
    StructuredSequent s = focused({A.a_L, A.a_Pi, A.eps, meet(okay_formula(), under(A.eps, fml("p")))}, 3);
    StepResult r = bta_step(s);
    CHECK(r.item == "1c");
    std::vector<Verdict> vs;
    for (const auto& b : r.branches) vs.push_back(bounded_search(expand({b, goal()}, 100)).verdict);
    CHECK(vs[0] == Verdict::Underivable);
  }

  TEST_CASE("nabla placements") {
    const Atoms& A = atoms();
    StructuredSequent s = focused({A.a_L, nabla(A.okay), under(A.go, A.okay)}, 1);
    StepResult r = bta_step(s);
    CHECK(r.kind == StepKind::Exists);
    CHECK(r.item == "2a");
    CHECK(r.branches.size() >= 2);
  }

  TEST_CASE("arrow blocks move past go") {
    const Atoms& A = atoms();
    std::vector<Formula> ant{A.a_L, A.go};
    for (int k = 0; k < 3; ++k) ant.push_back(arrow(A.go, A.a_2));
    ant.push_back(under(A.go, A.okay));
    auto out = lemma11(to_runs(ant));
    REQUIRE(out.has_value());
    CHECK(*out == normalize_runs({{A.a_L, 1}, {A.a_2, 3}, {A.go, 1}, {under(A.go, A.okay), 1}}));
    auto same = lemma11(to_runs({A.a_L, A.go, under(A.go, A.okay)}));
    REQUIRE(same.has_value());
    CHECK(*same == to_runs({A.a_L, A.go, under(A.go, A.okay)}));
  }

  TEST_CASE("OKAY contexts close") {
    const Atoms& A = atoms();
    std::vector<Formula> ant{A.a_L, A.okay, meet(okay_formula(), under(A.eps, energy_level(0))),
                             meet(okay_formula(), under(A.go, A.okay))};
    CHECK(lemma10_applies(to_runs(ant)));
    CHECK(bounded_search({ant, goal()}).verdict == Verdict::Derivable);
  }

  TEST_CASE("rank zero instances follow the truth value") {
    DecideBudget b;
    CHECK(decide_encoded(qf_input("x1+1=2", {1}), Variant::Standard, b).verdict == Verdict::Derivable);
    CHECK(decide_encoded(qf_input("x1+1=2", {2}), Variant::Standard, b).verdict == Verdict::Underivable);
    CHECK(decide_encoded(qf_input("x1<x2", {3, 3}), Variant::Standard, b).verdict == Verdict::Underivable);
  }

  TEST_CASE("Killer alone is derivable") {
    DecideBudget b;
    Decision d = decide_state(5, Quant::Sigma, {{energy_formula(EnergyKind::Killer), 1}}, Variant::Minus, b);
    CHECK(d.verdict == Verdict::Derivable);
  }

  TEST_CASE("worked trace") {
    std::string t = format_trace(example5_trace(5));
    CHECK(t.find("a_L, a_1^{5}, E_Pi, E_1, E_2 |- a_L.okay") != std::string::npos);
    CHECK(example5_text().rfind("inp = 0\n", 0) == 0);
  }
}
