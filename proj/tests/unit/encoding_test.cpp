#include <doctest.h>

#include "actmux/encoding.hpp"

using namespace actmux;

namespace {
Formula fml(const char* s) { return parse_formula(s); }
Nat alpha_input(const Ordinal& a) { return sub(InfIndex{Quant::Sigma, pi_encode(a), 0, 0}, {}); }
}  // namespace

TEST_SUITE("encoding") {
  TEST_CASE("rule formulas") {
    CHECK(fm({{"a", "c"}, {"b", "b", "a"}}) == fml("c\\a\\(b.b.a.@wait)"));
    CHECK(fm({{"a"}, {"a"}}) == fml("a\\(a.@wait)"));
    CHECK(rank(fm({{"a", "c"}, {"b", "b", "a"}})).degree() == 0);
    SRS one = parse_sr("a -> b");
    CHECK(rule_formula(one) == fml("go\\(@(a\\(b.@wait)).(wait\\go))"));
  }

  TEST_CASE("technical formulas") {
    Formula t0 = technical_formula(rule_placeholder(0), f_zero());
    REQUIRE(t0->op == Op::Under);
    CHECK(t0->a == atoms().go);
    auto parts = [](Formula f) { return f->b; };
    CHECK(print(parts(t0)).find("a_1\\okay") != std::string::npos);
    Formula ts = technical_formula(rule_placeholder(1), f_sigma());
    CHECK(print(ts).find("a_2\\(a_Pi.eps)") != std::string::npos);
  }

  TEST_CASE("energy formulas") {
    const Atoms& A = atoms();
    CHECK(okay_formula() == under(A.okay, A.okay));
    CHECK(energy_level(1) == meet(okay_formula(), under(A.eps, prod(A.eps, bang(energy_level(0))))));
    CHECK(energy_hlevel(0) == energy_level(0));
    for (std::size_t h = 0; h <= 4; ++h) CHECK(star_bang_depth(energy_level(h)) == h + 1);
  }

  TEST_CASE("exponents and the encoded sequent") {
    CHECK(energy_exponents(alpha_input(Ordinal())) == std::vector<std::size_t>{0});
    CHECK(energy_exponents(alpha_input(Ordinal::omega_pow(1))) == std::vector<std::size_t>{1, 0});
    RunSequent s = seq_encode(alpha_input(Ordinal::omega_pow(1)), Variant::Standard);
    REQUIRE(s.ant.size() >= 2);
    CHECK(s.ant[s.ant.size() - 2].f == energy_level(0));
    CHECK(s.ant.back().f == energy_level(1));
    RunSequent m = seq_encode(alpha_input(Ordinal()), Variant::Minus);
    CHECK(m.ant.back().f == energy_formula(EnergyKind::Killer));
    CHECK(parse_run_sequent(print(s)).ant == s.ant);
  }

  TEST_CASE("host functions") {
    InfIndex t{Quant::Sigma, pi_encode(Ordinal()), 0, qf_number(parse_qf("1+1=1+1"))};
    auto w = f0_direct(sub(t, {}));
    REQUIRE(w.has_value());
    CHECK(*w == RunWord{{"a_1", 1}});
    InfIndex f{Quant::Sigma, pi_encode(Ordinal()), 0, qf_number(parse_qf("1=0"))};
    CHECK_FALSE(f0_direct(sub(f, {})).has_value());
    InfIndex one{Quant::Sigma, pi_encode(Ordinal::finite(1)), 1, 6};
    Nat inp = sub(one, {3});
    auto w1 = f0_direct(inp);
    REQUIRE(w1.has_value());
    CHECK(*w1 == RunWord{{"a_1", inp}, {"a_2", 1}});
    CHECK(f1_direct(RunWord{{"a_2", 1}}, 256).out == RunWord{{"a_1", 1}});
  }
}
