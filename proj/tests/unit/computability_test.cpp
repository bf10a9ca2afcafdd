#include <doctest.h>

#include "actmux/computability.hpp"

using namespace actmux;

TEST_SUITE("computability") {
  TEST_CASE("quantifier-free arithmetic") {
    CHECK(qf_eval(parse_qf("x1+1=2"), {1}));
    CHECK_FALSE(qf_eval(parse_qf("x1<x2"), {3, 3}));
    for (Nat a : {0, 1, 7}) CHECK_FALSE(qf_eval(parse_qf("x1+1=0"), {a}));
    QfNode n = parse_qf("!(x1*x2=3) | x2<x1");
    CHECK(qf_decode(qf_number(n)).has_value());
    CHECK(qf_eval(qf_number(n), 2, {1, 3}) == qf_eval(n, {1, 3}));
  }

  TEST_CASE("halting") {
    CHECK(halt(5, 2, 1));  // registry entry 1 halts at once
    CHECK_FALSE(halt(5, 2, 0));
    CHECK_FALSE(halt(3, 0, 1000));  // entry 0 diverges
  }

  TEST_CASE("enumerating W_e") {
    CHECK(enumerate_we(0, 256, 10).empty());
    CHECK(enumerate_we(4, 256, 6) == std::set<Nat>{0, 2, 4, 6});
    CHECK(enumerate_we(4, 256, 4) == std::set<Nat>{0, 2, 4});
    auto small = enumerate_we(4, 256, 3), large = enumerate_we(4, 256, 8);
    for (const Nat& n : small) CHECK(large.count(n) == 1);
  }

  TEST_CASE("substitution codes") {
    InfIndex idx{Quant::Sigma, pi_encode(Ordinal::finite(1)), 0, 6};
    CHECK(sub(idx, {}) == pair_encode(idx.code(), tuple_encode({})));
    InfIndex two{Quant::Pi, pi_encode(Ordinal::omega_pow(1)), 2, 9};
    auto back = decode_input(sub(two, {4, 11}));
    REQUIRE(back.has_value());
    CHECK(back->idx == two);
    CHECK(back->args == std::vector<Nat>{4, 11});
    CHECK(sub(two, {4, 11}) != sub(two, {11, 4}));
    CHECK_THROWS(sub(two, {1}));
  }

  TEST_CASE("index literals") {
    InfIndex idx = parse_index("Sigma@w^1:i=1:e=7");
    CHECK(idx.x == Quant::Sigma);
    CHECK(idx.p == pi_encode(Ordinal::omega_pow(1)));
    CHECK(parse_index(print_index(idx)) == idx);
  }

  TEST_CASE("bounded satisfaction") {
    SatBudget b;
    InfIndex q{Quant::Sigma, pi_encode(Ordinal()), 1, qf_number(parse_qf("x1+1=2"))};
    CHECK(bounded_sat({q, {1}}, b).value == Truth::True);
    InfIndex sig{Quant::Sigma, pi_encode(Ordinal::finite(1)), 1, 6};
    for (Nat n = 0; n <= 5; ++n) CHECK(bounded_sat({sig, {n}}, b).value == Truth::True);
    InfIndex pi{Quant::Pi, pi_encode(Ordinal::finite(1)), 1, 0};
    CHECK(bounded_sat({pi, {3}}, b).value == Truth::True);
  }

  TEST_CASE("triples") {
    auto t = decode_triple(encode_triple(Ordinal::omega_pow(1), 2, 9));
    REQUIRE(t.has_value());
    CHECK(t->beta == Ordinal::omega_pow(1));
    CHECK(t->k == 2);
    CHECK(t->e == 9);
  }
}
