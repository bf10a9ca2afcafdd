#include <doctest.h>

#include "actmux/der.hpp"

using namespace actmux;

namespace {
Nat code(const char* s) { return goedel_encode(parse_sequent(s)); }
}  // namespace

TEST_SUITE("der-reduction") {
  TEST_CASE("axiom predicate") {
    CHECK(axiom_pred(code("p |- p")));
    CHECK(axiom_pred(code("|- 1")));
    CHECK_FALSE(axiom_pred(code("p |- q")));
    CHECK_FALSE(axiom_pred(0));
  }

  TEST_CASE("bounded evaluation") {
    CHECK(der_eval(pi_encode(Ordinal()), code("p |- p")) == Truth::True);
    CHECK(der_eval(pi_encode(Ordinal::finite(1)), code("p, p\\q |- q")) == Truth::True);
    CHECK(der_eval(pi_encode(Ordinal::finite(1)), 0) == Truth::Unknown);
    CHECK(der_eval(pi_encode(Ordinal::finite(7)), code("p |- q")) == Truth::Unknown);
  }

  TEST_CASE("rank of the defining formula") {
    CHECK(der_rank(pi_encode(Ordinal())).statement == Ordinal::finite(1));
    CHECK(der_rank(pi_encode(Ordinal::finite(1))).statement == Ordinal::finite(3));
    CHECK(der_rank(pi_encode(Ordinal::finite(1))).assembled == Ordinal::finite(5));
    CHECK(to_string(der_rank(pi_encode(Ordinal::omega_pow(1))).statement) == "w*2+1");
    CHECK_THROWS_AS(der_rank(0), std::invalid_argument);
  }
}
