#include <doctest.h>

#include "actmux/ordinals.hpp"

using namespace actmux;

namespace {
Ordinal ord(const char* s) { return *parse_ordinal(s); }
}  // namespace

TEST_SUITE("ordinals") {
  TEST_CASE("natural sum adds coefficients") {
    CHECK(hessenberg_sum(Ordinal(), ord("w*3+1")) == ord("w*3+1"));
    CHECK(hessenberg_sum(ord("w+1"), ord("w*2+3")) == ord("w*3+4"));
    CHECK(hessenberg_sum(ord("w^2+w"), ord("w^2*2+1")) == ord("w^2*3+w+1"));
  }

  TEST_CASE("comparison") {
    CHECK(ord("3") < ord("w"));
    CHECK(ord("w*2") == ord("w*2"));
    CHECK(ord("w^2") > ord("w*9+8"));
  }

  TEST_CASE("prime power codes") {
    CHECK(pi_encode(Ordinal()) == 1);
    CHECK(pi_encode(Ordinal::omega_pow(1)) == 3);
    CHECK(pi_encode(Ordinal::finite(5)) == 32);
    for (const char* s : {"0", "7", "w^3*2+w+1", "w^4"}) CHECK(pi_decode(pi_encode(ord(s))) == ord(s));
    CHECK_FALSE(pi_decode(0).has_value());
  }

  TEST_CASE("sums of powers of omega") {
    CHECK(omega_power_sum({}) == Ordinal());
    CHECK(omega_power_sum({1, 0, 0}) == ord("w+2"));
    CHECK(omega_power_sum({2, 2, 1}) == ord("w^2*2+w"));
  }

  TEST_CASE("text syntax") {
    CHECK(to_string(ord("w^2*3 + w*1 + 4")) == "w^2*3+w+4");
    std::string err;
    CHECK_FALSE(parse_ordinal("w^", &err).has_value());
    CHECK_FALSE(err.empty());
  }

  TEST_CASE("successors and limits") {
    CHECK(ord("w+1").pred() == ord("w"));
    CHECK(ord("w").is_limit());
    CHECK(times_nat(ord("w+1"), 2) == ord("w*2+1"));
  }
}
