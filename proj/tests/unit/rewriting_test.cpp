#include <doctest.h>

#include <algorithm>

#include "actmux/rewriting.hpp"

using namespace actmux;

namespace {
SRS system_of(const char* text) { return parse_sr(text); }
bool has_rule(const SRS& sr, const Word& l, const Word& r) {
  return std::any_of(sr.rules.begin(), sr.rules.end(), [&](const SRule& x) { return x.lhs == l && x.rhs == r; });
}
}  // namespace

TEST_SUITE("rewriting") {
  TEST_CASE("one step") {
    CHECK(one_step(system_of("a c -> b b a"), split_word("xacy")) == std::set<Word>{split_word("xbbay")});
    CHECK(one_step(system_of("a c -> b b a"), split_word("xy")).empty());
    CHECK(one_step(system_of("a a -> b"), split_word("aaa")) == std::set<Word>{split_word("ba"), split_word("ab")});
  }

  TEST_CASE("reachability") {
    ReachResult r = reach(system_of("a -> b"), {"a"}, [](const Word& w) { return w == Word{"b"}; }, 100);
    CHECK(r.status == ReachStatus::Found);
    CHECK(r.trace.size() == 2);
    ReachResult none = reach(SRS{}, {"a"}, [](const Word& w) { return w == Word{"b"}; }, 100);
    CHECK(none.status == ReachStatus::Exhausted);
  }

  TEST_CASE("compilation schemas") {
    TuringMachine tm = parse_tm(
        "states: q0 qa\ntape: _ b\ninput: b\noutput: b\nblank: _\nstart: q0\naccept: qa\nq0 _ -> qa b N\n");
    SRS sr = compile_tm(tm).sr;
    const Symbol R = primed("a_R"), L = primed("a_L");
    CHECK(has_rule(sr, {"a_R"}, {"q0", R}));
    CHECK(has_rule(sr, {"a_L", "q0"}, {"a_L", "b", "qa"}));
    CHECK(has_rule(sr, {"_", "qa"}, {"qa"}));
    CHECK(has_rule(sr, {"_", R}, {R}));
    CHECK(has_rule(sr, {"a_L", "qa"}, {"a_L", L}));
    CHECK(has_rule(sr, {L, R}, {"♦"}));
    CHECK(has_rule(sr, {L, "b"}, {"b", L}));
  }

  TEST_CASE("machines agree with their systems") {
    CHECK(implements_check(toy_identity(), {}, 100000).verdict == ImplVerdict::Agree);
    ImplReport succ = implements_check(toy_unary_successor(), split_word("11"), 100000);
    CHECK(succ.verdict == ImplVerdict::Agree);
    CHECK(succ.tm_output == split_word("111"));
    for (const char* u : {"", "0", "10", "011"})
      CHECK(implements_check(toy_eraser(), split_word(u), 100000).verdict == ImplVerdict::Agree);
  }

  TEST_CASE("file formats round trip") {
    TuringMachine tm = toy_unary_successor();
    CHECK(print_tm(parse_tm(print_tm(tm))) == print_tm(tm));
    SRS sr = compile_tm(tm).sr;
    CHECK(print_sr(parse_sr(print_sr(sr))) == print_sr(sr));
  }
}
