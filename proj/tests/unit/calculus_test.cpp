#include <doctest.h>

#include "actmux/calculus.hpp"
#include "actmux/search.hpp"

using namespace actmux;

namespace {
Sequent seq(const char* s) { return parse_sequent(s); }
Formula fml(const char* s) { return parse_formula(s); }
Ordinal ord(const char* s) { return *parse_ordinal(s); }
}  // namespace

TEST_SUITE("logic-core") {
  TEST_CASE("parsing and printing") {
    Sequent s = seq("p, p\\q |- q");
    REQUIRE(s.ant.size() == 2);
    CHECK(s.ant[1] == under(prim("p"), prim("q")));
    CHECK(seq("|- p*").suc == star(prim("p")));
    CHECK(fml("a\\b\\c") == under(prim("a"), under(prim("b"), prim("c"))));
    for (const char* t : {"p\\q", "!(p & q*)", "@p . (q | 1)", "(p/q)/r", "0 & !p*"})
      CHECK(parse_formula(print(fml(t))) == fml(t));
    CHECK_THROWS_AS(parse_sequent("p |- "), ParseError);
  }

  TEST_CASE("rank") {
    CHECK(rank(prim("p")) == Ordinal::finite(1));
    CHECK(rank(fml("p.q")) == Ordinal::finite(3));
    CHECK(rank(seq("p.q |- p.q")) == Ordinal::finite(6));
    CHECK(rank(fml("p*")) == ord("w+1"));
    CHECK(rank(fml("!p")) == ord("w+1"));
    CHECK(rank(fml("@p")) == Ordinal::finite(2));
    CHECK(to_string(rank(seq("p* |- p*"))) == "w*2+2");
  }

  TEST_CASE("star and bang depth") {
    CHECK(star_bang_depth(fml("!(p & q*)")) == 2);
    CHECK(star_bang_depth(fml("!p & q*")) == 1);
    CHECK(star_bang_depth(fml("p\\q")) == 0);
    CHECK_FALSE(in_fragment(seq("!(p & q*) |- p"), 5, true));
    CHECK(in_fragment(seq("(!p & q)* |- p"), 2, true));
    CHECK(in_fragment(seq("p, p\\q |- q"), 0, false));
  }

  TEST_CASE("sugar") {
    Formula go = prim("go"), x = prim("x"), a2 = prim("a_2");
    CHECK(query(go, x) == under(go, prod(go, x)));
    CHECK(arrow(go, a2) == under(go, prod(a2, go)));
  }

  TEST_CASE("Goedel numbering") {
    CHECK(goedel_decode(goedel_encode(seq("p |- p"))) == seq("p |- p"));
    CHECK_FALSE(goedel_decode(0).has_value());
    CHECK(goedel_encode(seq("p |- q")) != goedel_encode(seq("q |- p")));
  }
}

TEST_SUITE("calculus") {
  TEST_CASE("premises of a left division") {
    Sequent s = seq("p, p\\q, q\\r, r\\s |- s");
    auto ps = premises(s, {3, 2, std::nullopt});
    REQUIRE(ps.has_value());
    REQUIRE(ps->size() == 2);
    CHECK((*ps)[0] == seq("r, r\\s |- s"));
    CHECK((*ps)[1] == seq("p, p\\q |- q"));
    CHECK(premise_code(goedel_encode(s), descriptor_code({3, 2, std::nullopt}), 0) ==
          goedel_encode(seq("r, r\\s |- s")));
  }

  TEST_CASE("premise codes are total") {
    Sequent s = seq("p, p\\q |- q");
    Nat t = descriptor_code({2, 1, std::nullopt});
    CHECK(premise_code(goedel_encode(s), t, 5) == goedel_encode(seq("1 |- 1")));
    CHECK(premise_code(0, t, 0) == 0);
    CHECK_FALSE(premises(seq("p |- p"), {1, 0, std::nullopt}).has_value());
  }

  TEST_CASE("bang with zero copies erases") {
    auto ps = premises(seq("q, !p |- q"), {2, 0, std::nullopt});
    REQUIRE(ps.has_value());
    CHECK((*ps)[0] == seq("q |- q"));
  }

  TEST_CASE("axioms") {
    CHECK(is_axiom(seq("p |- p")));
    CHECK(is_axiom(seq("|- 1")));
    CHECK(is_axiom(seq("|- p*")));
    CHECK(is_axiom(seq("q, 0 |- p")));
    CHECK_FALSE(is_axiom(seq("p |- q")));
  }

  TEST_CASE("checking derivations") {
    Proof ok = make_rule(seq("p, p\\q |- q"), {2, 1, std::nullopt},
                         {make_axiom(seq("q |- q")), make_axiom(seq("p |- p"))});
    CHECK(check_derivation(ok, false).ok);
    CHECK(check_basic(ok).ok);
    CHECK_FALSE(check_derivation(make_axiom(seq("p |- q")), false).ok);
    Proof star2 = make_rule(seq("p, p |- p*"), {0, star_pieces_encode({1, 1}), std::nullopt},
                            {make_axiom(seq("p |- p")), make_axiom(seq("p |- p"))});
    CHECK(check_derivation(star2, false).ok);
  }

  TEST_CASE("augmentation") {
    Proof d = make_axiom(seq("p |- p"));
    Proof a = aug(d, {prim("x")}, {prim("y")}, prim("z"));
    auto hs = hypotheses(a);
    REQUIRE(hs.size() == 1);
    CHECK(hs[0] == seq("x, p, y |- z"));
  }

  TEST_CASE("rank decreases except for bare permutations") {
    CHECK(rank_decreases(seq("p.q |- r"), {1, 0, std::nullopt}));
    Sequent s = seq("@p, q |- r");
    auto ds = enumerate_descriptors(s, {2, true, false});
    bool saw_perm = false;
    for (const RuleDescriptor& t : ds) {
      auto app = apply_rule(s, t);
      if (app && app->permutation) {
        saw_perm = true;
        CHECK_FALSE(rank_decreases(s, t));
      }
    }
    CHECK(saw_perm);
  }

  TEST_CASE("basicize keeps the end sequent") {
    Sequent s = seq("p, q, (p.q)\\r |- r");
    SearchResult r = bounded_search(s);
    REQUIRE(r.verdict == Verdict::Derivable);
    Proof b = basicize(r.proof);
    CHECK(b->seq == s);
    CHECK(check_derivation(b, false).ok);
    CHECK(check_basic(b).ok);
  }

  TEST_CASE("proof files round trip") {
    SearchResult r = bounded_search(seq("p, p\\q, q\\r |- r"));
    REQUIRE(r.proof);
    Proof back = read_proof(write_proof(r.proof));
    CHECK(write_proof(back) == write_proof(r.proof));
    CHECK(check_derivation(back, false).ok);
  }

  TEST_CASE("search") {
    SearchResult r = bounded_search(seq("p, p\\q |- q"));
    CHECK(r.verdict == Verdict::Derivable);
    CHECK(proof_size(r.proof) == 3);
    CHECK(bounded_search(seq("p |- q")).verdict == Verdict::Underivable);
    CHECK(bounded_search(seq("p & q |- q | r")).verdict == Verdict::Derivable);
  }

  TEST_CASE("saturation") {
    std::vector<Sequent> u{seq("p |- p"), seq("p, p\\q |- q"), seq("q |- q")};
    CHECK(saturate(u).size() == 3);
    CHECK(saturate({seq("p |- p")}).size() == 1);
    auto partial = saturate({seq("p |- p"), seq("p, p\\q |- q")});
    CHECK(partial.size() == 1);
  }
}
