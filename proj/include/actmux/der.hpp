#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "actmux/calculus.hpp"
#include "actmux/ordinals.hpp"
#include "actmux/verdict.hpp"

namespace actmux {

// c codes an axiom instance: A |- A, |- 1, |- A*, or a 0 on the left.
bool axiom_pred(const Nat& c);

struct DerCaps {
  std::size_t n_max = 8;     // bound for !L_n and *R pieces when listing descriptors
  Nat t_max = 4096;          // bound on the <m,l> part of a descriptor code
  std::size_t max_calls = 2000000;
};

// Bounded evaluation of Der_p(c): True when c is an axiom or some descriptor
// t with <m,l> <= t_max yields premises that all satisfy Der_{p'} for some
// p' below p. Never False. Permutations are taken fused with the following
// rule, so every step lowers the rank.
class DerEvaluator {
 public:
  explicit DerEvaluator(DerCaps caps = {}) : caps_(caps) {}
  Truth eval(const Nat& p, const Nat& c);
  std::size_t calls() const { return calls_; }

 private:
  bool holds(const Ordinal& alpha, const Sequent& s);

  DerCaps caps_;
  std::size_t calls_ = 0;
  std::map<std::pair<Nat, Nat>, bool> memo_;
};

Truth der_eval(const Nat& p, const Nat& c, const DerCaps& caps = {});

struct DerRank {
  Ordinal statement;  // alpha*2+1 as the proposition states
  Ordinal assembled;  // alpha*2+3 as the proof assembles the formula
};
// Both are 1 for pi(0). Throws std::invalid_argument for an invalid notation.
DerRank der_rank(const Nat& p);

}  // namespace actmux
