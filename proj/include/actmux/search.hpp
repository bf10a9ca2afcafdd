#pragma once

#include "actmux/calculus.hpp"
#include "actmux/verdict.hpp"

#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace actmux {

struct SearchCaps {
  std::size_t n_max = 8;          // !L_n, *R pieces and *L instances tried
  std::size_t max_nodes = 400000; // distinct sequents expanded
  bool invertible_first = true;   // commit to invertible rules before branching
  std::size_t max_class = 5000;   // nabla arrangements per sequent
};

struct SearchResult {
  Verdict verdict = Verdict::Unknown;
  Proof proof;  // set when Derivable
  std::string reason;
};

// Backward cut-free search with memoization. Permutations of nabla formulas
// are handled by trying every arrangement of the antecedent once, so bare
// permutation steps never loop. Underivable is claimed only when every rule
// was tried exhaustively; caps on !L_n, *R_n and the *L instances, or the
// node budget, turn the answer into Unknown.
class Searcher {
 public:
  explicit Searcher(SearchCaps caps = {}) : caps_(caps) {}
  SearchResult prove(const Sequent& s);
  std::size_t nodes() const { return nodes_; }

 private:
  struct Entry {
    Verdict v;
    Proof p;
  };
  Entry prove_class(const Sequent& s);
  Entry prove_fixed(const Sequent& s);
  Entry combine(const Sequent& s, const RuleDescriptor& t, const std::vector<Sequent>& prem);

  SearchCaps caps_;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  std::unordered_map<Sequent, Entry, SequentHash> memo_;
  std::unordered_map<Sequent, Entry, SequentHash> fixed_;
};

SearchResult bounded_search(const Sequent& s, const SearchCaps& caps = {});

// All orderings of the antecedent reachable by moving nabla formulas; the
// input ordering comes first. Empty when the class exceeds the limit.
std::vector<Sequent> nabla_class(const Sequent& s, std::size_t limit);
// Chain of bare @P steps turning `from` into `to`, ending in `top`.
Proof permutation_chain(const Sequent& from, const Sequent& to, const Proof& top);

// Least fixpoint of the immediate derivability operator restricted to the universe.
std::vector<Sequent> saturate(const std::vector<Sequent>& universe, std::size_t n_max = 8);
// Stage-by-stage sizes of the same iteration.
std::vector<std::size_t> saturation_stages(const std::vector<Sequent>& universe, std::size_t n_max = 8);

}  // namespace actmux
