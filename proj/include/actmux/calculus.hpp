#pragma once

#include "actmux/formula.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace actmux {

// Fused permutation of a generalized rule: the nabla formula at 1-based
// position pos of the conclusion moves by dist places before the base rule
// is applied upwards.
struct Perm {
  std::size_t pos = 0;
  bool right = false;
  std::size_t dist = 0;
  friend bool operator==(const Perm&, const Perm&) = default;
};

// m = 0 addresses the succedent, m >= 1 the m-th antecedent formula.
// Meaning of l: |Pi| for \L and /L, |Gamma| for .R, n for !L_n, i-1 for &L_i
// and |R_i, the piece-length code for *R_n, and for a nabla formula on the
// left 0 = @L, 2d-1 = move right by d, 2d = move left by d. Otherwise 0.
struct RuleDescriptor {
  std::size_t m = 0;
  Nat l = 0;
  std::optional<Perm> perm;
  friend bool operator==(const RuleDescriptor&, const RuleDescriptor&) = default;
};

// 2^m * 3^l, times 5^pos * 7^(2*dist + right) for a fused permutation.
Nat descriptor_code(const RuleDescriptor& t);
std::optional<RuleDescriptor> descriptor_decode(const Nat& t);
// The <m,l> part alone.
Nat base_code(const RuleDescriptor& t);

// Piece lengths of *R_n packed as bits: a leading 1, then per piece len ones and a zero.
Nat star_pieces_encode(const std::vector<std::size_t>& lens);
std::optional<std::vector<std::size_t>> star_pieces_decode(const Nat& l);

struct RuleApp {
  std::string name;
  std::vector<Sequent> premises;
  // origin[k][j]: antecedent index in the conclusion that premise k's j-th
  // formula descends from, or -1 for formulas introduced by the rule.
  std::vector<std::vector<long>> origin;
  long principal = -1;  // conclusion antecedent index, -1 for the succedent
  bool permutation = false;  // a bare @P step
};

std::optional<RuleApp> apply_rule(const Sequent& s, const RuleDescriptor& t);
std::optional<std::vector<Sequent>> premises(const Sequent& s, const RuleDescriptor& t);
// Total on naturals: 0 for invalid c or t; the code of 1 |- 1 past the arity.
Nat premise_code(const Nat& c, const Nat& t, const Nat& k);

bool is_axiom(const Sequent& s);
std::string axiom_name(const Sequent& s);
// Invalid descriptors count as false.
bool rank_decreases(const Sequent& s, const RuleDescriptor& t);

struct EnumOptions {
  std::size_t n_max = 8;     // bound for !L_n and the number of *R pieces
  bool bare_perms = true;    // include bare @P moves
  bool generalized = false;  // also fuse one @P move into every other rule
};
std::vector<RuleDescriptor> enumerate_descriptors(const Sequent& s, const EnumOptions& opt);

// ---- derivation trees ------------------------------------------------------

enum class NodeKind { Axiom, Rule, Hyp };

struct Derivation;
using Proof = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent seq;
  NodeKind kind = NodeKind::Axiom;
  RuleDescriptor rule;
  std::string name;
  std::vector<Proof> kids;
};

Proof make_axiom(const Sequent& s);
Proof make_hyp(const Sequent& s);
// Throws std::invalid_argument when the descriptor does not apply to s.
Proof make_rule(const Sequent& s, const RuleDescriptor& t, std::vector<Proof> kids);

struct CheckResult {
  bool ok = true;
  std::vector<std::size_t> path;  // child indices from the root
  std::string message;
};
CheckResult check_derivation(const Proof& d, bool allow_hypotheses);

struct BasicViolation {
  std::vector<std::size_t> path;
  int condition;
};
struct BasicnessReport {
  bool ok = true;
  std::vector<BasicViolation> violations;
};
BasicnessReport check_basic(const Proof& d);

std::vector<Sequent> hypotheses(const Proof& d);
std::size_t proof_size(const Proof& d);

// Root Pi |- p becomes Gamma, Pi, Delta |- C with the single hypothesis
// Gamma, p, Delta |- C.
Proof aug(const Proof& d, const std::vector<Formula>& gamma, const std::vector<Formula>& delta, Formula c);
Proof graft(const Proof& t, const Proof& d);
// Replaces the antecedent occurrence at 0-based pos by A & other (or other & A
// when other_left), inserting &L exactly where the occurrence is principal.
Proof conj_widen(const Proof& d, std::size_t pos, Formula other, bool other_left = false);
// Replaces composite identity axioms (except A* |- A*) by atomic ones.
Proof eta_expand(const Proof& d);
// Splits every generalized node into the base rule and a bare @P step.
Proof desugar_generalized(const Proof& d);
Proof basicize(const Proof& d);

std::string write_proof(const Proof& d);
Proof read_proof(std::string_view text);

}  // namespace actmux
