#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "actmux/computability.hpp"
#include "actmux/encoding.hpp"
#include "actmux/formula.hpp"
#include "actmux/rewriting.hpp"
#include "actmux/verdict.hpp"

namespace actmux {

// p\A or (p\B)&(q\C) with p, q primitive.
bool is_locked(Formula f);
bool is_locked(const std::vector<Formula>& fs);

// The fixed succedent a_L.okay.
Formula goal();

// Antecedent given as runs with one distinguished occurrence, the focus.
// The focus run always has count 1. The succedent is goal().
struct StructuredSequent {
  std::vector<Run> ant;
  std::size_t focus = 0;

  Formula focus_formula() const { return ant.at(focus).f; }
  RunSequent runs() const;
  // Throws std::length_error when the expansion is longer than cap.
  Sequent sequent(const Nat& cap = 100000) const;
};

// Merges adjacent runs of the same formula and drops empty runs.
std::vector<Run> normalize_runs(std::vector<Run> ant);
std::vector<Run> to_runs(const std::vector<Formula>& ant);
// Focus on the first non-primitive formula; nothing when all are primitive.
std::optional<StructuredSequent> refocus(const std::vector<Run>& ant);
StructuredSequent focused(const std::vector<Formula>& ant, std::size_t focus);

// Gamma, A, Psi with Gamma primitive and Psi locked.
bool in_form_one(const StructuredSequent& s);
// Theta_1, A, Theta_2 where Theta_1 Theta_2 = Gamma, b\E, Psi' with Gamma
// primitive, b\E, Psi' locked. The side condition "b not in Gamma" is
// reported separately.
bool in_form_two(const StructuredSequent& s, bool* side_condition_ok = nullptr);

struct BtaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StepKind { Deterministic, Exists, Forall, Fail };
const char* to_string(StepKind k);

struct StepResult {
  StepKind kind = StepKind::Fail;
  std::string item;  // 1a 1b 1c 1d 1e 2a 2b
  std::vector<std::vector<Run>> branches;
  std::vector<std::string> branch_labels;
  // The family of branches is infinite and was cut at n_max.
  bool truncated = false;
  std::string note;
};

// One bottom-top step with the focus as the principal formula. Exists and
// Forall over n (for ! and *) list n = 0..n_max. Throws BtaError when no item
// applies or a side condition is violated.
StepResult bta_step(const StructuredSequent& s, std::size_t n_max = 8, std::size_t max_placements = 20000);

// Verdict of the conclusion from the verdicts of the listed branches.
Verdict combine(const StepResult& r, const std::vector<Verdict>& branch_verdicts);

// ---- helper lemmas -----------------------------------------------------------

// a_L, okay, Psi with every member of Psi of the form OKAY & (p\B).
bool lemma10_applies(const std::vector<Run>& ant);

// Gamma, go, ([go]->p)^c, Psi  ==>  Gamma, p^c, go, Psi. Nothing when the
// shape does not match (Gamma primitive, Psi locked).
std::optional<std::vector<Run>> lemma11(const std::vector<Run>& ant);

// Parts of go\(a_R.(go.(!rule.(go\(fin\((a_1\f1)&(a_2\f2))))))).
struct TechnicalParts {
  Formula rule;
  FMap f;
};
std::optional<TechnicalParts> match_technical(Formula f);

struct SrContinuation {
  RunWord w;          // W, with the leading a_L
  Symbol last;        // a_1 or a_2
  std::vector<Run> ant;  // W, f(last), Psi
};

// U, go, Technical(.,f), Psi with the rewriting system replaced by a host
// function on U minus its leading a_L. Nothing means the function diverges
// or its output does not end in a_1 or a_2. Throws BtaError on a shape mismatch.
using HostFunction = std::function<std::optional<RunWord>(const RunWord&)>;
std::optional<SrContinuation> sr_segment(const StructuredSequent& s, const HostFunction& f);

// The same with the literal rewriting system: all W with U a_R =>* W a_i fin.
struct SrLiteralResult {
  std::vector<SrContinuation> continuations;
  bool complete = true;  // the reachable set was explored exhaustively
};
SrLiteralResult sr_segment_literal(const StructuredSequent& s, const SRS& sr, std::size_t max_words = 20000);

// Derivability of Gamma, Psi |- a_L.okay for primitive Gamma and locked Psi
// whose members are either identity conjunctions like OKAY or locked on an
// atom different from the last one of Gamma.
Verdict close_primitive(const std::vector<Run>& ant, std::string* why = nullptr);

// ---- traces --------------------------------------------------------------------

struct TraceLine {
  std::size_t depth = 0;
  std::string text;
  std::string label;
};
using BTATrace = std::vector<TraceLine>;
std::string format_trace(const BTATrace& t);

// Abbreviations used when printing traces.
std::optional<std::string> trace_abbrev(Formula f);
std::string print_runs(const std::vector<Run>& ant);
// Focus in brackets, expanded one level.
std::string print_structured(const StructuredSequent& s);

// The four-step chain that turns a_L, a_1^inp, a_X, eps, E_0, Psi into
// a_L, a_1^inp, E_X, Psi.
BTATrace example5_trace(const Nat& inp, Quant x = Quant::Pi, const std::vector<std::size_t>& tail = {1, 2});

// ---- the decision procedure -----------------------------------------------------

struct DecideBudget {
  std::size_t n_max = 8;       // copies tried for ! and * when nothing better is known
  Nat halt_bound = 256;        // Y
  Nat witness_bound = 64;      // N
  std::size_t max_nodes = 200000;
  std::size_t max_trace = 4000;
  std::size_t max_witness_tuples = 1000000;
};

struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  BTATrace trace;
  std::size_t nodes = 0;
};

// a_L, a_1^inp, a_X, eps, Psi |- a_L.okay where Psi lists E_k (standard) or
// H_k and a final Killer (minus).
Decision decide_state(const Nat& inp, Quant x, const std::vector<Run>& psi, Variant v, const DecideBudget& b,
                      bool trace = false);
Decision decide_encoded(const Nat& inp, Variant v, const DecideBudget& b, bool trace = false);
// Accepts a run-length sequent of the encoded shape; throws BtaError otherwise.
Decision decide_sequent(const RunSequent& s, const DecideBudget& b, bool trace = false);

}  // namespace actmux
