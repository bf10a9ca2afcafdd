#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace actmux {

using Symbol = std::string;
using Word = std::vector<Symbol>;

struct SRule {
  Word lhs, rhs;
};

struct SRS {
  std::set<Symbol> alphabet;
  std::vector<SRule> rules;
};

std::string join_word(const Word& w);
// Whitespace separated symbols; a word without whitespace is split per character.
Word split_word(std::string_view text);

std::set<Word> one_step(const SRS& sr, const Word& w);

enum class ReachStatus { Found, Exhausted, BudgetHit };
const char* to_string(ReachStatus s);

struct ReachResult {
  ReachStatus status = ReachStatus::Exhausted;
  Word found;
  std::vector<Word> trace;  // from the start word to `found`
  std::size_t explored = 0;
};

// Breadth-first; successors of a word are visited in lexicographic order.
ReachResult reach(const SRS& sr, const Word& start, const std::function<bool(const Word&)>& target,
                  std::size_t budget);

struct Closure {
  bool complete = false;     // false when the budget stopped the exploration
  std::vector<Word> words;   // in breadth-first order
};
Closure closure(const SRS& sr, const Word& start, std::size_t budget);

// ---- Turing machines -------------------------------------------------------

struct Transition {
  Symbol q, a, r, b;
  char dir;  // 'L', 'R' or 'N'
};

struct TuringMachine {
  std::vector<Symbol> states, tape, input, output;
  Symbol blank, q0, qa;
  std::vector<Transition> delta;
};

// Empty when well formed.
std::string validate(const TuringMachine& tm);

TuringMachine parse_tm(std::string_view text);
std::string print_tm(const TuringMachine& tm);
SRS parse_sr(std::string_view text);
std::string print_sr(const SRS& sr);

// Reserved prefix for the primed boundary helpers.
Symbol primed(const Symbol& s);

struct CompileResult {
  SRS sr;
  std::vector<std::string> warnings;  // transitions the rule schemas do not cover
};
// Throws std::invalid_argument when a boundary symbol clashes with the machine.
CompileResult compile_tm(const TuringMachine& tm, const Symbol& a_left = "a_L", const Symbol& a_right = "a_R",
                         const Symbol& final_symbol = "♦");

enum class TmStatus { Accepted, Stuck, BudgetHit };

struct TmRun {
  TmStatus status = TmStatus::Stuck;
  std::optional<Word> output;  // set when the accepting configuration is q_a w with w over the output alphabet
  std::size_t steps = 0;
};

// Head starts on the last input symbol; the machine is run deterministically
// (first applicable transition in file order).
TmRun run_tm(const TuringMachine& tm, const Word& input, std::size_t max_steps);

enum class ImplVerdict { Agree, Disagree, BudgetHit };
const char* to_string(ImplVerdict v);

struct ImplReport {
  ImplVerdict verdict = ImplVerdict::BudgetHit;
  std::optional<Word> tm_output;
  std::vector<Word> sr_outputs;  // every v with a_L u a_R =>* v final
  std::string detail;
};

ImplReport implements_check(const TuringMachine& tm, const Word& u, std::size_t budget);

// Small deterministic machines used by tests and examples.
TuringMachine toy_identity();         // over {0,1}
TuringMachine toy_unary_successor();  // over {1}: 1^n -> 1^{n+1}
TuringMachine toy_eraser();           // over {0,1}: u -> empty
TuringMachine toy_append_a2();        // over {a_1}: a_1^n -> a_1^n a_2

}  // namespace actmux
