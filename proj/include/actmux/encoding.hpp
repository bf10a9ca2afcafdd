#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "actmux/computability.hpp"
#include "actmux/formula.hpp"
#include "actmux/rewriting.hpp"

namespace actmux {

// Reserved primitive formulas of the construction.
struct Atoms {
  Formula a_L, a_R, a_1, a_2, a_Sigma, a_Pi, eps, okay, go, wait, fail, fin;
};
const Atoms& atoms();
// Names of the reserved atoms, for clash checks against user alphabets.
const std::vector<std::string>& reserved_atom_names();

// Primitive formula standing for a rewriting symbol. Primed helpers "~s"
// become "s_prime"; other symbols must already be valid primitive names.
Formula symbol_atom(const Symbol& s);

Formula fm(const SRule& r);
// go \ (conj_1 & ... & conj_n), conjuncts in rule order; throws on an empty system.
Formula rule_formula(const SRS& sr);

struct FMap {
  Formula on_a1, on_a2;
};
FMap f_zero();   // a_1 -> okay, a_2 -> go
FMap f_sigma();  // a_1 -> fail, a_2 -> a_Pi . eps
FMap f_pi();     // a_1 -> okay, a_2 -> a_Sigma . eps

// go\(a_R.(go.(!rule.(go\(fin\((a_1\f(a_1)) & (a_2\f(a_2))))))))
Formula technical_formula(Formula rule, const FMap& f);
Formula technical_formula(const SRS& sr, const FMap& f);

// The two rewriting systems of the construction are not materialized; their
// rule formulas are the placeholders go\sr0 and go\sr1.
Formula rule_placeholder(int which);

Formula okay_formula();  // okay\okay
enum class EnergyKind { Sigma, Pi, Base, Level, HLevel, Killer };
Formula energy_formula(EnergyKind kind, std::size_t k = 0);
inline Formula energy_level(std::size_t k) { return energy_formula(EnergyKind::Level, k); }
inline Formula energy_hlevel(std::size_t k) { return energy_formula(EnergyKind::HLevel, k); }

// Abbreviations used in traces: OKAY, Energy, E_Sigma, E_Pi, E_k, H_k, Killer.
std::optional<std::string> energy_abbrev(Formula f);

enum class Variant { Standard, Minus };
const char* to_string(Variant v);

// Exponents h_1 >= ... >= h_M with w^{h_1} + ... + w^{h_M} = alpha + 1, or
// nothing when inp does not decode (then M = 0).
std::optional<std::vector<std::size_t>> energy_exponents(const Nat& inp);

// a_L, a_1^{count}, x, eps, E_{h_M}, ..., E_{h_1} [, Killer] |- a_L.okay
RunSequent seq_with(const Nat& count, Formula x, const std::vector<std::size_t>& hs, Variant v);
RunSequent seq_encode(const Nat& inp, Variant v);
// Antecedent length of seq_encode, counting the a_1 run in full.
Nat seq_length(const RunSequent& s);
// Expands the runs; throws std::length_error above the cap.
Sequent expand(const RunSequent& s, const Nat& cap);

// Words given as runs of symbols, e.g. a_1^{inp} a_2.
using RunWord = std::vector<std::pair<Symbol, Nat>>;
std::string print_run_word(const RunWord& w);

// Host versions of the two functions the construction's rewriting systems implement.
// f0: nothing means the function diverges on a_1^{inp}.
std::optional<RunWord> f0_direct(const Nat& inp);

struct F1Result {
  RunWord out;
  bool budget_hit = false;  // y exceeded the cap, the output is not determined
};
F1Result f1_direct(const RunWord& w, const Nat& halt_cap);
F1Result f1_direct(const Nat& inp1, const Nat& inp2, const Nat& halt_cap);

// <c', y, <n_{i+1}, ..., n_{i+j}>> as read by f1.
Nat encode_choice(const Nat& triple, const Nat& y, const std::vector<Nat>& witnesses);

}  // namespace actmux
