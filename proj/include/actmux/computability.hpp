#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "actmux/ordinals.hpp"
#include "actmux/rewriting.hpp"
#include "actmux/verdict.hpp"

namespace actmux {

// ---- quantifier-free arithmetic ----------------------------------------------

// Prefix token tags of the qf numbering. Var is followed by the variable index (>= 1).
enum class QfTag : unsigned { Zero = 0, One = 1, Var = 2, Add = 3, Mul = 4, Eq = 5, Lt = 6, Not = 7, And = 8, Or = 9 };

struct QfNode {
  QfTag tag = QfTag::Zero;
  std::size_t var = 0;
  std::vector<QfNode> kids;
};

bool qf_is_term(const QfNode& n);
// Largest variable index used, 0 when closed.
std::size_t qf_max_var(const QfNode& n);

// Syntax: terms over 0 1 numerals xK + * and parentheses; atoms t=t, t<t;
// connectives ! & | (tightest first). Numerals n >= 2 expand to 1+...+1.
QfNode parse_qf(std::string_view text);
std::string print_qf(const QfNode& n);

// The same number works for every arity i that covers the variables used.
Nat qf_number(const QfNode& n);
std::optional<QfNode> qf_decode(const Nat& c);

// Throws std::invalid_argument for an invalid number or an arity mismatch.
bool qf_eval(const Nat& c, std::size_t i, const std::vector<Nat>& a);
bool qf_eval(const QfNode& n, const std::vector<Nat>& a);

// ---- machines ------------------------------------------------------------------

// Even indices 2k name entry k of a registry of host-described machines;
// odd indices 2k+1 name the Goedel-coded machine tuple_decode(k) =
// [states, symbols, q, a, r, b, d, ...] with q0 = 0, accept = 1, blank = 0,
// input n given as n copies of symbol 1 and d in {0:L, 1:R, 2:N}.
// Anything that does not decode is a machine that never halts.
struct RegistryMachine {
  std::string name;
  // Steps needed to halt on n, or nothing when it diverges.
  std::function<std::optional<std::size_t>(const Nat&)> steps;
  // When set, W_e is exactly `members`.
  bool finite_known = false;
  std::vector<Nat> members;
};

// Built-in entries: 0 diverges, 1 halts at once, 2 halts on even inputs,
// 3 has W = {<pi(0), 1, c_eq>} with c_eq the number of x1=x2.
std::size_t registry_size();
const RegistryMachine& registry_entry(std::size_t k);
// Appends an entry and returns its machine index.
Nat register_machine(RegistryMachine m);
Nat register_finite_machine(std::string name, std::vector<Nat> members);

struct CodedTransition {
  std::size_t q, a, r, b, d;
};
Nat encode_machine(std::size_t states, std::size_t symbols, const std::vector<CodedTransition>& delta);
std::optional<TuringMachine> decode_machine(const Nat& e);

bool halt(const Nat& n, const Nat& e, const Nat& y);
// {n in candidates : halt(n, e, Y)} where candidates are 0..N plus the listed
// members of a finite registry machine.
std::set<Nat> enumerate_we(const Nat& e, const Nat& Y, const Nat& N);
// True when enumerate_we(e, Y, .) is known to contain all of W_e.
bool we_complete(const Nat& e, const Nat& Y);

// ---- computable infinitary formulas -------------------------------------------

enum class Quant : unsigned { Sigma = 1, Pi = 2 };
Quant dual(Quant x);
const char* to_string(Quant x);

struct InfIndex {
  Quant x = Quant::Sigma;
  Nat p = 1;  // polynomial notation of the rank
  Nat i = 0;  // number of free variables
  Nat e = 0;  // machine index, or qf number when p = pi(0)
  Nat code() const;
  friend bool operator==(const InfIndex&, const InfIndex&) = default;
};
std::optional<InfIndex> decode_index(const Nat& code);
// Literal form Sigma@w^1:i=1:e=7 (the ordinal is in the usual text syntax).
InfIndex parse_index(std::string_view text);
std::string print_index(const InfIndex& idx);

struct SatInput {
  InfIndex idx;
  std::vector<Nat> args;
};
// <<X, p, i, e>, <n_1, ..., n_i>>; throws on an arity mismatch.
Nat sub(const InfIndex& idx, const std::vector<Nat>& a);
Nat encode_input(const SatInput& in);
std::optional<SatInput> decode_input(const Nat& inp);

// Members of W_e read as triples <pi(beta), k, e'>.
struct Triple {
  Ordinal beta;
  std::size_t k = 0;
  Nat e;
};
std::optional<Triple> decode_triple(const Nat& c);
Nat encode_triple(const Ordinal& beta, std::size_t k, const Nat& e);

struct SatBudget {
  Nat halt_bound = 256;    // Y
  Nat witness_bound = 64;  // N
};

struct SatResult {
  Truth value = Truth::Unknown;
  std::string diagnostic;
};

SatResult bounded_sat(const SatInput& in, const SatBudget& budget);

}  // namespace actmux
