#pragma once

#include "actmux/ordinals.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace actmux {

enum class Op : unsigned char { Prim, Zero, One, Under, Over, Prod, Meet, Join, Bang, Star, Nabla };

// Hash-consed formula node. Structurally equal formulas share one node, so
// pointer equality is syntactic equality. Nodes live for the whole process.
struct Node {
  Op op;
  std::string name;  // Prim only
  const Node* a;     // left operand, or the operand of a unary connective
  const Node* b;     // right operand
  std::size_t hash;
  std::size_t size;  // number of nodes
  std::size_t id;    // creation order, stable within a run
  Ordinal rank;
  bool has_star;
  bool star_in_bang;
};

using Formula = const Node*;

Formula prim(std::string_view name);
Formula zero();
Formula one();
Formula under(Formula left, Formula right);  // left \ right
Formula over(Formula left, Formula right);   // left / right
Formula prod(Formula left, Formula right);
Formula meet(Formula left, Formula right);
Formula join(Formula left, Formula right);
Formula bang(Formula f);
Formula star(Formula f);
Formula nabla(Formula f);
Formula make(Op op, Formula a, Formula b);

// Right-nested folds: prods({a,b,c}) = a.(b.c); meets likewise. Nonempty input.
Formula prods(const std::vector<Formula>& fs);
Formula meets(const std::vector<Formula>& fs);
// c_m \ ... \ c_1 \ body with the given left arguments in order c_m first.
Formula unders(const std::vector<Formula>& lefts, Formula body);

bool is_prim(Formula f);
bool is_binary(Op op);
bool is_unary(Op op);
// Number of connective nodes (constants and primitives count 0).
std::size_t connectives(Formula f);

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct Sequent {
  std::vector<Formula> ant;
  Formula suc = nullptr;
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const;
};

// Antecedent given as runs of repeated formulas, e.g. a_1^{412}.
struct Run {
  Formula f;
  Nat count;
  friend bool operator==(const Run&, const Run&) = default;
};
struct RunSequent {
  std::vector<Run> ant;
  Formula suc = nullptr;
};

// Deterministic total order (by printed form) for reproducible output.
bool sequent_less(const Sequent& a, const Sequent& b);

Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);
std::string print(Formula f);
std::string print(const Sequent& s);
// Accepts the run-length suffix ^{n} after antecedent formulas.
RunSequent parse_run_sequent(std::string_view text);
std::string print(const RunSequent& s);

// Abbreviation table for printing: formulas found here print as their name.
using Abbrev = std::function<std::optional<std::string>(Formula)>;
std::string print_abbrev(Formula f, const Abbrev& ab, bool expand_top = false);

Ordinal rank(Formula f);
Ordinal rank(const Sequent& s);
std::size_t star_bang_depth(Formula f);
bool star_inside_bang(Formula f);
bool in_fragment(const Sequent& s, std::size_t k, bool minus);

enum class SugarKind { Query, Arrow, Okay };
Formula sugar(SugarKind kind, Formula b = nullptr, Formula a = nullptr);
inline Formula query(Formula b, Formula a) { return sugar(SugarKind::Query, b, a); }
inline Formula arrow(Formula b, Formula a) { return sugar(SugarKind::Arrow, b, a); }

// Goedel numbering of sequents. Tokens (prefix order) are packed with the
// general tuple codec; primitive names are numbered bijectively over the
// name alphabet. Code 0 never denotes a sequent.
Nat goedel_encode(const Sequent& s);
std::optional<Sequent> goedel_decode(const Nat& code);
Nat prim_name_number(std::string_view name);
std::optional<std::string> prim_name_from_number(const Nat& n);

}  // namespace actmux
