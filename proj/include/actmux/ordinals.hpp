#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace actmux {

using Nat = boost::multiprecision::cpp_int;

std::string to_string(const Nat& n);
std::optional<Nat> parse_nat(std::string_view text);

// Ordinal below w^w in Cantor normal form: coeffs[k] is the coefficient of w^k.
// Canonical form has no trailing zero coefficient.
class Ordinal {
 public:
  Ordinal() = default;
  explicit Ordinal(std::vector<Nat> coeffs);
  static Ordinal finite(const Nat& n);
  static Ordinal omega_pow(std::size_t k, const Nat& coeff = 1);

  const std::vector<Nat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_successor() const { return !coeffs_.empty() && coeffs_[0] != 0; }
  bool is_limit() const { return !coeffs_.empty() && coeffs_[0] == 0; }
  // Largest exponent with nonzero coefficient; 0 for the zero ordinal.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  Nat coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Nat(0); }

  Ordinal succ() const;
  std::optional<Ordinal> pred() const;  // only for successors

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b) = default;

 private:
  void canonicalize();
  std::vector<Nat> coeffs_;
};

Ordinal hessenberg_sum(const Ordinal& a, const Ordinal& b);
// Ordinary (non-commutative) ordinal addition.
Ordinal ordinal_add(const Ordinal& a, const Ordinal& b);
// a * w: keeps only the leading term and lifts it one exponent.
Ordinal times_omega(const Ordinal& a);
// a * k for a natural k > 0: multiplies the leading coefficient only.
Ordinal times_nat(const Ordinal& a, const Nat& k);
// w^{h_1} + ... + w^{h_M}; exponents must be weakly decreasing.
std::optional<Ordinal> omega_power_sum(const std::vector<std::size_t>& exponents);
// Inverse of omega_power_sum on nonzero ordinals: the weakly decreasing exponent list.
std::vector<std::size_t> omega_exponents(const Ordinal& a);

std::string to_string(const Ordinal& a);
std::optional<Ordinal> parse_ordinal(std::string_view text, std::string* error = nullptr);

// Polynomial notation: product of p_k^{g_k} over primes 2,3,5,... (1 codes zero).
Nat pi_encode(const Ordinal& a);
std::optional<Ordinal> pi_decode(const Nat& code);
// The ordering on notations, induced by the ordinals they denote.
bool pn_less(const Nat& p, const Nat& q);

const std::vector<std::uint64_t>& primes_upto_count(std::size_t count);
std::uint64_t nth_prime(std::size_t k);  // nth_prime(0) == 2

// General tuple codec. Codes are self-delimiting binary strings read as
// naturals: a leading 1 bit, then the Elias gamma code of n+1, then the gamma
// code of each entry+1. Every tuple has exactly one code and decoding is total
// on codes (other naturals decode to nothing).
Nat tuple_encode(const std::vector<Nat>& entries);
std::optional<std::vector<Nat>> tuple_decode(const Nat& code);
inline Nat pair_encode(const Nat& a, const Nat& b) { return tuple_encode({a, b}); }

// Length-prefixed prime-power coding <n, i_1, ..., i_n> -> 2^n * 3^{i_1} * ...
// Exact, but only usable for tiny entries; kept for reference and for tests.
Nat prime_tuple_encode(const std::vector<Nat>& entries);
std::optional<std::vector<Nat>> prime_tuple_decode(const Nat& code);

}  // namespace actmux
