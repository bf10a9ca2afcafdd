#include "actmux/ordinals.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>

namespace actmux {

namespace mp = boost::multiprecision;

std::string to_string(const Nat& n) { return n.str(); }

std::optional<Nat> parse_nat(std::string_view text) {
  if (text.empty()) return std::nullopt;
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return Nat(std::string(text));
}

Ordinal::Ordinal(std::vector<Nat> coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

Ordinal Ordinal::finite(const Nat& n) { return Ordinal({n}); }

Ordinal Ordinal::omega_pow(std::size_t k, const Nat& coeff) {
  std::vector<Nat> c(k + 1, Nat(0));
  c[k] = coeff;
  return Ordinal(std::move(c));
}

void Ordinal::canonicalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Ordinal Ordinal::succ() const {
  auto c = coeffs_;
  if (c.empty()) c.push_back(0);
  c[0] += 1;
  return Ordinal(std::move(c));
}

std::optional<Ordinal> Ordinal::pred() const {
  if (!is_successor()) return std::nullopt;
  auto c = coeffs_;
  c[0] -= 1;
  return Ordinal(std::move(c));
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() <=> b.coeffs_.size();
  for (std::size_t k = a.coeffs_.size(); k-- > 0;) {
    if (a.coeffs_[k] < b.coeffs_[k]) return std::strong_ordering::less;
    if (a.coeffs_[k] > b.coeffs_[k]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Ordinal hessenberg_sum(const Ordinal& a, const Ordinal& b) {
  std::vector<Nat> c(std::max(a.coeffs().size(), b.coeffs().size()), Nat(0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return Ordinal(std::move(c));
}

Ordinal ordinal_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  std::size_t d = b.degree();
  std::vector<Nat> c = b.coeffs();
  for (std::size_t k = d + 1; k < a.coeffs().size(); ++k) c.push_back(a.coeffs()[k]);
  if (d < a.coeffs().size()) c[d] += a.coeffs()[d];
  return Ordinal(std::move(c));
}

Ordinal times_omega(const Ordinal& a) {
  if (a.is_zero()) return a;
  return Ordinal::omega_pow(a.degree() + 1, a.coeffs().back());
}

Ordinal times_nat(const Ordinal& a, const Nat& k) {
  if (a.is_zero() || k == 0) return Ordinal();
  auto c = a.coeffs();
  c.back() *= k;
  return Ordinal(std::move(c));
}

std::optional<Ordinal> omega_power_sum(const std::vector<std::size_t>& exponents) {
  for (std::size_t j = 1; j < exponents.size(); ++j)
    if (exponents[j] > exponents[j - 1]) return std::nullopt;
  std::vector<Nat> c;
  for (std::size_t h : exponents) {
    if (c.size() <= h) c.resize(h + 1, Nat(0));
    c[h] += 1;
  }
  return Ordinal(std::move(c));
}

std::vector<std::size_t> omega_exponents(const Ordinal& a) {
  std::vector<std::size_t> out;
  for (std::size_t k = a.coeffs().size(); k-- > 0;)
    for (Nat j = 0; j < a.coeffs()[k]; ++j) out.push_back(k);
  return out;
}

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (std::size_t k = a.coeffs().size(); k-- > 0;) {
    const Nat& g = a.coeffs()[k];
    if (g == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += g.str();
      continue;
    }
    out += "w";
    if (k > 1) out += "^" + std::to_string(k);
    if (g != 1) out += "*" + g.str();
  }
  return out;
}

namespace {

struct OrdParser {
  std::string_view s;
  std::size_t i = 0;
  std::string err;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  std::optional<Nat> number() {
    ws();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) {
      err = "expected number at offset " + std::to_string(i);
      return std::nullopt;
    }
    Nat n(std::string(s.substr(i, j - i)));
    i = j;
    return n;
  }
  std::optional<Ordinal> term() {
    ws();
    if (i < s.size() && (s[i] == 'w' || s[i] == 'W')) {
      ++i;
      std::size_t e = 1;
      Nat g = 1;
      ws();
      if (i < s.size() && s[i] == '^') {
        ++i;
        auto n = number();
        if (!n) return std::nullopt;
        if (*n > 4096) {
          err = "exponent too large";
          return std::nullopt;
        }
        e = static_cast<std::size_t>(*n);
        ws();
      }
      if (i < s.size() && s[i] == '*') {
        ++i;
        auto n = number();
        if (!n) return std::nullopt;
        g = *n;
      }
      return Ordinal::omega_pow(e, g);
    }
    auto n = number();
    if (!n) return std::nullopt;
    return Ordinal::finite(*n);
  }
};

}  // namespace

std::optional<Ordinal> parse_ordinal(std::string_view text, std::string* error) {
  OrdParser p{text, 0, {}};
  Ordinal acc;
  for (;;) {
    auto t = p.term();
    if (!t) {
      if (error) *error = p.err;
      return std::nullopt;
    }
    acc = ordinal_add(acc, *t);
    p.ws();
    if (p.i == text.size()) break;
    if (text[p.i] != '+') {
      if (error) *error = "unexpected '" + std::string(1, text[p.i]) + "' at offset " + std::to_string(p.i);
      return std::nullopt;
    }
    ++p.i;
  }
  return acc;
}

const std::vector<std::uint64_t>& primes_upto_count(std::size_t count) {
  static std::mutex mu;
  static std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13};
  std::lock_guard lock(mu);
  for (std::uint64_t cand = primes.back() + 2; primes.size() < count; cand += 2) {
    bool prime = true;
    for (std::uint64_t p : primes) {
      if (p * p > cand) break;
      if (cand % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(cand);
  }
  return primes;
}

std::uint64_t nth_prime(std::size_t k) { return primes_upto_count(k + 1)[k]; }

namespace {

unsigned small_exponent(const Nat& g) {
  if (g > 1'000'000) throw std::length_error("prime-power exponent too large to materialize");
  return static_cast<unsigned>(g);
}

// Factor out primes in order; returns exponents, or nothing when other primes remain.
std::optional<std::vector<Nat>> prime_exponents(Nat code, std::size_t max_primes) {
  if (code <= 0) return std::nullopt;
  std::vector<Nat> ex;
  for (std::size_t k = 0; code != 1; ++k) {
    if (k >= max_primes) return std::nullopt;
    Nat p = nth_prime(k);
    Nat e = 0;
    while (code % p == 0) {
      code /= p;
      ++e;
    }
    ex.push_back(e);
  }
  return ex;
}

}  // namespace

Nat pi_encode(const Ordinal& a) {
  Nat code = 1;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k)
    code *= mp::pow(Nat(nth_prime(k)), small_exponent(a.coeffs()[k]));
  return code;
}

std::optional<Ordinal> pi_decode(const Nat& code) {
  auto ex = prime_exponents(code, 4096);
  if (!ex) return std::nullopt;
  return Ordinal(std::move(*ex));
}

bool pn_less(const Nat& p, const Nat& q) {
  auto a = pi_decode(p);
  auto b = pi_decode(q);
  return a && b && *a < *b;
}

namespace {

void put_gamma(std::vector<bool>& bits, const Nat& x) {
  std::size_t len = mp::msb(x) + 1;
  bits.insert(bits.end(), len - 1, false);
  for (std::size_t k = len; k-- > 0;) bits.push_back(mp::bit_test(x, static_cast<unsigned>(k)));
}

Nat from_bits(const std::vector<bool>& bits) {
  std::string hex = "0x";
  std::size_t pad = (4 - bits.size() % 4) % 4;
  std::vector<bool> b(pad, false);
  b.insert(b.end(), bits.begin(), bits.end());
  for (std::size_t k = 0; k < b.size(); k += 4) {
    int v = (b[k] << 3) | (b[k + 1] << 2) | (b[k + 2] << 1) | b[k + 3];
    hex += "0123456789abcdef"[v];
  }
  return Nat(hex);
}

struct BitReader {
  const Nat& x;
  long long pos;  // index of the next bit to read, counting down
  std::optional<bool> next() {
    if (pos < 0) return std::nullopt;
    return mp::bit_test(x, static_cast<unsigned>(pos--));
  }
  std::optional<Nat> gamma() {
    std::size_t zeros = 0;
    for (;;) {
      auto b = next();
      if (!b) return std::nullopt;
      if (*b) break;
      ++zeros;
    }
    Nat v = 1;
    for (std::size_t k = 0; k < zeros; ++k) {
      auto b = next();
      if (!b) return std::nullopt;
      v = (v << 1) | Nat(*b ? 1 : 0);
    }
    return v;
  }
};

}  // namespace

Nat tuple_encode(const std::vector<Nat>& entries) {
  std::vector<bool> bits{true};
  put_gamma(bits, Nat(entries.size()) + 1);
  for (const Nat& e : entries) put_gamma(bits, e + 1);
  return from_bits(bits);
}

std::optional<std::vector<Nat>> tuple_decode(const Nat& code) {
  if (code <= 0) return std::nullopt;
  BitReader r{code, static_cast<long long>(mp::msb(code))};
  r.next();  // leading marker bit
  auto n = r.gamma();
  if (!n) return std::nullopt;
  Nat count = *n - 1;
  // each entry takes at least one bit
  if (count > Nat(r.pos + 1)) return std::nullopt;
  std::vector<Nat> out;
  for (Nat k = 0; k < count; ++k) {
    auto v = r.gamma();
    if (!v) return std::nullopt;
    out.push_back(*v - 1);
  }
  if (r.pos != -1) return std::nullopt;
  return out;
}

Nat prime_tuple_encode(const std::vector<Nat>& entries) {
  Nat code = mp::pow(Nat(2), small_exponent(Nat(entries.size())));
  for (std::size_t k = 0; k < entries.size(); ++k)
    code *= mp::pow(Nat(nth_prime(k + 1)), small_exponent(entries[k]));
  return code;
}

std::optional<std::vector<Nat>> prime_tuple_decode(const Nat& code) {
  auto ex = prime_exponents(code, 4096);
  if (!ex) return std::nullopt;
  if (ex->empty()) ex->push_back(0);
  Nat n = (*ex)[0];
  if (Nat(ex->size() - 1) > n) return std::nullopt;
  std::vector<Nat> out(ex->begin() + 1, ex->end());
  out.resize(static_cast<std::size_t>(n), Nat(0));
  return out;
}

}  // namespace actmux
