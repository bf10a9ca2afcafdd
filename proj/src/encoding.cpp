#include "actmux/encoding.hpp"

#include <stdexcept>

namespace actmux {

const Atoms& atoms() {
  static const Atoms a{prim("a_L"),  prim("a_R"),  prim("a_1"), prim("a_2"),  prim("a_Sigma"), prim("a_Pi"),
                       prim("eps"),  prim("okay"), prim("go"),  prim("wait"), prim("fail"),    prim("fin")};
  return a;
}

const std::vector<std::string>& reserved_atom_names() {
  static const std::vector<std::string> names{"a_L", "a_R", "a_1", "a_2", "a_Sigma", "a_Pi",
                                              "eps", "okay", "go",  "wait", "fail",  "fin"};
  return names;
}

Formula symbol_atom(const Symbol& s) {
  if (!s.empty() && s[0] == '~') return prim(s.substr(1) + "_prime");
  return prim(s);
}

Formula fm(const SRule& r) {
  if (r.lhs.empty() || r.rhs.empty()) throw std::invalid_argument("rule sides must be nonempty");
  std::vector<Formula> lefts;
  for (auto it = r.lhs.rbegin(); it != r.lhs.rend(); ++it) lefts.push_back(symbol_atom(*it));
  std::vector<Formula> body;
  for (const auto& b : r.rhs) body.push_back(symbol_atom(b));
  body.push_back(nabla(atoms().wait));
  return unders(lefts, prods(body));
}

Formula rule_formula(const SRS& sr) {
  if (sr.rules.empty()) throw std::invalid_argument("empty rewriting system");
  const Atoms& A = atoms();
  std::vector<Formula> conj;
  for (const auto& r : sr.rules) conj.push_back(prod(nabla(fm(r)), under(A.wait, A.go)));
  return under(A.go, meets(conj));
}

FMap f_zero() { return {atoms().okay, atoms().go}; }
FMap f_sigma() { return {atoms().fail, prod(atoms().a_Pi, atoms().eps)}; }
FMap f_pi() { return {atoms().okay, prod(atoms().a_Sigma, atoms().eps)}; }

Formula technical_formula(Formula rule, const FMap& f) {
  const Atoms& A = atoms();
  Formula branches = meet(under(A.a_1, f.on_a1), under(A.a_2, f.on_a2));
  Formula tail = under(A.go, under(A.fin, branches));
  return under(A.go, prods({A.a_R, A.go, bang(rule), tail}));
}

Formula technical_formula(const SRS& sr, const FMap& f) { return technical_formula(rule_formula(sr), f); }

Formula rule_placeholder(int which) { return under(atoms().go, prim(which == 0 ? "sr0" : "sr1")); }

Formula okay_formula() { return under(atoms().okay, atoms().okay); }

namespace {

Formula e_sigma() {
  static const Formula f = [] {
    const Atoms& A = atoms();
    Formula choose = meet(okay_formula(), query(A.go, bang(arrow(A.go, A.a_2))));
    return prods({A.go, technical_formula(rule_placeholder(0), f_zero()), choose,
                  meet(okay_formula(), technical_formula(rule_placeholder(1), f_sigma()))});
  }();
  return f;
}

Formula e_pi() {
  static const Formula f = [] {
    const Atoms& A = atoms();
    Formula all = meet(okay_formula(), arrow(A.go, star(A.a_2)));
    return prods({A.go, technical_formula(rule_placeholder(0), f_zero()), all,
                  meet(okay_formula(), technical_formula(rule_placeholder(1), f_pi()))});
  }();
  return f;
}

Formula energy() {
  static const Formula f = meet(under(atoms().a_Sigma, e_sigma()), under(atoms().a_Pi, e_pi()));
  return f;
}

}  // namespace

Formula energy_formula(EnergyKind kind, std::size_t k) {
  const Atoms& A = atoms();
  switch (kind) {
    case EnergyKind::Sigma: return e_sigma();
    case EnergyKind::Pi: return e_pi();
    case EnergyKind::Base: return energy();
    case EnergyKind::Level: {
      Formula e = meet(okay_formula(), under(A.eps, energy()));
      for (std::size_t j = 0; j < k; ++j) e = meet(okay_formula(), query(A.eps, bang(e)));
      return e;
    }
    case EnergyKind::HLevel: {
      Formula e = energy_level(0);
      for (std::size_t j = 0; j < k; ++j) e = meet(okay_formula(), query(A.eps, star(e)));
      return e;
    }
    case EnergyKind::Killer: {
      Formula tail = under(star(A.a_1), A.okay);
      return under(A.eps, meet(under(A.a_Sigma, tail), under(A.a_Pi, tail)));
    }
  }
  throw std::invalid_argument("unknown energy kind");
}

std::optional<std::string> energy_abbrev(Formula f) {
  if (f == okay_formula()) return "OKAY";
  if (f == energy()) return "Energy";
  if (f == e_sigma()) return "E_Sigma";
  if (f == e_pi()) return "E_Pi";
  if (f == energy_formula(EnergyKind::Killer)) return "Killer";
  if (f->op != Op::Meet || f->a != okay_formula()) return std::nullopt;
  for (std::size_t k = 0; k < 16; ++k) {
    if (f == energy_level(k)) return "E_" + std::to_string(k);
    if (k > 0 && f == energy_hlevel(k)) return "H_" + std::to_string(k);
  }
  return std::nullopt;
}

const char* to_string(Variant v) { return v == Variant::Standard ? "standard" : "minus"; }

std::optional<std::vector<std::size_t>> energy_exponents(const Nat& inp) {
  auto in = decode_input(inp);
  if (!in) return std::nullopt;
  auto alpha = pi_decode(in->idx.p);
  if (!alpha) return std::nullopt;
  return omega_exponents(alpha->succ());
}

RunSequent seq_with(const Nat& count, Formula x, const std::vector<std::size_t>& hs, Variant v) {
  const Atoms& A = atoms();
  RunSequent s;
  s.ant = {{A.a_L, 1}, {A.a_1, count}, {x, 1}, {A.eps, 1}};
  for (auto it = hs.rbegin(); it != hs.rend(); ++it)
    s.ant.push_back({v == Variant::Standard ? energy_level(*it) : energy_hlevel(*it), 1});
  if (v == Variant::Minus) s.ant.push_back({energy_formula(EnergyKind::Killer), 1});
  s.suc = prod(A.a_L, A.okay);
  return s;
}

RunSequent seq_encode(const Nat& inp, Variant v) {
  auto hs = energy_exponents(inp);
  Formula x = atoms().a_Sigma;
  if (hs) x = decode_input(inp)->idx.x == Quant::Sigma ? atoms().a_Sigma : atoms().a_Pi;
  return seq_with(inp, x, hs ? *hs : std::vector<std::size_t>{}, v);
}

Nat seq_length(const RunSequent& s) {
  Nat n = 0;
  for (const Run& r : s.ant) n += r.count;
  return n;
}

Sequent expand(const RunSequent& s, const Nat& cap) {
  if (seq_length(s) > cap) throw std::length_error("antecedent longer than " + cap.str());
  Sequent out;
  for (const Run& r : s.ant)
    for (Nat k = 0; k < r.count; ++k) out.ant.push_back(r.f);
  out.suc = s.suc;
  return out;
}

std::string print_run_word(const RunWord& w) {
  std::string out;
  for (const auto& [sym, n] : w) {
    if (n == 0) continue;
    if (!out.empty()) out += ' ';
    out += sym;
    if (n != 1) out += "^{" + n.str() + "}";
  }
  return out;
}

std::optional<RunWord> f0_direct(const Nat& inp) {
  auto t = tuple_decode(inp);
  if (!t || t->size() != 2) return std::nullopt;
  auto idx = decode_index((*t)[0]);
  auto args = tuple_decode((*t)[1]);
  if (!idx || !args || Nat(args->size()) != idx->i) return std::nullopt;
  if (idx->p == 1) {
    auto f = qf_decode(idx->e);
    if (!f || qf_max_var(*f) > args->size()) return std::nullopt;
    if (!qf_eval(*f, *args)) return std::nullopt;
    return RunWord{{"a_1", 1}};
  }
  return RunWord{{"a_1", inp}, {"a_2", 1}};
}

Nat encode_choice(const Nat& triple, const Nat& y, const std::vector<Nat>& witnesses) {
  return tuple_encode({triple, y, tuple_encode(witnesses)});
}

F1Result f1_direct(const Nat& inp1, const Nat& inp2, const Nat& halt_cap) {
  F1Result fallback{{{"a_1", 1}}, false};
  auto in = decode_input(inp1);
  if (!in || in->idx.p == 1) return fallback;
  auto choice = tuple_decode(inp2);
  if (!choice || choice->size() != 3) return fallback;
  const Nat &c1 = (*choice)[0], &y = (*choice)[1];
  auto tr = tuple_decode(c1);
  if (!tr || tr->size() != 3) return fallback;
  const Nat &p1 = (*tr)[0], &j = (*tr)[1], &e1 = (*tr)[2];
  if (!pn_less(p1, in->idx.p)) return fallback;
  auto wit = tuple_decode((*choice)[2]);
  if (!wit || Nat(wit->size()) != j) return fallback;
  if (y > halt_cap) return {fallback.out, true};
  if (!halt(c1, in->idx.e, y)) return fallback;
  SatInput next{{dual(in->idx.x), p1, in->idx.i + j, e1}, in->args};
  next.args.insert(next.args.end(), wit->begin(), wit->end());
  return {{{"a_1", encode_input(next)}, {"a_2", 1}}, false};
}

F1Result f1_direct(const RunWord& w, const Nat& halt_cap) {
  F1Result fallback{{{"a_1", 1}}, false};
  Nat n1 = 0, n2 = 0;
  std::size_t k = 0;
  for (; k < w.size() && w[k].first == "a_1"; ++k) n1 += w[k].second;
  for (; k < w.size() && w[k].first == "a_2"; ++k) n2 += w[k].second;
  if (k != w.size()) return fallback;
  return f1_direct(n1, n2, halt_cap);
}

}  // namespace actmux
