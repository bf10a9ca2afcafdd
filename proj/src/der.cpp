#include "actmux/der.hpp"

#include <stdexcept>

namespace actmux {

bool axiom_pred(const Nat& c) {
  auto s = goedel_decode(c);
  return s && is_axiom(*s);
}

bool DerEvaluator::holds(const Ordinal& alpha, const Sequent& s) {
  if (is_axiom(s)) return true;
  if (alpha.is_zero()) return false;
  const Nat key_p = pi_encode(alpha), key_c = goedel_encode(s);
  if (auto it = memo_.find({key_p, key_c}); it != memo_.end()) return it->second;
  // Pending entries count as false, which cuts cycles.
  memo_[{key_p, key_c}] = false;
  if (++calls_ > caps_.max_calls) return false;

  EnumOptions opt;
  opt.n_max = caps_.n_max;
  opt.bare_perms = false;
  opt.generalized = true;
  const std::optional<Ordinal> below = alpha.pred();
  bool found = false;
  for (const RuleDescriptor& t : enumerate_descriptors(s, opt)) {
    if (base_code(t) > caps_.t_max) continue;
    auto prem = premises(s, t);
    if (!prem) continue;
    bool all = true;
    for (const Sequent& q : *prem) {
      // Der is monotone in p, so the largest useful p' below p is enough:
      // the predecessor of a successor, and otherwise the premise's own rank.
      bool ok = false;
      if (below) ok = holds(*below, q);
      const Ordinal r = rank(q);
      if (!ok && r < alpha && (!below || r < *below)) ok = holds(r, q);
      if (!ok) {
        all = false;
        break;
      }
    }
    if (all) {
      found = true;
      break;
    }
  }
  memo_[{key_p, key_c}] = found;
  return found;
}

Truth DerEvaluator::eval(const Nat& p, const Nat& c) {
  auto alpha = pi_decode(p);
  auto s = goedel_decode(c);
  if (!alpha || !s) return Truth::Unknown;
  return holds(*alpha, *s) ? Truth::True : Truth::Unknown;
}

Truth der_eval(const Nat& p, const Nat& c, const DerCaps& caps) { return DerEvaluator(caps).eval(p, c); }

DerRank der_rank(const Nat& p) {
  auto alpha = pi_decode(p);
  if (!alpha) throw std::invalid_argument("not a polynomial notation: " + p.str());
  if (alpha->is_zero()) return {Ordinal::finite(1), Ordinal::finite(1)};
  Ordinal twice = times_nat(*alpha, 2);
  return {twice.succ(), twice.succ().succ().succ()};
}

}  // namespace actmux
