#include "actmux/rewriting.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace actmux {

std::string join_word(const Word& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ' ';
    out += w[k];
  }
  return out;
}

Word split_word(std::string_view text) {
  Word w;
  bool spaced = text.find_first_of(" \t") != std::string_view::npos;
  if (!spaced) {
    for (char c : text) w.emplace_back(1, c);
    return w;
  }
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) w.push_back(tok);
  return w;
}

std::set<Word> one_step(const SRS& sr, const Word& w) {
  std::set<Word> out;
  for (const SRule& r : sr.rules) {
    if (r.lhs.size() > w.size()) continue;
    for (std::size_t i = 0; i + r.lhs.size() <= w.size(); ++i) {
      if (!std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + static_cast<long>(i))) continue;
      Word v(w.begin(), w.begin() + static_cast<long>(i));
      v.insert(v.end(), r.rhs.begin(), r.rhs.end());
      v.insert(v.end(), w.begin() + static_cast<long>(i + r.lhs.size()), w.end());
      out.insert(std::move(v));
    }
  }
  return out;
}

const char* to_string(ReachStatus s) {
  switch (s) {
    case ReachStatus::Found: return "found";
    case ReachStatus::Exhausted: return "exhausted";
    case ReachStatus::BudgetHit: return "budget_hit";
  }
  return "?";
}

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 0;
    for (const auto& s : w) h = h * 1000003 ^ std::hash<std::string>{}(s);
    return h;
  }
};

}  // namespace

ReachResult reach(const SRS& sr, const Word& start, const std::function<bool(const Word&)>& target,
                  std::size_t budget) {
  ReachResult res;
  std::unordered_map<Word, Word, WordHash> parent;
  std::deque<Word> queue{start};
  parent.emplace(start, Word{});
  auto trace_to = [&](const Word& w) {
    std::vector<Word> t{w};
    Word cur = w;
    while (!(cur == start)) {
      cur = parent.at(cur);
      t.push_back(cur);
    }
    std::reverse(t.begin(), t.end());
    return t;
  };
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    ++res.explored;
    if (target(w)) {
      res.status = ReachStatus::Found;
      res.found = w;
      res.trace = trace_to(w);
      return res;
    }
    if (res.explored >= budget) {
      res.status = ReachStatus::BudgetHit;
      return res;
    }
    for (const Word& v : one_step(sr, w)) {
      if (parent.emplace(v, w).second) queue.push_back(v);
    }
  }
  res.status = ReachStatus::Exhausted;
  return res;
}

Closure closure(const SRS& sr, const Word& start, std::size_t budget) {
  Closure c;
  std::unordered_map<Word, bool, WordHash> seen{{start, true}};
  std::deque<Word> queue{start};
  while (!queue.empty()) {
    if (c.words.size() >= budget) return c;
    Word w = std::move(queue.front());
    queue.pop_front();
    for (const Word& v : one_step(sr, w))
      if (seen.emplace(v, true).second) queue.push_back(v);
    c.words.push_back(std::move(w));
  }
  c.complete = true;
  return c;
}

// ---- Turing machines -------------------------------------------------------

std::string validate(const TuringMachine& tm) {
  auto has = [](const std::vector<Symbol>& v, const Symbol& s) { return std::find(v.begin(), v.end(), s) != v.end(); };
  if (!has(tm.states, tm.q0)) return "start state not declared";
  if (!has(tm.states, tm.qa)) return "accept state not declared";
  if (!has(tm.tape, tm.blank)) return "blank not in tape alphabet";
  if (has(tm.input, tm.blank) || has(tm.output, tm.blank)) return "blank in input or output alphabet";
  for (const auto& s : tm.input)
    if (!has(tm.tape, s)) return "input symbol " + s + " not in tape alphabet";
  for (const auto& s : tm.output)
    if (!has(tm.tape, s)) return "output symbol " + s + " not in tape alphabet";
  for (const auto& s : tm.states)
    if (has(tm.tape, s)) return "symbol " + s + " is both a state and a tape symbol";
  for (const auto& t : tm.delta) {
    if (!has(tm.states, t.q) || !has(tm.states, t.r)) return "undeclared state in transition";
    if (!has(tm.tape, t.a) || !has(tm.tape, t.b)) return "undeclared tape symbol in transition";
    if (t.q == tm.qa) return "transition out of the accepting state";
    if (t.dir != 'L' && t.dir != 'R' && t.dir != 'N') return "bad direction";
  }
  return "";
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string strip_comment(std::string line) {
  auto h = line.find('#');
  if (h != std::string::npos) line.resize(h);
  return line;
}

}  // namespace

TuringMachine parse_tm(std::string_view text) {
  TuringMachine tm;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    line = strip_comment(line);
    auto colon = line.find(':');
    auto arrow = line.find("->");
    if (colon != std::string::npos && arrow == std::string::npos) {
      std::string key = line.substr(0, colon);
      key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
      auto vals = tokens_of(line.substr(colon + 1));
      if (key == "states") tm.states = vals;
      else if (key == "tape") tm.tape = vals;
      else if (key == "input") tm.input = vals;
      else if (key == "output") tm.output = vals;
      else if (key == "blank" && vals.size() == 1) tm.blank = vals[0];
      else if (key == "start" && vals.size() == 1) tm.q0 = vals[0];
      else if (key == "accept" && vals.size() == 1) tm.qa = vals[0];
      else throw std::invalid_argument("line " + std::to_string(number) + ": bad header '" + key + "'");
      continue;
    }
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks.size() != 6 || toks[2] != "->" || toks[5].size() != 1)
      throw std::invalid_argument("line " + std::to_string(number) + ": expected 'q a -> r b L|R|N'");
    tm.delta.push_back({toks[0], toks[1], toks[3], toks[4], toks[5][0]});
  }
  if (auto err = validate(tm); !err.empty()) throw std::invalid_argument(err);
  return tm;
}

std::string print_tm(const TuringMachine& tm) {
  std::ostringstream os;
  os << "states: " << join_word(tm.states) << "\n";
  os << "tape: " << join_word(tm.tape) << "\n";
  os << "input: " << join_word(tm.input) << "\n";
  os << "output: " << join_word(tm.output) << "\n";
  os << "blank: " << tm.blank << "\nstart: " << tm.q0 << "\naccept: " << tm.qa << "\n";
  for (const auto& t : tm.delta) os << t.q << " " << t.a << " -> " << t.r << " " << t.b << " " << t.dir << "\n";
  return os.str();
}

SRS parse_sr(std::string_view text) {
  SRS sr;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    line = strip_comment(line);
    if (tokens_of(line).empty()) continue;
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("line " + std::to_string(number) + ": expected '->'");
    SRule r{tokens_of(line.substr(0, arrow)), tokens_of(line.substr(arrow + 2))};
    if (r.lhs.empty() || r.rhs.empty())
      throw std::invalid_argument("line " + std::to_string(number) + ": both sides must be nonempty");
    sr.alphabet.insert(r.lhs.begin(), r.lhs.end());
    sr.alphabet.insert(r.rhs.begin(), r.rhs.end());
    sr.rules.push_back(std::move(r));
  }
  return sr;
}

std::string print_sr(const SRS& sr) {
  std::string out;
  for (const auto& r : sr.rules) out += join_word(r.lhs) + " -> " + join_word(r.rhs) + "\n";
  return out;
}

Symbol primed(const Symbol& s) { return "~" + s; }

CompileResult compile_tm(const TuringMachine& tm, const Symbol& aL, const Symbol& aR, const Symbol& fin) {
  if (auto err = validate(tm); !err.empty()) throw std::invalid_argument(err);
  std::set<Symbol> used(tm.tape.begin(), tm.tape.end());
  used.insert(tm.states.begin(), tm.states.end());
  for (const Symbol& s : {aL, aR, fin, primed(aL), primed(aR)})
    if (used.count(s)) throw std::invalid_argument("boundary symbol " + s + " clashes with the machine");
  CompileResult res;
  SRS& sr = res.sr;
  const Symbol aLp = primed(aL), aRp = primed(aR), bl = tm.blank;
  auto rule = [&](Word l, Word r) { sr.rules.push_back({std::move(l), std::move(r)}); };
  rule({aR}, {tm.q0, aRp});
  for (const Transition& t : tm.delta) {
    switch (t.dir) {
      case 'N':
        rule({t.a, t.q}, {t.b, t.r});
        if (t.a == bl) rule({aL, t.q}, {aL, t.b, t.r});
        break;
      case 'L':
        rule({t.a, t.q}, {t.r, t.b});
        if (t.a == bl) rule({aL, t.q}, {aL, t.r, t.b});
        break;
      case 'R':
        for (const Symbol& c : tm.tape) rule({t.a, t.q, c}, {t.b, c, t.r});
        rule({t.a, t.q, aRp}, {t.b, bl, t.r, aRp});
        if (t.a == bl) {
          rule({aL, t.q, aRp}, {aL, t.b, bl, t.r, aRp});
          res.warnings.push_back("transition (" + t.q + "," + bl + "," + t.r + "," + t.b +
                                 ",R) at the left boundary with tape content to its right is not covered");
        }
        break;
    }
  }
  rule({bl, tm.qa}, {tm.qa});
  rule({bl, aRp}, {aRp});
  rule({aL, tm.qa}, {aL, aLp});
  for (const Symbol& c : tm.output) rule({aLp, c}, {c, aLp});
  rule({aLp, aRp}, {fin});
  for (const auto& r : sr.rules) {
    sr.alphabet.insert(r.lhs.begin(), r.lhs.end());
    sr.alphabet.insert(r.rhs.begin(), r.rhs.end());
  }
  sr.alphabet.insert(aL);
  return res;
}

TmRun run_tm(const TuringMachine& tm, const Word& input, std::size_t max_steps) {
  std::map<long, Symbol> tape;
  for (std::size_t k = 0; k < input.size(); ++k) tape[static_cast<long>(k)] = input[k];
  long head = static_cast<long>(input.size()) - 1;
  Symbol q = tm.q0;
  TmRun res;
  auto cell = [&](long k) {
    auto it = tape.find(k);
    return it == tape.end() ? tm.blank : it->second;
  };
  for (;;) {
    if (q == tm.qa) {
      res.status = TmStatus::Accepted;
      Word w;
      bool ok = true;
      for (const auto& [k, s] : tape) {
        if (s == tm.blank) continue;
        if (k <= head) ok = false;
      }
      if (ok) {
        long last = head;
        for (const auto& [k, s] : tape)
          if (k > head && s != tm.blank) last = std::max(last, k);
        for (long k = head + 1; k <= last; ++k) {
          Symbol s = cell(k);
          if (std::find(tm.output.begin(), tm.output.end(), s) == tm.output.end()) ok = false;
          w.push_back(s);
        }
      }
      if (ok) res.output = w;
      return res;
    }
    if (res.steps >= max_steps) {
      res.status = TmStatus::BudgetHit;
      return res;
    }
    const Transition* tr = nullptr;
    for (const auto& t : tm.delta)
      if (t.q == q && t.a == cell(head)) {
        tr = &t;
        break;
      }
    if (!tr) {
      res.status = TmStatus::Stuck;
      return res;
    }
    tape[head] = tr->b;
    if (tr->dir == 'L') --head;
    if (tr->dir == 'R') ++head;
    q = tr->r;
    ++res.steps;
  }
}

const char* to_string(ImplVerdict v) {
  switch (v) {
    case ImplVerdict::Agree: return "agree";
    case ImplVerdict::Disagree: return "disagree";
    case ImplVerdict::BudgetHit: return "budget_hit";
  }
  return "?";
}

ImplReport implements_check(const TuringMachine& tm, const Word& u, std::size_t budget) {
  ImplReport rep;
  const Symbol aL = "a_L", aR = "a_R", fin = "♦";
  CompileResult c = compile_tm(tm, aL, aR, fin);
  TmRun run = run_tm(tm, u, budget);
  if (run.status == TmStatus::BudgetHit) {
    rep.detail = "machine did not stop within the budget";
    return rep;
  }
  rep.tm_output = run.output;
  Word start{aL};
  start.insert(start.end(), u.begin(), u.end());
  start.push_back(aR);
  Closure cl = closure(c.sr, start, budget);
  for (const Word& w : cl.words)
    if (!w.empty() && w.back() == fin) rep.sr_outputs.emplace_back(w.begin(), w.end() - 1);
  std::sort(rep.sr_outputs.begin(), rep.sr_outputs.end());
  for (const Word& w : cl.words)
    if (w.empty() || w.front() != aL) {
      rep.verdict = ImplVerdict::Disagree;
      rep.detail = "left boundary rewritten: " + join_word(w);
      return rep;
    }
  if (!cl.complete) {
    rep.detail = "rewriting closure exceeded the budget";
    return rep;
  }
  std::vector<Word> expected;
  if (rep.tm_output) {
    Word v{aL};
    v.insert(v.end(), rep.tm_output->begin(), rep.tm_output->end());
    expected.push_back(v);
  }
  rep.verdict = rep.sr_outputs == expected ? ImplVerdict::Agree : ImplVerdict::Disagree;
  if (rep.verdict == ImplVerdict::Disagree) rep.detail = "closure outputs differ from the direct run";
  return rep;
}

TuringMachine toy_identity() {
  return parse_tm(
      "states: q0 qa\ntape: _ 0 1\ninput: 0 1\noutput: 0 1\nblank: _\nstart: q0\naccept: qa\n"
      "q0 0 -> q0 0 L\nq0 1 -> q0 1 L\nq0 _ -> qa _ N\n");
}

TuringMachine toy_unary_successor() {
  return parse_tm(
      "states: q0 qa\ntape: _ 1\ninput: 1\noutput: 1\nblank: _\nstart: q0\naccept: qa\n"
      "q0 1 -> q0 1 L\nq0 _ -> qa 1 L\n");
}

TuringMachine toy_eraser() {
  return parse_tm(
      "states: q0 qa\ntape: _ 0 1\ninput: 0 1\noutput: 0 1\nblank: _\nstart: q0\naccept: qa\n"
      "q0 0 -> q0 _ L\nq0 1 -> q0 _ L\nq0 _ -> qa _ N\n");
}

TuringMachine toy_append_a2() {
  return parse_tm(
      "states: q0 q1 q2 qa\ntape: blank a_1 a_2\ninput: a_1\noutput: a_1 a_2\nblank: blank\n"
      "start: q0\naccept: qa\n"
      "q0 a_1 -> q1 a_1 R\nq0 blank -> q2 a_2 L\nq1 blank -> q2 a_2 L\n"
      "q2 a_1 -> q2 a_1 L\nq2 blank -> qa blank N\n");
}

}  // namespace actmux
