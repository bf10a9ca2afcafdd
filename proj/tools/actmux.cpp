// Command line front end: one binary, one subcommand per operation.
// Exit status: 0 for a definite answer, 3 for Unknown, 1 for errors.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "actmux/calculus.hpp"
#include "actmux/computability.hpp"
#include "actmux/decider.hpp"
#include "actmux/der.hpp"
#include "actmux/encoding.hpp"
#include "actmux/rewriting.hpp"
#include "actmux/search.hpp"
#include "actmux/suites.hpp"

#ifndef ACTMUX_GOLDEN_DIR
#define ACTMUX_GOLDEN_DIR "tests/golden"
#endif

using json = nlohmann::ordered_json;
using namespace actmux;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 3;

struct Report {
  json doc = json::object();
  std::string text;
  int status = kExitOk;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

std::vector<Nat> parse_args(const std::vector<std::string>& raw) {
  std::vector<Nat> out;
  for (const std::string& s : raw) {
    auto n = parse_nat(s);
    if (!n) throw std::invalid_argument("not a natural number: " + s);
    out.push_back(*n);
  }
  return out;
}

Ordinal ordinal_arg(const std::string& text) {
  std::string err;
  auto a = parse_ordinal(text, &err);
  if (!a) throw std::invalid_argument("bad ordinal '" + text + "': " + err);
  return *a;
}

int verdict_status(Verdict v) { return v == Verdict::Unknown ? kExitUnknown : kExitOk; }
int truth_status(Truth t) { return t == Truth::Unknown ? kExitUnknown : kExitOk; }

json trace_json(const BTATrace& t) {
  json a = json::array();
  for (const TraceLine& l : t) a.push_back({{"depth", l.depth}, {"sequent", l.text}, {"item", l.label}});
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinitary action logic with multiplexing: rank, rewriting, encoding and decision tools"};
  app.require_subcommand(1);
  std::string format = "human";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "structured"}));

  // Budgets shared by several subcommands.
  std::size_t n_max = 8;
  std::string t_max = "4096", halt_bound = "256", witness_bound = "64", cap = "100000";
  std::size_t max_nodes = 400000;
  auto budget_flags = [&](CLI::App* s) {
    s->add_option("--n-max", n_max, "Copies tried for ! and * (default 8)")->check(CLI::PositiveNumber);
    s->add_option("--max-nodes", max_nodes, "Node budget")->check(CLI::PositiveNumber);
  };

  Report rep;
  std::function<void()> action;

  // ---- ordinals -------------------------------------------------------------
  auto* ord = app.add_subcommand("ord", "Ordinal arithmetic below w^w");
  std::string verb;
  std::vector<std::string> ord_args;
  ord->add_option("verb", verb, "sum | cmp | encode | decode")->required()->check(
      CLI::IsMember({"sum", "cmp", "encode", "decode"}));
  ord->add_option("args", ord_args, "Ordinals (or a code for decode)")->required();
  ord->callback([&] {
    action = [&] {
      rep.doc["verb"] = verb;
      if (verb == "sum") {
        Ordinal s;
        for (const auto& a : ord_args) s = hessenberg_sum(s, ordinal_arg(a));
        rep.text = to_string(s);
      } else if (verb == "cmp") {
        if (ord_args.size() != 2) throw std::invalid_argument("cmp takes two ordinals");
        auto c = ordinal_arg(ord_args[0]) <=> ordinal_arg(ord_args[1]);
        rep.text = c < 0 ? "<" : c > 0 ? ">" : "=";
      } else if (verb == "encode") {
        rep.text = to_string(pi_encode(ordinal_arg(ord_args.at(0))));
      } else {
        auto n = parse_nat(ord_args.at(0));
        auto a = n ? pi_decode(*n) : std::nullopt;
        if (!a) throw std::invalid_argument("not an ordinal notation: " + ord_args.at(0));
        rep.text = to_string(*a);
      }
      rep.doc["result"] = rep.text;
    };
  });

  // ---- formulas and sequents ------------------------------------------------
  std::string seq_text;
  auto* rk = app.add_subcommand("rank", "Rank of a sequent");
  rk->add_option("sequent", seq_text)->required();
  rk->callback([&] {
    action = [&] {
      rep.text = to_string(rank(parse_sequent(seq_text)));
      rep.doc["rank"] = rep.text;
    };
  });

  auto* dp = app.add_subcommand("depth", "Largest nesting depth of * and ! in a sequent");
  dp->add_option("sequent", seq_text)->required();
  dp->callback([&] {
    action = [&] {
      Sequent s = parse_sequent(seq_text);
      std::size_t d = star_bang_depth(s.suc);
      for (Formula f : s.ant) d = std::max(d, star_bang_depth(f));
      rep.text = std::to_string(d);
      rep.doc["depth"] = d;
    };
  });

  auto* fr = app.add_subcommand("fragment", "Least k with the sequent in the k-th fragment");
  fr->add_option("sequent", seq_text)->required();
  fr->callback([&] {
    action = [&] {
      Sequent s = parse_sequent(seq_text);
      for (bool minus : {false, true}) {
        json v = nullptr;
        for (std::size_t k = 0; k <= 64; ++k)
          if (in_fragment(s, k, minus)) {
            v = k;
            break;
          }
        rep.doc[minus ? "minus" : "standard"] = v;
        rep.text += std::string(minus ? "minus " : "standard ") + (v.is_null() ? "none" : v.dump()) + "\n";
      }
      rep.text.pop_back();
    };
  });

  // ---- proofs ---------------------------------------------------------------
  std::string proof_path = "-";
  bool allow_hyp = false;
  auto* cp = app.add_subcommand("check-proof", "Check a proof file");
  cp->add_option("file", proof_path, "Proof file, - for stdin");
  cp->add_flag("--allow-hypotheses", allow_hyp);
  cp->callback([&] {
    action = [&] {
      Proof d = read_proof(slurp(proof_path));
      CheckResult r = check_derivation(d, allow_hyp);
      BasicnessReport b = check_basic(d);
      rep.doc["ok"] = r.ok;
      rep.doc["message"] = r.message;
      rep.doc["path"] = r.path;
      rep.doc["basic"] = b.ok;
      rep.text = r.ok ? std::string("ok") + (b.ok ? ", basic" : ", not basic") : "invalid: " + r.message;
      if (!r.ok) rep.status = kExitError;
    };
  });

  auto* bz = app.add_subcommand("basicize", "Rewrite a proof into a basic one");
  bz->add_option("file", proof_path, "Proof file, - for stdin");
  bz->callback([&] {
    action = [&] {
      Proof d = basicize(read_proof(slurp(proof_path)));
      rep.text = write_proof(d);
      if (!rep.text.empty() && rep.text.back() == '\n') rep.text.pop_back();
      rep.doc["proof"] = rep.text;
    };
  });

  std::string c_code, t_code, k_code;
  auto* pr = app.add_subcommand("premise", "Premise code of <c, t, k>");
  pr->add_option("c", c_code)->required();
  pr->add_option("t", t_code)->required();
  pr->add_option("k", k_code)->required();
  pr->callback([&] {
    action = [&] {
      auto v = parse_args({c_code, t_code, k_code});
      Nat r = premise_code(v[0], v[1], v[2]);
      rep.text = to_string(r);
      rep.doc["code"] = rep.text;
      if (auto s = goedel_decode(r)) rep.doc["sequent"] = print(*s);
    };
  });

  // ---- rewriting ------------------------------------------------------------
  std::string tm_path = "-", sr_path = "-", input, final_symbol = "♦";
  std::size_t sr_budget = 100000;
  auto* t2s = app.add_subcommand("tm2sr", "Compile a Turing machine into a rewriting system");
  t2s->add_option("file", tm_path, "Machine file, - for stdin");
  t2s->callback([&] {
    action = [&] {
      CompileResult c = compile_tm(parse_tm(slurp(tm_path)));
      rep.text = print_sr(c.sr);
      if (!rep.text.empty() && rep.text.back() == '\n') rep.text.pop_back();
      rep.doc["system"] = rep.text;
      rep.doc["warnings"] = c.warnings;
      for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
    };
  });

  auto* srr = app.add_subcommand("sr-run", "Rewrite a_L u a_R until a word ending in the final symbol");
  srr->add_option("file", sr_path, "Rewriting system, - for stdin");
  srr->add_option("--input", input, "Input word u")->required();
  srr->add_option("--final", final_symbol, "Final symbol");
  srr->add_option("--budget", sr_budget, "Words explored")->check(CLI::PositiveNumber);
  srr->callback([&] {
    action = [&] {
      SRS sr = parse_sr(slurp(sr_path));
      Word start{"a_L"};
      for (const Symbol& a : split_word(input)) start.push_back(a);
      start.push_back("a_R");
      ReachResult r = reach(sr, start, [&](const Word& w) { return !w.empty() && w.back() == final_symbol; },
                            sr_budget);
      rep.doc["status"] = to_string(r.status);
      json tr = json::array();
      for (const Word& w : r.trace) {
        tr.push_back(join_word(w));
        rep.text += join_word(w) + "\n";
      }
      rep.doc["trace"] = tr;
      rep.text += to_string(r.status);
      if (r.status == ReachStatus::BudgetHit) rep.status = kExitUnknown;
    };
  });

  std::string target;
  auto* srh = app.add_subcommand("sr-reach", "Decide whether one word rewrites to another");
  srh->add_option("file", sr_path, "Rewriting system, - for stdin");
  srh->add_option("--from", input, "Start word")->required();
  srh->add_option("--to", target, "Target word")->required();
  srh->add_option("--budget", sr_budget, "Words explored")->check(CLI::PositiveNumber);
  srh->callback([&] {
    action = [&] {
      SRS sr = parse_sr(slurp(sr_path));
      Word goal_w = split_word(target);
      ReachResult r = reach(sr, split_word(input), [&](const Word& w) { return w == goal_w; }, sr_budget);
      rep.doc["status"] = to_string(r.status);
      rep.doc["explored"] = r.explored;
      rep.text = to_string(r.status);
      if (r.status == ReachStatus::BudgetHit) rep.status = kExitUnknown;
    };
  });

  // ---- arithmetic -----------------------------------------------------------
  std::string qf_text, index_text;
  std::vector<std::string> assign;
  auto* eq = app.add_subcommand("eval-qf", "Evaluate a quantifier-free formula");
  eq->add_option("--qf", qf_text)->required();
  eq->add_option("--assign", assign, "Values of x1, x2, ...");
  eq->callback([&] {
    action = [&] {
      QfNode n = parse_qf(qf_text);
      bool v = qf_eval(n, parse_args(assign));
      rep.doc["number"] = to_string(qf_number(n));
      rep.doc["value"] = v;
      rep.text = v ? "true" : "false";
    };
  });

  auto* sat = app.add_subcommand("sat", "Bounded satisfaction of a computable infinitary formula");
  sat->add_option("--index", index_text, "Index literal, e.g. Sigma@w^1:i=1:e=6")->required();
  sat->add_option("--assign", assign, "Arguments");
  sat->add_option("--halt-bound", halt_bound, "Y (default 256)");
  sat->add_option("--witness-bound", witness_bound, "N (default 64)");
  sat->callback([&] {
    action = [&] {
      SatBudget b{parse_args({halt_bound})[0], parse_args({witness_bound})[0]};
      SatResult r = bounded_sat({parse_index(index_text), parse_args(assign)}, b);
      rep.doc["value"] = to_string(r.value);
      rep.doc["diagnostic"] = r.diagnostic;
      rep.text = to_string(r.value);
      rep.status = truth_status(r.value);
    };
  });

  // ---- encoding and deciding ------------------------------------------------
  std::string variant_name = "standard";
  bool compressed = false, alpha0 = false, want_trace = false;
  auto variant = [&] { return variant_name == "minus" ? Variant::Minus : Variant::Standard; };
  auto input_code = [&]() -> Nat {
    if (alpha0) {
      QfNode n = parse_qf(qf_text);
      std::vector<Nat> a = parse_args(assign);
      InfIndex idx{Quant::Sigma, pi_encode(Ordinal()), a.size(), qf_number(n)};
      return sub(idx, a);
    }
    return sub(parse_index(index_text), parse_args(assign));
  };

  auto* enc = app.add_subcommand("encode", "Sequent encoding of a satisfaction instance");
  enc->add_option("--index", index_text, "Index literal")->required();
  enc->add_option("--assign", assign, "Arguments");
  enc->add_option("--variant", variant_name)->check(CLI::IsMember({"standard", "minus"}));
  enc->add_flag("--compressed", compressed, "Print the run-length form");
  enc->add_option("--cap", cap, "Largest expanded antecedent (default 100000)");
  enc->callback([&] {
    action = [&] {
      Nat inp = input_code();
      RunSequent s = seq_encode(inp, variant());
      rep.doc["inp"] = to_string(inp);
      rep.doc["length"] = to_string(seq_length(s));
      rep.text = compressed ? print(s) : print(expand(s, parse_args({cap})[0]));
      rep.doc["sequent"] = rep.text;
    };
  });

  DecideBudget db;
  std::string run_seq;
  auto* dc = app.add_subcommand("decide", "Decide derivability of an encoded sequent");
  dc->add_flag("--alpha0", alpha0, "Instance given by a quantifier-free formula (rank 0, Sigma)");
  dc->add_option("--qf", qf_text, "Quantifier-free formula for --alpha0");
  dc->add_option("--index", index_text, "Index literal");
  dc->add_option("--assign", assign, "Arguments");
  dc->add_option("--sequent", run_seq, "Run-length sequent, e.g. a_L, a_1^{3}, a_Sigma, eps, E_0 |- a_L.okay");
  dc->add_option("--variant", variant_name)->check(CLI::IsMember({"standard", "minus"}));
  dc->add_option("--n-max", db.n_max, "Copies tried for ! and * (default 8)")->check(CLI::PositiveNumber);
  dc->add_option("--halt-bound", halt_bound, "Y (default 256)");
  dc->add_option("--witness-bound", witness_bound, "N (default 64)");
  dc->add_option("--max-nodes", db.max_nodes, "Node budget")->check(CLI::PositiveNumber);
  dc->add_flag("--trace", want_trace, "Print the bottom-top trace");
  dc->callback([&] {
    action = [&] {
      db.halt_bound = parse_args({halt_bound})[0];
      db.witness_bound = parse_args({witness_bound})[0];
      Decision d;
      if (!run_seq.empty()) {
        d = decide_sequent(parse_run_sequent(run_seq), db, want_trace);
      } else {
        if (alpha0 ? qf_text.empty() : index_text.empty())
          throw std::invalid_argument("decide needs --sequent, --index or --alpha0 --qf");
        Nat inp = input_code();
        rep.doc["inp"] = to_string(inp);
        d = decide_encoded(inp, variant(), db, want_trace);
      }
      rep.doc["verdict"] = to_string(d.verdict);
      rep.doc["reason"] = d.reason;
      rep.doc["nodes"] = d.nodes;
      if (want_trace) rep.doc["trace"] = trace_json(d.trace);
      rep.text = want_trace ? format_trace(d.trace) : "";
      rep.text += to_string(d.verdict);
      if (!d.reason.empty()) rep.text += " (" + d.reason + ")";
      rep.status = verdict_status(d.verdict);
    };
  });

  bool print_proof = false;
  auto* se = app.add_subcommand("search", "Bounded backward proof search");
  se->add_option("sequent", seq_text)->required();
  budget_flags(se);
  se->add_flag("--proof", print_proof, "Print the proof when one is found");
  se->callback([&] {
    action = [&] {
      SearchCaps c;
      c.n_max = n_max;
      c.max_nodes = max_nodes;
      SearchResult r = bounded_search(parse_sequent(seq_text), c);
      rep.doc["verdict"] = to_string(r.verdict);
      rep.doc["reason"] = r.reason;
      rep.text = to_string(r.verdict);
      if (r.proof) {
        rep.doc["proof"] = write_proof(r.proof);
        if (print_proof) {
          rep.text += "\n" + write_proof(r.proof);
          if (rep.text.back() == '\n') rep.text.pop_back();
        }
      }
      rep.status = verdict_status(r.verdict);
    };
  });

  std::string universe_path = "-";
  auto* sa = app.add_subcommand("saturate", "Least fixpoint of immediate derivability over a finite universe");
  sa->add_option("file", universe_path, "One sequent per line, - for stdin");
  sa->add_option("--n-max", n_max, "Copies tried for ! and * (default 8)")->check(CLI::PositiveNumber);
  sa->callback([&] {
    action = [&] {
      std::vector<Sequent> u;
      for (const std::string& l : lines_of(slurp(universe_path))) u.push_back(parse_sequent(l));
      std::vector<Sequent> fix = saturate(u, n_max);
      rep.doc["stages"] = saturation_stages(u, n_max);
      json a = json::array();
      for (const Sequent& s : fix) {
        a.push_back(print(s));
        rep.text += print(s) + "\n";
      }
      rep.doc["derivable"] = a;
      rep.text += std::to_string(fix.size()) + " of " + std::to_string(u.size()) + " derivable";
    };
  });

  // ---- Der --------------------------------------------------------------------
  std::string p_text;
  auto* dr = app.add_subcommand("derp", "Bounded evaluation of Der_p on a sequent");
  dr->add_option("--p", p_text, "Ordinal, e.g. w*2+1")->required();
  dr->add_option("--sequent", seq_text)->required();
  dr->add_option("--n-max", n_max, "Bound for !L_n and *R pieces (default 8)")->check(CLI::PositiveNumber);
  dr->add_option("--t-max", t_max, "Bound on descriptor codes (default 4096)");
  dr->callback([&] {
    action = [&] {
      Nat p = pi_encode(ordinal_arg(p_text));
      DerCaps caps;
      caps.n_max = n_max;
      caps.t_max = parse_args({t_max})[0];
      Truth t = der_eval(p, goedel_encode(parse_sequent(seq_text)), caps);
      DerRank r = der_rank(p);
      rep.doc["value"] = to_string(t);
      rep.doc["statement_rank"] = to_string(r.statement);
      rep.doc["assembled_rank"] = to_string(r.assembled);
      rep.text = to_string(t);
      rep.status = truth_status(t);
    };
  });

  // ---- acceptance suites ----------------------------------------------------------
  std::string suite_name, golden = ACTMUX_GOLDEN_DIR;
  auto* su = app.add_subcommand("suite", "Run an acceptance suite, or all of them");
  su->add_option("name", suite_name, "Suite name or all")->required();
  su->add_option("--golden", golden, "Directory holding the golden traces");
  su->callback([&] {
    action = [&] {
      std::vector<SuiteResult> rs;
      if (suite_name == "all")
        rs = run_all_suites({golden});
      else
        rs.push_back(run_suite(suite_name, {golden}));
      json a = json::array();
      for (const SuiteResult& r : rs) {
        a.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        rep.text += r.name + ": " + (r.passed ? "pass" : "fail") + "  " + r.detail + "\n";
        if (!r.passed) rep.status = kExitError;
      }
      rep.doc["suites"] = a;
      rep.text.pop_back();
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    action();
  } catch (const std::exception& e) {
    if (format == "structured") {
      json err{{"version", 1}, {"command", command}, {"error", e.what()}};
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kExitError;
  }
  if (format == "structured") {
    json out{{"version", 1}, {"command", command}};
    for (auto& [k, v] : rep.doc.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << rep.text << "\n";
  }
  return rep.status;
}
