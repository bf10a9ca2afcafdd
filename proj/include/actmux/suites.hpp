#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "actmux/formula.hpp"

namespace actmux {

struct SuiteResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct SuiteOptions {
  std::string golden_dir;  // directory holding example5.txt
};

// Names in criterion order: tm-sr rank-monotone basicize bta example5 lemmas
// alpha0 alpha1 der-agree der-rank cut ordinals depth.
const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown name; the message lists the known ones.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);
std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt);

// Sequents over {p, q} built with \ / . & | and nabla (no constants, no * or !):
// every sequent with one antecedent formula and at most 2 connectives, every
// sequent with two antecedent formulas and at most 1 connective, every |- A
// with at most 2 connectives, and a fixed pseudo-random sample of 600
// sequents with 3 to 6 connectives and 1 to 3 antecedent formulas.
const std::vector<Sequent>& decidable_corpus();

// Golden text of the worked trace replay for inp = 0..8.
std::string example5_text();

}  // namespace actmux
