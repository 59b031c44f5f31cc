#pragma once

#include "koz/dsl.hpp"

namespace koz {

struct CorpusEntry {
  enum class Kind { homogeneous, nonhomogeneous, potential };
  std::string key;
  Kind kind;
  int potential_N = 2;  // homogeneity degree used when kind == potential
  std::string text;     // document source in the input grammar
};

/// The built-in example corpus; every entry parses without error.
const std::vector<CorpusEntry>& builtin_corpus();

struct CorpusCheck {
  std::string entry;
  std::string check;
  bool passed = false;
  std::string detail;
};

/// Invariant suite over the corpus: parseability and print round trips,
/// d^N = 0 and the bimodule differential squaring to zero on homogeneous
/// entries, double-dual identity, condition checker agreement on the
/// nonhomogeneous entries, and preregularity of the potential entries.
std::vector<CorpusCheck> run_corpus_suite(int cap);

}  // namespace koz
