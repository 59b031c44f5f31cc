#pragma once

#include "koz/field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace koz {

using WordIndex = std::int64_t;

constexpr WordIndex kDefaultWordCap = 1'000'000;

/// d^n with the per-degree capacity guard. The word basis of E^(x)n is
/// enumerated by indices 0..d^n-1; reading an index in base d, most
/// significant digit first, gives the letters, so index order is deglex order.
inline WordIndex word_count(int d, int n, WordIndex cap = kDefaultWordCap) {
  WordIndex c = 1;
  for (int i = 0; i < n; ++i) {
    c *= d;
    if (c > cap) {
      throw CapacityError("degree " + std::to_string(n) + " exceeds word capacity (d=" +
                          std::to_string(d) + ")");
    }
  }
  return c;
}

inline std::vector<int> word_letters(WordIndex w, int d, int n) {
  std::vector<int> letters(n);
  for (int i = n - 1; i >= 0; --i) {
    letters[i] = static_cast<int>(w % d);
    w /= d;
  }
  return letters;
}

inline WordIndex word_from_letters(const std::vector<int>& letters, int d) {
  WordIndex w = 0;
  for (int l : letters) w = w * d + l;
  return w;
}

/// Concatenation: w1 of degree n1 followed by w2 of degree n2.
inline WordIndex word_concat(WordIndex w1, WordIndex w2, int d, int n2) {
  WordIndex c = 1;
  for (int i = 0; i < n2; ++i) c *= d;
  return w1 * c + w2;
}

inline int word_letter(WordIndex w, int d, int n, int pos) {
  // pos in [0, n), leftmost letter is pos 0
  for (int i = n - 1; i > pos; --i) w /= d;
  return static_cast<int>(w % d);
}

inline std::string word_str(WordIndex w, int d, int n,
                            const std::vector<std::string>& names = {}) {
  if (n == 0) return "1";
  auto ls = word_letters(w, d, n);
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i) s += ".";
    s += names.empty() ? ("x" + std::to_string(ls[i])) : names[ls[i]];
  }
  return s;
}

}  // namespace koz
