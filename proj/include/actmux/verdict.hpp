#pragma once

#include <string>

namespace actmux {

enum class Verdict { Derivable, Underivable, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Derivable: return "Derivable";
    case Verdict::Underivable: return "Underivable";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

inline bool definite(Verdict v) { return v != Verdict::Unknown; }

// Three-valued truth used by the arithmetic evaluators.
enum class Truth { True, False, Unknown };

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::True: return "True";
    case Truth::False: return "False";
    case Truth::Unknown: return "Unknown";
  }
  return "?";
}

}  // namespace actmux
