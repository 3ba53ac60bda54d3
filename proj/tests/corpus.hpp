#pragma once

#include <string>
#include <vector>

#include "exotic/presentation.hpp"

namespace corpus {

struct Entry {
  std::string label;
  exotic::Presentation presentation;
  std::size_t order;  // 0 when infinite
};

inline exotic::Presentation make(std::vector<std::string> gens, const std::vector<std::string>& rels) {
  exotic::Presentation bare(std::move(gens), {});
  std::vector<exotic::Word> words;
  for (const auto& r : rels) words.push_back(exotic::parse_relation(bare, r));
  return bare.with_relators(std::move(words));
}

/// Small groups whose orders are textbook facts.
inline std::vector<Entry> finite_groups() {
  return {
      {"trivial", make({"a"}, {"a"}), 1},
      {"C5", make({"a"}, {"a^5"}), 5},
      {"C2xC3", make({"a", "b"}, {"[a,b]", "a^2", "b^3"}), 6},
      {"C4xC4", make({"a", "b"}, {"[a,b]", "a^4", "b^4"}), 16},
      {"S3", make({"a", "b"}, {"a^2", "b^3", "(a*b)^2"}), 6},
      {"D5", make({"r", "s"}, {"r^5", "s^2", "s*r*s = r^-1"}), 10},
      {"Q8", make({"i", "j"}, {"i^4", "i^2 = j^2", "j^-1*i*j = i^-1"}), 8},
      {"A4", make({"a", "b"}, {"a^2", "b^3", "(a*b)^3"}), 12},
      {"S4", make({"a", "b"}, {"a^2", "b^3", "(a*b)^4"}), 24},
      {"A5", make({"a", "b"}, {"a^2", "b^3", "(a*b)^5"}), 60},
      {"trivial-by-collapse", make({"x", "y"}, {"x*y*x^-1 = y^2", "y*x*y^-1 = x^2"}), 1},
      {"C7-by-substitution", make({"x", "y", "z"}, {"x = y^2", "y = z^2", "z^7", "x*z = z*x"}), 7},
  };
}

}  // namespace corpus
