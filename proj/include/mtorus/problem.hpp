#pragma once

// Problem files:
//
//   # comment
//   [alphabet]
//   generators = "e1 e2 e3"
//   [endomorphism]
//   e1 = "e2"
//   [subgroup]
//   g1 = "t"
//   g2 = "e3^-1 e1"
//   [options]
//   depth = 8
//
// Without an [alphabet] section the generators are the endomorphism keys in
// natural order.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtorus/freegroup.hpp"
#include "mtorus/mapping_torus.hpp"

namespace mtorus {

struct NamedWord {
  std::string name;
  TorusWord word;
};

struct Problem {
  Alphabet alphabet;
  Endo phi;
  std::vector<NamedWord> subgroup;
  std::optional<int> depth;
  std::optional<int> jobs;
  std::optional<bool> trace;

  std::vector<TorusWord> generators() const;
};

/// Throws ParseError with the offending line and column.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::filesystem::path& path);

/// "e2" < "e10"; digit runs compare numerically.
bool natural_less(std::string_view a, std::string_view b);
Alphabet infer_alphabet(std::vector<std::string> names);

std::string read_file(const std::filesystem::path& path);

}  // namespace mtorus
