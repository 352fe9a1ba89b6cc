#pragma once

// End-to-end pipeline on a problem (reduction, presentation, witnesses) and
// its JSON document form.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mtorus/mapping_torus.hpp"
#include "mtorus/presentation.hpp"
#include "mtorus/problem.hpp"

namespace mtorus {

struct Witness {
  std::string name;
  /// Generator as rewritten after reduction, over the working stable letter.
  TorusWord rewritten;
  /// Over the working stable letter and A symbols.
  TorusWord expression;
};

struct Run {
  Alphabet alphabet;
  Endo phi;
  std::vector<NamedWord> generators;
  SubgroupReduction reduction;
  /// True when the reduction changes nothing (m = 1, p = 0, b empty).
  bool trivial_reduction = false;
  /// theta of the reduction, or phi itself.
  Endo working;
  std::string stable_letter;
  std::optional<Presentation> presentation;  // absent in the free case
  std::vector<Witness> witnesses;
  VerifyReport report;
  /// Every witness expands to a word equal to its rewritten generator.
  bool witnesses_ok = false;

  bool free_case() const { return std::holds_alternative<FreeCase>(reduction); }
  bool ok() const { return report.ok() && witnesses_ok; }
};

/// Throws Error for a non-injective endomorphism or an empty or trivial
/// subgroup.
Run run_problem(const Problem& problem, const PresentOptions& options = {});

/// Symbol names a1.., b1.. for A u B.
Alphabet symbol_alphabet(std::size_t a_count, std::size_t b_count);

std::string format_presentation(const Run& run);
std::string format_run(const Run& run);
nlohmann::ordered_json to_json(const Run& run);

struct DocumentReport {
  bool header = false;       // alphabet and endomorphism match the problem
  bool presentation = false; // verify_presentation on the stored data
  bool certificate = false;  // stored levels recomputed and free
  bool witnesses = false;    // each expression equals its generator
  std::vector<std::string> messages;

  bool ok() const { return header && presentation && certificate && witnesses; }
};

/// Re-checks a machine document against the problem it was produced from.
/// Throws ParseError for a structurally invalid document.
DocumentReport verify_document(const nlohmann::json& doc, const Problem& problem);

}  // namespace mtorus
