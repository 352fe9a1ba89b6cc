#pragma once

// Presentations <t, A, B | t a_j t^-1 = w_j> of subgroups <t, A> of a
// mapping torus, built from a tight invariant graph pair of small relative
// rank and certified to a fixed depth.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtorus/freegroup.hpp"
#include "mtorus/graph_pair.hpp"
#include "mtorus/mapping_torus.hpp"

namespace mtorus {

/// Relator t a_j t^-1 = w_j. Symbols of w index A first, then B.
struct Relator {
  std::size_t index = 0;  // j, 1-based
  Word w;

  friend bool operator==(const Relator&, const Relator&) = default;
};

/// Level i asserts that A u B u phi(B) u ... u phi^(i-1)(B) freely
/// generates.
struct CertificateLevel {
  int level = 0;
  std::size_t word_count = 0;
  int rank = 0;
  bool free = false;
};

struct Certificate {
  std::vector<CertificateLevel> levels;

  /// First level whose verdict is false.
  std::optional<int> failed_level() const;
};

struct Presentation {
  std::vector<Word> a;
  std::vector<Word> b;
  std::vector<Relator> relators;
  int certified_depth = 0;
  int restart_count = 0;
  /// Relative rank of the first, untightened pair.
  int initial_relative_rank = 0;
  Certificate certificate;
  /// Final tight pair; its X part carries <A>.
  LabeledGraphPair pair;

  int relative_rank() const { return static_cast<int>(b.size()); }
};

/// x-parts of the normal forms of the generators, identity dropped.
std::vector<Word> collect_A(std::span<const TorusWord> gens, const Endo& phi);

struct PresentOptions {
  int depth = 8;
  /// Certification levels evaluated concurrently.
  int jobs = 1;
  /// Sees every pair tightening, including restarts.
  PairObserver observer;
};

/// Throws Error if phi is not injective, std::invalid_argument if depth < 1.
Presentation present(const Endo& phi, std::span<const Word> a, const PresentOptions& options = {});

/// Levels 1..depth, stopping after the first failure.
Certificate certify_depth(std::span<const Word> a, std::span<const Word> b, const Endo& phi, int depth, int jobs = 1);

struct VerifyReport {
  bool relator_words = false;   // each w_j expands to phi(a_j)
  bool same_subgroup = false;   // <A, phi(A)> = <A, B>
  bool torus_relators = false;  // each relator is trivial in the torus
  std::vector<std::string> messages;

  bool ok() const { return relator_words && same_subgroup && torus_relators; }
};

VerifyReport verify_presentation(const Presentation& pres, const Endo& phi);

/// Expansion of w_j through A u B.
Word expand_relator_word(const Presentation& pres, const Word& w);

/// Relator t a_j t^-1 w_j^-1 over {t} u E.
TorusWord relator_word(const Presentation& pres, const Relator& rel);

/// g as t^-q (word in A) t^r. In the result, generator k stands for a_(k+1)
/// and the stable letter for t. Throws Error if g's free part does not lie in
/// <A>.
TorusWord express_generator(const TorusWord& g, const Presentation& pres, const Endo& phi);

/// Substitutes a-words for A symbols in an express_generator result.
TorusWord expand_generator_expression(const TorusWord& expr, const Presentation& pres);

}  // namespace mtorus
