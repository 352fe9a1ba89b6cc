#pragma once

// Elements of the mapping torus <t, E | t e t^-1 = phi(e)> of an injective
// endomorphism phi, their normal forms t^-q x t^r, and the reduction of a
// finitely generated subgroup to one that contains the stable letter.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtorus/freegroup.hpp"
#include "mtorus/labeled_graph.hpp"

namespace mtorus {

/// Generator index used for the stable letter inside TorusWord.
inline constexpr int kStableGen = -1;

/// Word over {t} u E. Stored freely reduced; no other canonicity.
class TorusWord {
 public:
  TorusWord() = default;
  explicit TorusWord(std::vector<Letter> raw);
  TorusWord(const Word& w);  // NOLINT(google-explicit-constructor)

  static TorusWord stable(long power);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  TorusWord inverse() const;
  TorusWord pow(long n) const;

  friend TorusWord operator*(const TorusWord& u, const TorusWord& v);
  friend bool operator==(const TorusWord&, const TorusWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Parses the shared word grammar where `stable_name` denotes the stable
/// letter.
TorusWord parse_torus_word(const Alphabet& names, std::string_view text, std::string_view stable_name = "t");
std::string format_torus_word(const Alphabet& names, const TorusWord& w, std::string_view stable_name = "t");

/// Exponent sum of the stable letter.
long p_hom(const TorusWord& w);

/// t^-q x t^r.
struct NormalForm {
  long q = 0;
  Word x;
  long r = 0;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

TorusWord to_torus_word(const NormalForm& nf);
/// `t^-q · x · t^r`, with `t^0` when an exponent is zero.
std::string format_normal_form(const Alphabet& names, const NormalForm& nf, std::string_view stable_name = "t");

/// Tight graph of the phi-image subgroup with enough bookkeeping to pull
/// members back through phi. Construction throws Error when phi is not
/// injective.
class ImageOracle {
 public:
  explicit ImageOracle(const Endo& phi);

  const Endo& endo() const { return phi_; }
  const LabeledGraph& graph() const { return graph_; }
  bool contains(const Word& x) const;
  /// The unique y with phi(y) = x, if any.
  std::optional<Word> preimage(const Word& x) const;

 private:
  Endo phi_;
  LabeledGraph graph_;
  TreeData tree_;
  /// phi-preimage of each basis word of graph_.
  std::vector<Word> basis_preimages_;
};

/// Canonical t^-q x t^r: moves t right and t^-1 left with t x = phi(x) t and
/// x t^-1 = t^-1 phi(x), then cancels t^-1 y t -> phi^-1(y) while possible.
/// Throws Error if phi is not injective.
NormalForm normalize(const TorusWord& w, const Endo& phi);
NormalForm normalize(const TorusWord& w, const ImageOracle& oracle);

bool equal_in_torus(const TorusWord& g, const TorusWord& h, const Endo& phi);
bool equal_in_torus(const TorusWord& g, const TorusWord& h, const ImageOracle& oracle);

/// Every generator has p = 0; t^k H t^-k lies in the free group and is
/// free on `basis`.
struct FreeCase {
  long k = 0;
  std::vector<Word> basis;
};

/// p(H) = mZ with m > 0. After conjugating by t^p, the assignment
/// t^m -> b^-1 s identifies <t^m, E> with the mapping torus of theta, and
/// `rewritten` are the conjugated generators as words in {s} u E (the stable
/// letter of TorusWord now stands for s).
struct TCase {
  long m = 0;
  long p = 0;
  Word b;
  Endo theta;
  std::vector<TorusWord> rewritten;
};

using SubgroupReduction = std::variant<FreeCase, TCase>;

/// Throws Error for an empty list or a list of trivial elements.
SubgroupReduction reduce_subgroup(std::span<const TorusWord> gens, const Endo& phi);

/// Inverse of the TCase rewriting: s -> b t^m, then conjugation by t^-p.
TorusWord substitute_back(const TorusWord& rewritten, const TCase& reduction);

}  // namespace mtorus
