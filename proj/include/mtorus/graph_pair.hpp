#pragma once

// Labeled graph pairs (Z, X): X is a connected subgraph of Z through the
// basepoint, stored as a marking of Z's vertices and edges so that folding
// Z transports X to its image.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtorus/freegroup.hpp"
#include "mtorus/labeled_graph.hpp"

namespace mtorus {

class LabeledGraphPair {
 public:
  LabeledGraphPair() : x_vertices_(1, true) {}
  /// Throws std::invalid_argument if the marking is inconsistent (an X edge
  /// with an endpoint outside X, or the basepoint outside X).
  LabeledGraphPair(LabeledGraph z, std::vector<bool> x_vertices, std::vector<bool> x_edges);

  /// X = bouquet(inner), Z = bouquet(inner ++ outer) with X the first circles.
  static LabeledGraphPair from_bouquets(std::span<const Word> inner, std::span<const Word> outer);

  const LabeledGraph& overgraph() const { return z_; }
  const std::vector<bool>& x_vertices() const { return x_vertices_; }
  const std::vector<bool>& x_edges() const { return x_edges_; }
  bool in_x(EdgeId e) const { return x_edges_.at(static_cast<std::size_t>(e)); }
  bool vertex_in_x(VertexId v) const { return x_vertices_.at(static_cast<std::size_t>(v)); }

  int x_vertex_count() const;
  int x_edge_count() const;
  int x_rank() const { return x_edge_count() - x_vertex_count() + 1; }

  /// X as a standalone graph, vertices renumbered in ascending order.
  LabeledGraph subgraph() const;

  friend bool operator==(const LabeledGraphPair&, const LabeledGraphPair&) = default;

 private:
  LabeledGraph z_;
  std::vector<bool> x_vertices_;
  std::vector<bool> x_edges_;
};

enum class FoldKind { Subgraph, Exceptional, Plain };

struct FoldClass {
  FoldKind kind = FoldKind::Plain;
  /// The two distinct X vertices identified by an exceptional fold.
  VertexId p1 = -1;
  VertexId p2 = -1;

  friend bool operator==(const FoldClass&, const FoldClass&) = default;
};

std::string to_string(FoldKind kind);

/// Z = X(A u phi(A)), X = X(A). Throws std::invalid_argument on empty words.
LabeledGraphPair initial_pair(std::span<const Word> a, const Endo& phi);

/// Which of the three cases the Z-fold of (e1, e2) induces on X.
FoldClass classify_fold(const LabeledGraphPair& pair, EdgeId e1, EdgeId e2);

int relative_rank(const LabeledGraphPair& pair);

/// phi maps every basis element of X's subgroup into Z's subgroup.
bool is_invariant(const LabeledGraphPair& pair, const Endo& phi);

struct PairStep {
  FoldRecord fold;
  FoldClass fold_class;
  /// Loop created in X by an exceptional fold.
  std::optional<Word> delta;
  /// phi(delta), when it had to be wedged onto Z.
  std::optional<Word> added_loop;
  int rr_before = 0;
  int rr_after = 0;
  int x_vertices_before = 0;
  int x_vertices_after = 0;
  int z_edges_before = 0;
  int z_edges_after = 0;
};

struct PairStepResult {
  LabeledGraphPair pair;
  PairStep step;
};

/// Folds e1, e2 in Z and, for an exceptional fold whose loop delta has
/// phi(delta) outside the folded Z's subgroup, wedges a circle reading
/// phi(delta) at the basepoint. delta reads the X spanning-tree paths to the
/// identified vertices.
PairStepResult fold_and_add_loop(const LabeledGraphPair& pair, EdgeId e1, EdgeId e2, const Endo& phi);

using PairTrace = std::vector<PairStep>;

struct PairTightening {
  LabeledGraphPair pair;
  PairTrace trace;
};

using PairObserver = std::function<void(const LabeledGraphPair&, const PairStep*)>;

/// Subgraph folds while X is not tight, then fold-and-add-loop while Z is
/// not tight. The observer, if set, sees the input pair (step null) and the
/// pair after every step.
PairTightening tighten_pair(LabeledGraphPair pair, const Endo& phi, const PairObserver& observer = {});

/// One line per step: `FOLD e<i> e<j> -> e<k> <class>` plus `LOOP <word>`
/// when a loop was added.
std::string format_pair_trace(const PairTrace& trace, const Alphabet& names);

/// DOT rendering with X drawn bold.
std::string to_dot(const LabeledGraphPair& pair, const Alphabet* names = nullptr);

}  // namespace mtorus
