#pragma once

// Based labeled graphs over a free-group alphabet and Stallings folding.
//
// A tight graph (no two edges with the same label leave, or enter, the same
// vertex) is a partial deterministic automaton over signed letters, so
// membership and basis expression are single traversals.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtorus/freegroup.hpp"

namespace mtorus {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId origin = 0;
  VertexId terminus = 0;
  int label = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class LabeledGraph {
 public:
  /// A single basepoint vertex and no edges.
  LabeledGraph() = default;
  LabeledGraph(int vertex_count, std::vector<Edge> edges, VertexId basepoint = 0);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  VertexId basepoint() const { return basepoint_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }

  VertexId add_vertex() { return vertex_count_++; }
  EdgeId add_edge(const Edge& e);

  /// First Betti number |E| - |V| + 1.
  int rank() const { return edge_count() - vertex_count() + 1; }
  bool is_connected() const;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  int vertex_count_ = 1;
  std::vector<Edge> edges_;
  VertexId basepoint_ = 0;
};

/// Wedges a subdivided circle reading `w` at the basepoint; returns the new
/// edge ids in reading order. Throws std::invalid_argument for the empty word.
std::vector<EdgeId> add_circle(LabeledGraph& g, const Word& w);

/// X(W): one circle per word wedged at a common basepoint.
LabeledGraph bouquet(std::span<const Word> words);

/// A pair of distinct edges with the same label and a common origin (or
/// common terminus). Scan order: vertices ascending, labels ascending,
/// outgoing before incoming, lowest two edge ids. When `edge_mask` is
/// non-empty only edges with a true mask entry are considered.
std::optional<std::pair<EdgeId, EdgeId>> find_violation(const LabeledGraph& g,
                                                        const std::vector<bool>& edge_mask = {});
bool is_tight(const LabeledGraph& g);

struct FoldRecord {
  EdgeId first = 0;
  EdgeId second = 0;
  /// Id of the identified edge in the folded graph.
  EdgeId survivor = 0;
  /// (kept, removed) vertex ids, pre-renumbering, when far endpoints merged.
  std::optional<std::pair<VertexId, VertexId>> merged;
  bool bigon = false;

  friend bool operator==(const FoldRecord&, const FoldRecord&) = default;
};

struct FoldResult {
  LabeledGraph graph;
  FoldRecord record;
  /// Old vertex id -> new vertex id.
  std::vector<VertexId> vertex_map;
  /// Old edge id -> new edge id; both folded edges map to the survivor.
  std::vector<EdgeId> edge_map;
};

/// Identifies e1 and e2 (and their far endpoints). The higher edge id and
/// the higher merged vertex id are removed and the rest renumbered in order,
/// so the survivor is min(e1, e2). Throws std::invalid_argument unless the
/// edges are distinct, equally labeled and share an origin or a terminus.
FoldResult fold(const LabeledGraph& g, EdgeId e1, EdgeId e2);

using FoldTrace = std::vector<FoldRecord>;

/// One `FOLD e<i> e<j> -> e<k>` line per record.
std::string format_trace(const FoldTrace& trace);

struct Tightened {
  LabeledGraph graph;
  FoldTrace trace;
};

/// Folds in scan order until tight.
Tightened tighten_graph(LabeledGraph g);

/// Tight graph carrying the same subgroup, computed with union-find folding
/// and no trace. Agrees with tighten_graph up to based isomorphism; use it
/// for large membership and rank checks.
LabeledGraph quick_tighten(const LabeledGraph& g);

struct TreeStep {
  EdgeId edge = 0;
  int sign = 1;  // +1 traverses origin -> terminus

  friend bool operator==(const TreeStep&, const TreeStep&) = default;
};

struct TreeData {
  std::vector<bool> in_tree;  // per edge
  /// Step from the parent into each vertex; edge -1 at the basepoint.
  std::vector<TreeStep> parent;
  std::vector<VertexId> parent_vertex;  // -1 at the basepoint
  /// Non-tree edges in ascending id order; entry k is basis symbol k.
  std::vector<EdgeId> basis_edges;
  /// Edge id -> basis symbol, -1 for tree edges.
  std::vector<int> symbol_of_edge;
};

/// Tree path from the basepoint to v.
std::vector<TreeStep> tree_path(const TreeData& tree, VertexId v);
/// Label word read along tree_path.
Word tree_label(const LabeledGraph& g, const TreeData& tree, VertexId v);

/// Breadth-first spanning tree from the basepoint. Neighbors are visited by
/// (label, outgoing before incoming, edge id).
TreeData spanning_tree(const LabeledGraph& g);

/// Nested spanning tree: breadth-first over the `first`-marked edges only,
/// then continued over the whole graph. The restriction to the marked
/// subgraph is a spanning tree of it (when that subgraph is connected and
/// contains the basepoint).
TreeData spanning_tree(const LabeledGraph& g, const std::vector<bool>& first);

/// One word per non-tree edge, in TreeData::basis_edges order.
std::vector<Word> basis_from_tree(const LabeledGraph& g, const TreeData& tree);

struct GraphPath {
  std::vector<TreeStep> steps;
  VertexId end = 0;
};

/// Reads `w` from the basepoint. Returns nullopt on a missing transition.
std::optional<GraphPath> trace(const LabeledGraph& g, const Word& w);

/// w traces a closed loop at the basepoint.
bool contains(const LabeledGraph& g, const Word& w);

/// Writes a member of g's subgroup as a word over basis symbols
/// (symbol k = TreeData::basis_edges[k]). Throws Error if w is not a member.
Word express_in_basis(const LabeledGraph& g, const TreeData& tree, const Word& w);

/// Substitutes basis words for symbols.
Word expand_basis_word(const Word& symbols, std::span<const Word> basis);

/// Prunes valence-1 vertices other than the basepoint until none remain.
LabeledGraph core(const LabeledGraph& g);

/// Based, label-preserving isomorphism between tight graphs, decided by a
/// synchronized traversal from the basepoints.
bool isomorphic_based(const LabeledGraph& g1, const LabeledGraph& g2);

/// Same subgroup: cores of the tightened graphs are based-isomorphic.
bool same_subgroup(std::span<const Word> u, std::span<const Word> v);

/// Graphviz rendering. Edges with a true `highlight` entry are drawn bold.
std::string to_dot(const LabeledGraph& g, const Alphabet* names = nullptr,
                   const std::vector<bool>& highlight = {});

}  // namespace mtorus
