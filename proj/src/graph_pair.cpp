#include "mtorus/graph_pair.hpp"

#include <sstream>
#include <stdexcept>

namespace mtorus {

LabeledGraphPair::LabeledGraphPair(LabeledGraph z, std::vector<bool> x_vertices, std::vector<bool> x_edges)
    : z_(std::move(z)), x_vertices_(std::move(x_vertices)), x_edges_(std::move(x_edges)) {
  if (x_vertices_.size() != static_cast<std::size_t>(z_.vertex_count()) ||
      x_edges_.size() != static_cast<std::size_t>(z_.edge_count())) {
    throw std::invalid_argument("subgraph marking does not match the overgraph");
  }
  if (!x_vertices_[static_cast<std::size_t>(z_.basepoint())]) throw std::invalid_argument("subgraph must contain the basepoint");
  for (EdgeId e = 0; e < z_.edge_count(); ++e) {
    const Edge& ed = z_.edge(e);
    if (x_edges_[static_cast<std::size_t>(e)] &&
        !(x_vertices_[static_cast<std::size_t>(ed.origin)] && x_vertices_[static_cast<std::size_t>(ed.terminus)])) {
      throw std::invalid_argument("subgraph edge with an endpoint outside the subgraph");
    }
  }
}

LabeledGraphPair LabeledGraphPair::from_bouquets(std::span<const Word> inner, std::span<const Word> outer) {
  LabeledGraph z;
  for (const auto& w : inner) add_circle(z, w);
  const int x_edges = z.edge_count();
  const int x_vertices = z.vertex_count();
  for (const auto& w : outer) add_circle(z, w);
  std::vector<bool> xv(static_cast<std::size_t>(z.vertex_count()), false);
  std::vector<bool> xe(static_cast<std::size_t>(z.edge_count()), false);
  // add_circle numbers new vertices and edges consecutively.
  for (int v = 0; v < x_vertices; ++v) xv[static_cast<std::size_t>(v)] = true;
  for (int e = 0; e < x_edges; ++e) xe[static_cast<std::size_t>(e)] = true;
  return LabeledGraphPair(std::move(z), std::move(xv), std::move(xe));
}

int LabeledGraphPair::x_vertex_count() const {
  int n = 0;
  for (const bool b : x_vertices_) n += b ? 1 : 0;
  return n;
}

int LabeledGraphPair::x_edge_count() const {
  int n = 0;
  for (const bool b : x_edges_) n += b ? 1 : 0;
  return n;
}

LabeledGraph LabeledGraphPair::subgraph() const {
  std::vector<VertexId> renum(x_vertices_.size(), -1);
  int count = 0;
  for (std::size_t v = 0; v < x_vertices_.size(); ++v) {
    if (x_vertices_[v]) renum[v] = count++;
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < z_.edge_count(); ++e) {
    if (!x_edges_[static_cast<std::size_t>(e)]) continue;
    const Edge& ed = z_.edge(e);
    edges.push_back({renum[static_cast<std::size_t>(ed.origin)], renum[static_cast<std::size_t>(ed.terminus)], ed.label});
  }
  return LabeledGraph(count, std::move(edges), renum[static_cast<std::size_t>(z_.basepoint())]);
}

std::string to_string(FoldKind kind) {
  switch (kind) {
    case FoldKind::Subgraph: return "subgraph";
    case FoldKind::Exceptional: return "exceptional";
    case FoldKind::Plain: return "plain";
  }
  return "plain";
}

LabeledGraphPair initial_pair(std::span<const Word> a, const Endo& phi) {
  std::vector<Word> images;
  images.reserve(a.size());
  for (const auto& w : a) {
    if (w.empty()) throw std::invalid_argument("subgroup generators must be nontrivial words");
    images.push_back(phi(w));
  }
  return LabeledGraphPair::from_bouquets(a, images);
}

FoldClass classify_fold(const LabeledGraphPair& pair, EdgeId e1, EdgeId e2) {
  const LabeledGraph& z = pair.overgraph();
  if (e1 == e2 || e1 < 0 || e2 < 0 || e1 >= z.edge_count() || e2 >= z.edge_count()) {
    throw std::invalid_argument("illegal fold pair");
  }
  const Edge& a = z.edge(e1);
  const Edge& b = z.edge(e2);
  if (a.label != b.label || (a.origin != b.origin && a.terminus != b.terminus)) {
    throw std::invalid_argument("illegal fold pair");
  }
  if (pair.in_x(e1) && pair.in_x(e2)) return {FoldKind::Subgraph};
  const bool bigon = a.origin == b.origin && a.terminus == b.terminus;
  if (bigon) return {FoldKind::Plain};
  const bool out = a.origin == b.origin;
  const VertexId p1 = out ? a.terminus : a.origin;
  const VertexId p2 = out ? b.terminus : b.origin;
  if (p1 != p2 && pair.vertex_in_x(p1) && pair.vertex_in_x(p2)) return {FoldKind::Exceptional, p1, p2};
  return {FoldKind::Plain};
}

int relative_rank(const LabeledGraphPair& pair) { return pair.overgraph().rank() - pair.x_rank(); }

bool is_invariant(const LabeledGraphPair& pair, const Endo& phi) {
  const LabeledGraph x = quick_tighten(pair.subgraph());
  const LabeledGraph z = quick_tighten(pair.overgraph());
  for (const auto& a : basis_from_tree(x, spanning_tree(x))) {
    if (!contains(z, phi(a))) return false;
  }
  return true;
}

PairStepResult fold_and_add_loop(const LabeledGraphPair& pair, EdgeId e1, EdgeId e2, const Endo& phi) {
  PairStep step;
  step.fold_class = classify_fold(pair, e1, e2);
  step.rr_before = relative_rank(pair);
  step.x_vertices_before = pair.x_vertex_count();
  step.z_edges_before = pair.overgraph().edge_count();

  if (step.fold_class.kind == FoldKind::Exceptional) {
    // Nested tree: its X part spans X, so both paths stay inside X.
    const LabeledGraph& z = pair.overgraph();
    const TreeData tree = spanning_tree(z, pair.x_edges());
    step.delta = tree_label(z, tree, step.fold_class.p1) * tree_label(z, tree, step.fold_class.p2).inverse();
  }

  FoldResult folded = fold(pair.overgraph(), e1, e2);
  step.fold = folded.record;

  std::vector<bool> xv(static_cast<std::size_t>(folded.graph.vertex_count()), false);
  std::vector<bool> xe(static_cast<std::size_t>(folded.graph.edge_count()), false);
  for (std::size_t v = 0; v < folded.vertex_map.size(); ++v) {
    if (pair.x_vertices()[v]) xv[static_cast<std::size_t>(folded.vertex_map[v])] = true;
  }
  for (std::size_t e = 0; e < folded.edge_map.size(); ++e) {
    if (pair.x_edges()[e]) xe[static_cast<std::size_t>(folded.edge_map[e])] = true;
  }

  LabeledGraph z = std::move(folded.graph);
  if (step.delta) {
    const Word image = phi(*step.delta);
    if (!contains(quick_tighten(z), image)) {
      add_circle(z, image);
      xv.resize(static_cast<std::size_t>(z.vertex_count()), false);
      xe.resize(static_cast<std::size_t>(z.edge_count()), false);
      step.added_loop = image;
    }
  }

  PairStepResult out{LabeledGraphPair(std::move(z), std::move(xv), std::move(xe)), step};
  out.step.rr_after = relative_rank(out.pair);
  out.step.x_vertices_after = out.pair.x_vertex_count();
  out.step.z_edges_after = out.pair.overgraph().edge_count();
  return out;
}

PairTightening tighten_pair(LabeledGraphPair pair, const Endo& phi, const PairObserver& observer) {
  PairTightening out;
  if (observer) observer(pair, nullptr);
  while (true) {
    auto violation = find_violation(pair.overgraph(), pair.x_edges());
    if (!violation) violation = find_violation(pair.overgraph());
    if (!violation) break;
    PairStepResult r = fold_and_add_loop(pair, violation->first, violation->second, phi);
    pair = std::move(r.pair);
    out.trace.push_back(std::move(r.step));
    if (observer) observer(pair, &out.trace.back());
  }
  out.pair = std::move(pair);
  return out;
}

std::string format_pair_trace(const PairTrace& trace, const Alphabet& names) {
  std::ostringstream os;
  for (const auto& s : trace) {
    os << "FOLD e" << s.fold.first << " e" << s.fold.second << " -> e" << s.fold.survivor << ' '
       << to_string(s.fold_class.kind) << " rr " << s.rr_before << " -> " << s.rr_after << '\n';
    if (s.added_loop) os << "LOOP " << names.format(*s.added_loop) << '\n';
  }
  return os.str();
}

std::string to_dot(const LabeledGraphPair& pair, const Alphabet* names) {
  return to_dot(pair.overgraph(), names, pair.x_edges());
}

}  // namespace mtorus
