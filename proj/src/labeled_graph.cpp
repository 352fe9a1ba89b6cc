#include "mtorus/labeled_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mtorus/error.hpp"

namespace mtorus {

namespace {

// Transition key of a signed label: 2*label for outgoing, 2*label+1 for
// incoming. Sorting keys gives (label, outgoing before incoming).
int key_of(int label, int sign) { return 2 * label + (sign > 0 ? 0 : 1); }

// Per-vertex (key, edge) lists, sorted by (key, edge id).
std::vector<std::vector<std::pair<int, EdgeId>>> transitions(const LabeledGraph& g,
                                                             const std::vector<bool>& mask = {}) {
  std::vector<std::vector<std::pair<int, EdgeId>>> out(static_cast<std::size_t>(g.vertex_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!mask.empty() && !mask[static_cast<std::size_t>(e)]) continue;
    const Edge& ed = g.edge(e);
    out[static_cast<std::size_t>(ed.origin)].emplace_back(key_of(ed.label, +1), e);
    out[static_cast<std::size_t>(ed.terminus)].emplace_back(key_of(ed.label, -1), e);
  }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

VertexId far_end(const Edge& e, int sign) { return sign > 0 ? e.terminus : e.origin; }

}  // namespace

LabeledGraph::LabeledGraph(int vertex_count, std::vector<Edge> edges, VertexId basepoint)
    : vertex_count_(vertex_count), edges_(std::move(edges)), basepoint_(basepoint) {
  if (vertex_count_ < 1) throw std::invalid_argument("a labeled graph needs at least one vertex");
  if (basepoint_ < 0 || basepoint_ >= vertex_count_) throw std::invalid_argument("basepoint out of range");
  for (const auto& e : edges_) {
    if (e.origin < 0 || e.origin >= vertex_count_ || e.terminus < 0 || e.terminus >= vertex_count_ || e.label < 0) {
      throw std::invalid_argument("edge endpoint or label out of range");
    }
  }
}

EdgeId LabeledGraph::add_edge(const Edge& e) {
  if (e.origin < 0 || e.origin >= vertex_count_ || e.terminus < 0 || e.terminus >= vertex_count_ || e.label < 0) {
    throw std::invalid_argument("edge endpoint or label out of range");
  }
  edges_.push_back(e);
  return edge_count() - 1;
}

bool LabeledGraph::is_connected() const {
  std::vector<VertexId> parent(static_cast<std::size_t>(vertex_count_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  int components = vertex_count_;
  for (const auto& e : edges_) {
    const VertexId a = find(e.origin), b = find(e.terminus);
    if (a != b) {
      parent[static_cast<std::size_t>(b)] = a;
      --components;
    }
  }
  return components == 1;
}

std::vector<EdgeId> add_circle(LabeledGraph& g, const Word& w) {
  if (w.empty()) throw std::invalid_argument("cannot wedge a circle for the empty word");
  std::vector<EdgeId> ids;
  VertexId prev = g.basepoint();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const VertexId next = i + 1 == w.size() ? g.basepoint() : g.add_vertex();
    const Letter& l = w[i];
    ids.push_back(l.sign > 0 ? g.add_edge({prev, next, l.gen}) : g.add_edge({next, prev, l.gen}));
    prev = next;
  }
  return ids;
}

LabeledGraph bouquet(std::span<const Word> words) {
  LabeledGraph g;
  for (const auto& w : words) add_circle(g, w);
  return g;
}

std::optional<std::pair<EdgeId, EdgeId>> find_violation(const LabeledGraph& g,
                                                        const std::vector<bool>& edge_mask) {
  const auto table = transitions(g, edge_mask);
  for (const auto& list : table) {
    // Sorted by (key, id): the first adjacent equal-key pair is the answer
    // for this vertex.
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].first == list[i - 1].first) return std::pair{list[i - 1].second, list[i].second};
    }
  }
  return std::nullopt;
}

bool is_tight(const LabeledGraph& g) { return !find_violation(g).has_value(); }

FoldResult fold(const LabeledGraph& g, EdgeId e1, EdgeId e2) {
  if (e1 == e2 || e1 < 0 || e2 < 0 || e1 >= g.edge_count() || e2 >= g.edge_count()) {
    throw std::invalid_argument("fold needs two distinct edges of the graph");
  }
  const Edge& a = g.edge(e1);
  const Edge& b = g.edge(e2);
  if (a.label != b.label) throw std::invalid_argument("folded edges must carry the same label");
  int side;
  if (a.origin == b.origin) {
    side = +1;
  } else if (a.terminus == b.terminus) {
    side = -1;
  } else {
    throw std::invalid_argument("folded edges must share an origin or a terminus");
  }

  FoldRecord rec;
  rec.first = e1;
  rec.second = e2;
  rec.bigon = a.origin == b.origin && a.terminus == b.terminus;

  const VertexId f1 = far_end(a, side), f2 = far_end(b, side);
  const VertexId kept = std::min(f1, f2), removed = std::max(f1, f2);
  const bool merge = f1 != f2;
  if (merge) rec.merged = std::pair{kept, removed};

  FoldResult out;
  out.vertex_map.resize(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    VertexId target = merge && v == removed ? kept : v;
    if (merge && target > removed) --target;
    out.vertex_map[static_cast<std::size_t>(v)] = target;
  }

  const EdgeId lo = std::min(e1, e2), hi = std::max(e1, e2);
  rec.survivor = lo;
  out.edge_map.resize(static_cast<std::size_t>(g.edge_count()));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count() - 1));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e == hi) {
      out.edge_map[static_cast<std::size_t>(e)] = lo;
      continue;
    }
    out.edge_map[static_cast<std::size_t>(e)] = static_cast<EdgeId>(edges.size());
    const Edge& ed = g.edge(e);
    edges.push_back({out.vertex_map[static_cast<std::size_t>(ed.origin)],
                     out.vertex_map[static_cast<std::size_t>(ed.terminus)], ed.label});
  }
  out.graph = LabeledGraph(g.vertex_count() - (merge ? 1 : 0), std::move(edges),
                           out.vertex_map[static_cast<std::size_t>(g.basepoint())]);
  out.record = rec;
  return out;
}

std::string format_trace(const FoldTrace& trace) {
  std::ostringstream os;
  for (const auto& r : trace) os << "FOLD e" << r.first << " e" << r.second << " -> e" << r.survivor << '\n';
  return os.str();
}

Tightened tighten_graph(LabeledGraph g) {
  Tightened out;
  while (auto v = find_violation(g)) {
    FoldResult r = fold(g, v->first, v->second);
    out.trace.push_back(r.record);
    g = std::move(r.graph);
  }
  out.graph = std::move(g);
  return out;
}

LabeledGraph quick_tighten(const LabeledGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::vector<std::pair<int, VertexId>>> table(n);
  std::vector<std::pair<VertexId, VertexId>> pending;

  auto find = [&](VertexId v) {
    VertexId root = v;
    while (parent[static_cast<std::size_t>(root)] != root) root = parent[static_cast<std::size_t>(root)];
    while (parent[static_cast<std::size_t>(v)] != root) {
      const VertexId next = parent[static_cast<std::size_t>(v)];
      parent[static_cast<std::size_t>(v)] = root;
      v = next;
    }
    return root;
  };
  auto insert = [&](VertexId at, int key, VertexId target) {
    auto& row = table[static_cast<std::size_t>(at)];
    for (const auto& [k, t] : row) {
      if (k == key) {
        pending.emplace_back(t, target);
        return;
      }
    }
    row.emplace_back(key, target);
  };
  auto drain = [&] {
    while (!pending.empty()) {
      auto [x, y] = pending.back();
      pending.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (table[static_cast<std::size_t>(x)].size() < table[static_cast<std::size_t>(y)].size()) std::swap(x, y);
      parent[static_cast<std::size_t>(y)] = x;
      auto moved = std::move(table[static_cast<std::size_t>(y)]);
      table[static_cast<std::size_t>(y)].clear();
      for (const auto& [k, t] : moved) insert(x, k, t);
    }
  };

  for (const auto& e : g.edges()) {
    const VertexId u = find(e.origin), v = find(e.terminus);
    insert(u, key_of(e.label, +1), v);
    insert(v, key_of(e.label, -1), u);
    drain();
  }

  // Classes numbered by their smallest original vertex id.
  std::vector<VertexId> class_id(n, -1);
  std::vector<VertexId> root_class(n, -1);
  int classes = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexId r = find(v);
    if (root_class[static_cast<std::size_t>(r)] < 0) root_class[static_cast<std::size_t>(r)] = classes++;
    class_id[static_cast<std::size_t>(v)] = root_class[static_cast<std::size_t>(r)];
  }
  std::vector<VertexId> root_of_class(static_cast<std::size_t>(classes));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (find(v) == v) root_of_class[static_cast<std::size_t>(class_id[static_cast<std::size_t>(v)])] = v;
  }
  std::vector<Edge> edges;
  for (int c = 0; c < classes; ++c) {
    auto row = table[static_cast<std::size_t>(root_of_class[static_cast<std::size_t>(c)])];
    std::sort(row.begin(), row.end());
    for (const auto& [k, t] : row) {
      if (k % 2 == 0) edges.push_back({c, class_id[static_cast<std::size_t>(find(t))], k / 2});
    }
  }
  return LabeledGraph(classes, std::move(edges), class_id[static_cast<std::size_t>(g.basepoint())]);
}

// ---------------------------------------------------------------------------

std::vector<TreeStep> tree_path(const TreeData& tree, VertexId v) {
  std::vector<TreeStep> path;
  while (tree.parent_vertex.at(static_cast<std::size_t>(v)) >= 0) {
    path.push_back(tree.parent[static_cast<std::size_t>(v)]);
    v = tree.parent_vertex[static_cast<std::size_t>(v)];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

Word path_label(const LabeledGraph& g, std::span<const TreeStep> steps) {
  std::vector<Letter> raw;
  raw.reserve(steps.size());
  for (const auto& s : steps) raw.push_back({g.edge(s.edge).label, s.sign});
  return Word(std::move(raw));
}

}  // namespace

Word tree_label(const LabeledGraph& g, const TreeData& tree, VertexId v) {
  return path_label(g, tree_path(tree, v));
}

TreeData spanning_tree(const LabeledGraph& g) { return spanning_tree(g, {}); }

TreeData spanning_tree(const LabeledGraph& g, const std::vector<bool>& first) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  TreeData t;
  t.in_tree.assign(static_cast<std::size_t>(g.edge_count()), false);
  t.parent.assign(n, TreeStep{-1, 1});
  t.parent_vertex.assign(n, -1);
  const auto table = transitions(g);
  std::vector<bool> seen(n, false);
  std::vector<VertexId> order{g.basepoint()};
  seen[static_cast<std::size_t>(g.basepoint())] = true;

  auto bfs = [&](std::size_t from, bool restricted) {
    for (std::size_t head = from; head < order.size(); ++head) {
      const VertexId v = order[head];
      for (const auto& [key, e] : table[static_cast<std::size_t>(v)]) {
        if (restricted && !first[static_cast<std::size_t>(e)]) continue;
        const int sign = key % 2 == 0 ? +1 : -1;
        const VertexId w = far_end(g.edge(e), sign);
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        t.in_tree[static_cast<std::size_t>(e)] = true;
        t.parent[static_cast<std::size_t>(w)] = {e, sign};
        t.parent_vertex[static_cast<std::size_t>(w)] = v;
        order.push_back(w);
      }
    }
  };
  if (!first.empty()) {
    bfs(0, true);
    bfs(0, false);
  } else {
    bfs(0, false);
  }
  if (order.size() != n) throw std::invalid_argument("spanning_tree requires a connected graph");

  t.symbol_of_edge.assign(static_cast<std::size_t>(g.edge_count()), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!t.in_tree[static_cast<std::size_t>(e)]) {
      t.symbol_of_edge[static_cast<std::size_t>(e)] = static_cast<int>(t.basis_edges.size());
      t.basis_edges.push_back(e);
    }
  }
  return t;
}

std::vector<Word> basis_from_tree(const LabeledGraph& g, const TreeData& tree) {
  std::vector<Word> out;
  out.reserve(tree.basis_edges.size());
  for (const EdgeId e : tree.basis_edges) {
    const Edge& ed = g.edge(e);
    out.push_back(tree_label(g, tree, ed.origin) * Word::generator(ed.label) *
                  tree_label(g, tree, ed.terminus).inverse());
  }
  return out;
}

std::optional<GraphPath> trace(const LabeledGraph& g, const Word& w) {
  const auto table = transitions(g);
  GraphPath path;
  VertexId at = g.basepoint();
  path.steps.reserve(w.size());
  for (const auto& l : w.letters()) {
    const int key = key_of(l.gen, l.sign);
    const auto& row = table[static_cast<std::size_t>(at)];
    const auto it = std::lower_bound(row.begin(), row.end(), std::pair<int, EdgeId>{key, -1});
    if (it == row.end() || it->first != key) return std::nullopt;
    path.steps.push_back({it->second, l.sign});
    at = far_end(g.edge(it->second), l.sign);
  }
  path.end = at;
  return path;
}

bool contains(const LabeledGraph& g, const Word& w) {
  const auto p = trace(g, w);
  return p && p->end == g.basepoint();
}

Word express_in_basis(const LabeledGraph& g, const TreeData& tree, const Word& w) {
  const auto p = trace(g, w);
  if (!p || p->end != g.basepoint()) throw Error("word is not in the subgroup carried by the graph");
  std::vector<Letter> raw;
  for (const auto& s : p->steps) {
    const int sym = tree.symbol_of_edge.at(static_cast<std::size_t>(s.edge));
    if (sym >= 0) raw.push_back({sym, s.sign});
  }
  return Word(std::move(raw));
}

Word expand_basis_word(const Word& symbols, std::span<const Word> basis) {
  Word out;
  for (const auto& l : symbols.letters()) {
    const Word& b = basis[static_cast<std::size_t>(l.gen)];
    out *= l.sign > 0 ? b : b.inverse();
  }
  return out;
}

LabeledGraph core(const LabeledGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> degree(n, 0);
  std::vector<std::vector<EdgeId>> incident(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    ++degree[static_cast<std::size_t>(ed.origin)];
    ++degree[static_cast<std::size_t>(ed.terminus)];
    incident[static_cast<std::size_t>(ed.origin)].push_back(e);
    if (ed.terminus != ed.origin) incident[static_cast<std::size_t>(ed.terminus)].push_back(e);
  }
  std::vector<bool> edge_alive(static_cast<std::size_t>(g.edge_count()), true);
  std::vector<bool> vertex_alive(n, true);
  std::deque<VertexId> leaves;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v != g.basepoint() && degree[static_cast<std::size_t>(v)] <= 1) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    const VertexId v = leaves.front();
    leaves.pop_front();
    if (!vertex_alive[static_cast<std::size_t>(v)]) continue;
    vertex_alive[static_cast<std::size_t>(v)] = false;
    for (const EdgeId e : incident[static_cast<std::size_t>(v)]) {
      if (!edge_alive[static_cast<std::size_t>(e)]) continue;
      edge_alive[static_cast<std::size_t>(e)] = false;
      const Edge& ed = g.edge(e);
      const VertexId other = ed.origin == v ? ed.terminus : ed.origin;
      if (--degree[static_cast<std::size_t>(other)] <= 1 && other != g.basepoint() &&
          vertex_alive[static_cast<std::size_t>(other)]) {
        leaves.push_back(other);
      }
    }
  }
  std::vector<VertexId> renum(n, -1);
  int count = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (vertex_alive[static_cast<std::size_t>(v)]) renum[static_cast<std::size_t>(v)] = count++;
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!edge_alive[static_cast<std::size_t>(e)]) continue;
    const Edge& ed = g.edge(e);
    edges.push_back({renum[static_cast<std::size_t>(ed.origin)], renum[static_cast<std::size_t>(ed.terminus)], ed.label});
  }
  return LabeledGraph(count, std::move(edges), renum[static_cast<std::size_t>(g.basepoint())]);
}

bool isomorphic_based(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return false;
  const auto t1 = transitions(g1);
  const auto t2 = transitions(g2);
  const auto n = static_cast<std::size_t>(g1.vertex_count());
  std::vector<VertexId> to2(n, -1), to1(n, -1);
  std::deque<VertexId> queue{g1.basepoint()};
  to2[static_cast<std::size_t>(g1.basepoint())] = g2.basepoint();
  to1[static_cast<std::size_t>(g2.basepoint())] = g1.basepoint();
  std::vector<bool> edge_used(static_cast<std::size_t>(g2.edge_count()), false);
  while (!queue.empty()) {
    const VertexId v1 = queue.front();
    queue.pop_front();
    const VertexId v2 = to2[static_cast<std::size_t>(v1)];
    const auto& r1 = t1[static_cast<std::size_t>(v1)];
    const auto& r2 = t2[static_cast<std::size_t>(v2)];
    if (r1.size() != r2.size()) return false;
    for (std::size_t i = 0; i < r1.size(); ++i) {
      if (r1[i].first != r2[i].first) return false;
      if (i > 0 && r1[i].first == r1[i - 1].first) return false;  // not tight
      const int sign = r1[i].first % 2 == 0 ? +1 : -1;
      const VertexId w1 = far_end(g1.edge(r1[i].second), sign);
      const VertexId w2 = far_end(g2.edge(r2[i].second), sign);
      VertexId& m12 = to2[static_cast<std::size_t>(w1)];
      VertexId& m21 = to1[static_cast<std::size_t>(w2)];
      if (m12 < 0 && m21 < 0) {
        m12 = w2;
        m21 = w1;
        queue.push_back(w1);
      } else if (m12 != w2 || m21 != w1) {
        return false;
      }
    }
  }
  return std::all_of(to2.begin(), to2.end(), [](VertexId v) { return v >= 0; });
}

bool same_subgroup(std::span<const Word> u, std::span<const Word> v) {
  auto graph_of = [](std::span<const Word> words) {
    std::vector<Word> nonempty;
    for (const auto& w : words) {
      if (!w.empty()) nonempty.push_back(w);
    }
    return core(quick_tighten(bouquet(nonempty)));
  };
  return isomorphic_based(graph_of(u), graph_of(v));
}

std::string to_dot(const LabeledGraph& g, const Alphabet* names, const std::vector<bool>& highlight) {
  std::ostringstream os;
  os << "digraph G {\n";
  os << "  node [shape=circle, label=\"\", width=0.15];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    os << "  v" << v;
    if (v == g.basepoint()) os << " [shape=doublecircle, width=0.25]";
    os << ";\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const std::string label =
        names && static_cast<std::size_t>(ed.label) < names->rank() ? names->name(ed.label) : "x" + std::to_string(ed.label + 1);
    os << "  v" << ed.origin << " -> v" << ed.terminus << " [label=\"" << label << "\"";
    if (!highlight.empty() && highlight[static_cast<std::size_t>(e)]) os << ", style=bold, penwidth=2";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mtorus
