#include <gtest/gtest.h>

#include "mtorus/graph_pair.hpp"
#include "support.hpp"

using namespace mtorus;

namespace {

const Alphabet kE3 = Alphabet::numbered(3);
const Alphabet kE1 = Alphabet::numbered(1);

Word w(const std::string& s) { return kE3.parse(s); }

Endo example_phi() { return Endo(3, {w("e2"), w("e2^-1 e3 e2"), w("e2 e1^-1 e2")}); }

std::vector<Word> example_a() { return {w("e3^-1 e1"), w("e2^-1 e3^-1 e1 e1 e3^-1 e1")}; }

// Inverses and cyclic rotations describe the same circle.
bool same_circle(const Word& a, const Word& b) { return same_subgroup(std::vector<Word>{a}, std::vector<Word>{b}); }

}  // namespace

TEST(Pair, ValidatesMarking) {
  const LabeledGraph z(2, {{0, 1, 0}, {1, 0, 1}});
  EXPECT_THROW(LabeledGraphPair(z, {true}, {false, false}), std::invalid_argument);
  EXPECT_THROW(LabeledGraphPair(z, {false, true}, {false, false}), std::invalid_argument);
  EXPECT_THROW(LabeledGraphPair(z, {true, false}, {true, false}), std::invalid_argument);
  EXPECT_NO_THROW(LabeledGraphPair(z, {true, false}, {false, false}));
}

TEST(InitialPair, ExampleShape) {
  const LabeledGraphPair p = initial_pair(example_a(), example_phi());
  EXPECT_EQ(p.x_edge_count(), 2 + 6);
  EXPECT_EQ(p.overgraph().edge_count(), 2 + 6 + 2 + 4);
  EXPECT_EQ(p.x_rank(), 2);
  EXPECT_EQ(relative_rank(p), 2);
  EXPECT_TRUE(is_invariant(p, example_phi()));
  const LabeledGraph x = p.subgraph();
  EXPECT_EQ(x.edge_count(), 8);
  EXPECT_EQ(x.rank(), 2);
}

TEST(InitialPair, IdentityAndSquare) {
  const std::vector<Word> a{w("e1"), w("e2"), w("e3 e1")};
  EXPECT_EQ(relative_rank(initial_pair(a, Endo::identity(3))), 3);
  const Endo sq(1, {kE1.parse("e1 e1")});
  EXPECT_EQ(relative_rank(initial_pair(std::vector<Word>{kE1.parse("e1")}, sq)), 1);
  EXPECT_THROW(initial_pair(std::vector<Word>{Word{}}, sq), std::invalid_argument);
}

TEST(RelativeRank, EqualGraphsHaveZero) {
  const LabeledGraph z = bouquet(std::vector<Word>{w("e1"), w("e2")});
  const LabeledGraphPair p(z, {true}, {true, true});
  EXPECT_EQ(relative_rank(p), 0);
}

TEST(Invariance, DetectsEscapingImages) {
  const Alphabet e2 = Alphabet::numbered(2);
  const Endo phi(2, {e2.parse("e2"), e2.parse("e1")});
  const LabeledGraphPair p(bouquet(std::vector<Word>{e2.parse("e1")}), {true}, {true});
  EXPECT_FALSE(is_invariant(p, phi));
  EXPECT_TRUE(is_invariant(p, Endo::identity(2)));
}

TEST(ClassifyFold, Trichotomy) {
  // Z: loop e1 in X at the basepoint, plus an outside e1 edge 0 -> 1.
  const LabeledGraph z(2, {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  const LabeledGraphPair p(z, {true, false}, {true, false, true});
  EXPECT_EQ(classify_fold(p, 0, 2).kind, FoldKind::Subgraph);
  EXPECT_EQ(classify_fold(p, 0, 1).kind, FoldKind::Plain);  // far endpoint 1 is outside X
  EXPECT_THROW(classify_fold(p, 0, 0), std::invalid_argument);

  // Two X vertices reached by equally labeled edges, one of them outside X.
  const LabeledGraph z2(2, {{0, 1, 1}, {1, 0, 2}, {0, 0, 1}});
  const LabeledGraphPair p2(z2, {true, true}, {true, true, false});
  const FoldClass c = classify_fold(p2, 0, 2);
  EXPECT_EQ(c.kind, FoldKind::Exceptional);
  EXPECT_EQ(c.p1 + c.p2, 1);

  // Bigon with one edge outside X.
  const LabeledGraph z3(2, {{0, 1, 0}, {0, 1, 0}, {1, 0, 1}});
  const LabeledGraphPair p3(z3, {true, true}, {true, false, true});
  EXPECT_EQ(classify_fold(p3, 0, 1).kind, FoldKind::Plain);
}

TEST(FoldAndAddLoop, PlainFoldKeepsX) {
  const LabeledGraph z(3, {{0, 0, 0}, {0, 1, 0}, {1, 2, 1}, {2, 0, 2}});
  const LabeledGraphPair p(z, {true, false, false}, {true, false, false, false});
  const Endo id = Endo::identity(3);
  const PairStepResult r = fold_and_add_loop(p, 0, 1, id);
  EXPECT_EQ(r.step.fold_class.kind, FoldKind::Plain);
  EXPECT_FALSE(r.step.added_loop);
  EXPECT_EQ(r.pair.x_rank(), 1);
  EXPECT_EQ(r.pair.x_edge_count(), 1);
}

TEST(FoldAndAddLoop, ExceptionalFoldWithMemberImageAddsNothing) {
  // Under the identity, Phi(delta) = delta already lies in the folded Z.
  const LabeledGraph z2(2, {{0, 1, 1}, {1, 0, 2}, {0, 0, 1}});
  const LabeledGraphPair p2(z2, {true, true}, {true, true, false});
  const PairStepResult r = fold_and_add_loop(p2, 0, 2, Endo::identity(3));
  EXPECT_EQ(r.step.fold_class.kind, FoldKind::Exceptional);
  ASSERT_TRUE(r.step.delta);
  EXPECT_FALSE(r.step.added_loop);
  EXPECT_LT(r.step.rr_after, r.step.rr_before);
}

TEST(TightenPair, ExampleDropsToOneWithOneExceptionalLoop) {
  const Endo phi = example_phi();
  const PairTightening t = tighten_pair(initial_pair(example_a(), phi), phi);
  EXPECT_EQ(relative_rank(t.pair), 1);
  EXPECT_TRUE(is_tight(t.pair.overgraph()));
  EXPECT_TRUE(is_invariant(t.pair, phi));
  int exceptional = 0;
  for (const auto& s : t.trace) {
    if (s.fold_class.kind != FoldKind::Exceptional) continue;
    ++exceptional;
    ASSERT_TRUE(s.added_loop);
    EXPECT_TRUE(same_circle(*s.added_loop, w("e2^-1 e3^-1 e2 e2")));
    ASSERT_TRUE(s.delta);
    EXPECT_EQ(phi(*s.delta), *s.added_loop);
  }
  EXPECT_EQ(exceptional, 1);
  const std::string text = format_pair_trace(t.trace, kE3);
  EXPECT_NE(text.find("exceptional"), std::string::npos);
  EXPECT_NE(text.find("LOOP"), std::string::npos);
}

TEST(TightenPair, SquareCollapsesToOneLoop) {
  const Endo sq(1, {kE1.parse("e1 e1")});
  const PairTightening t = tighten_pair(initial_pair(std::vector<Word>{kE1.parse("e1")}, sq), sq);
  EXPECT_EQ(relative_rank(t.pair), 0);
  EXPECT_EQ(t.pair.overgraph().edge_count(), 1);
  EXPECT_EQ(t.pair.overgraph().vertex_count(), 1);
  EXPECT_TRUE(t.pair.in_x(0));
}

TEST(TightenPair, TightPairIsUnchanged) {
  const LabeledGraphPair p(bouquet(std::vector<Word>{w("e1"), w("e2")}), {true}, {true, false});
  const PairTightening t = tighten_pair(p, Endo::identity(3));
  EXPECT_TRUE(t.trace.empty());
  EXPECT_EQ(t.pair, p);
}

TEST(TightenPair, ObserverSeesEveryStep) {
  const Endo phi = example_phi();
  std::size_t calls = 0;
  const PairTightening t =
      tighten_pair(initial_pair(example_a(), phi), phi, [&](const LabeledGraphPair&, const PairStep*) { ++calls; });
  EXPECT_EQ(calls, t.trace.size() + 1);
  EXPECT_NE(to_dot(t.pair, &kE3).find("bold"), std::string::npos);
}

// Fuzzed pairs.

TEST(PairProperty, MonotoneInvariantAndXGrows) {
  fuzz::Rng rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const int rank = fuzz::uniform(rng, 1, 4);
    const Endo phi = fuzz::random_injective(rng, rank);
    std::vector<Word> a;
    for (int i = fuzz::uniform(rng, 1, 3); i > 0; --i) a.push_back(fuzz::random_nonempty_word(rng, rank, 6));
    LabeledGraphPair pair = initial_pair(a, phi);
    ASSERT_TRUE(is_invariant(pair, phi));
    const int rr0 = relative_rank(pair);
    while (true) {
      auto v = find_violation(pair.overgraph(), pair.x_edges());
      if (!v) v = find_violation(pair.overgraph());
      if (!v) break;
      const bool bigon = pair.overgraph().edge(v->first).origin == pair.overgraph().edge(v->second).origin &&
                         pair.overgraph().edge(v->first).terminus == pair.overgraph().edge(v->second).terminus;
      const bool in_x = pair.in_x(v->first) && pair.in_x(v->second);
      PairStepResult r = fold_and_add_loop(pair, v->first, v->second, phi);
      ASSERT_LE(r.step.rr_after, r.step.rr_before);
      if (bigon && !in_x) ASSERT_LT(r.step.rr_after, r.step.rr_before);
      if (r.step.fold_class.kind == FoldKind::Exceptional && !r.step.added_loop) {
        ASSERT_LT(r.step.rr_after, r.step.rr_before);
      }
      ASSERT_TRUE(is_invariant(r.pair, phi));
      pair = std::move(r.pair);
    }
    ASSERT_LE(relative_rank(pair), rr0);
    const LabeledGraph x = pair.subgraph();
    for (const auto& word : a) ASSERT_TRUE(contains(quick_tighten(x), word));
    // The packaged driver makes the same choices.
    const PairTightening t = tighten_pair(initial_pair(a, phi), phi);
    ASSERT_EQ(t.pair, pair);
  }
}
