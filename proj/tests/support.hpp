#pragma once

// Random instances and independent oracles shared by the test binaries.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "mtorus/freegroup.hpp"
#include "mtorus/labeled_graph.hpp"
#include "mtorus/mapping_torus.hpp"

namespace mtorus::fuzz {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Word random_word(Rng& rng, int rank, int max_len, int min_len = 0) {
  const int len = uniform(rng, min_len, max_len);
  std::vector<Letter> raw;
  while (static_cast<int>(raw.size()) < len) {
    const Letter l{uniform(rng, 0, rank - 1), uniform(rng, 0, 1) == 0 ? 1 : -1};
    if (!raw.empty() && raw.back() == l.inverse()) continue;
    raw.push_back(l);
  }
  return Word(std::move(raw));
}

inline Word random_nonempty_word(Rng& rng, int rank, int max_len) { return random_word(rng, rank, max_len, 1); }

/// Letters over {t} u E; the stable letter appears with weight 1/3.
inline TorusWord random_torus_word(Rng& rng, int rank, int max_len) {
  const int len = uniform(rng, 0, max_len);
  std::vector<Letter> raw;
  for (int i = 0; i < len; ++i) {
    const int sign = uniform(rng, 0, 1) == 0 ? 1 : -1;
    const int gen = uniform(rng, 0, 2) == 0 ? kStableGen : uniform(rng, 0, rank - 1);
    raw.push_back({gen, sign});
  }
  return TorusWord(std::move(raw));
}

/// One elementary automorphism: e_i -> e_i e_j^{+-1}, e_i -> e_j^{+-1} e_i,
/// e_i -> e_i^-1, or a swap of two generators.
inline Endo random_elementary(Rng& rng, int rank) {
  std::vector<Word> images;
  for (int g = 0; g < rank; ++g) images.push_back(Word::generator(g));
  const int i = uniform(rng, 0, rank - 1);
  const int kind = rank == 1 ? 2 : uniform(rng, 0, 3);
  int j = uniform(rng, 0, rank - 2);
  if (j >= i) ++j;
  const int s = uniform(rng, 0, 1) == 0 ? 1 : -1;
  switch (kind) {
    case 0: images[static_cast<std::size_t>(i)] = Word{{i, 1}, {j, s}}; break;
    case 1: images[static_cast<std::size_t>(i)] = Word{{j, s}, {i, 1}}; break;
    case 2: images[static_cast<std::size_t>(i)] = Word::generator(i, -1); break;
    default: std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]); break;
  }
  return Endo(static_cast<std::size_t>(rank), std::move(images));
}

/// e_i -> e_i^2 on one generator: injective, not surjective.
inline Endo square_one(Rng& rng, int rank) {
  std::vector<Word> images;
  for (int g = 0; g < rank; ++g) images.push_back(Word::generator(g));
  const int i = uniform(rng, 0, rank - 1);
  images[static_cast<std::size_t>(i)] = Word{{i, 1}, {i, 1}};
  return Endo(static_cast<std::size_t>(rank), std::move(images));
}

inline std::size_t max_image_length(const Endo& phi) {
  std::size_t n = 0;
  for (const auto& w : phi.images()) n = std::max(n, w.size());
  return n;
}

/// Composition of at most six elementary maps, sometimes with a squaring
/// factor, keeping every image no longer than `max_len`.
inline Endo random_injective(Rng& rng, int rank, std::size_t max_len = 6) {
  while (true) {
    Endo phi = Endo::identity(static_cast<std::size_t>(rank));
    const int steps = uniform(rng, 0, 6);
    for (int k = 0; k < steps; ++k) phi = compose_endo(phi, random_elementary(rng, rank));
    if (uniform(rng, 0, 2) == 0) phi = compose_endo(phi, square_one(rng, rank));
    bool nonempty = true;
    for (const auto& w : phi.images()) nonempty = nonempty && !w.empty();
    if (nonempty && max_image_length(phi) <= max_len) return phi;
  }
}

/// Decides g = 1 in M(phi) without preimages: when p(g) = 0, conjugating by
/// a large enough power of t pushes every letter into the free group, where
/// equality is literal. Exact, but word length grows like |phi|^N.
inline bool trivial_by_conjugation(const TorusWord& g, const Endo& phi) {
  long p = 0;
  long deficit = 0;
  for (const auto& l : g.letters()) {
    if (l.gen == kStableGen) {
      p += l.sign;
      deficit = std::max(deficit, -p);
    }
  }
  if (p != 0) return false;
  long k = deficit;
  Word acc;
  for (const auto& l : g.letters()) {
    if (l.gen == kStableGen) {
      k += l.sign;
      continue;
    }
    Word x = Word::generator(l.gen, l.sign);
    for (long i = 0; i < k; ++i) x = phi(x);
    acc *= x;
  }
  return acc.empty();
}

inline bool equal_by_conjugation(const TorusWord& g, const TorusWord& h, const Endo& phi) {
  return trivial_by_conjugation(g * h.inverse(), phi);
}

/// Reduced products of at most `max_factors` basis words (and inverses).
inline std::set<Word> enumerate_subgroup(const std::vector<Word>& basis, int max_factors) {
  std::set<Word> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int depth = 0; depth < max_factors; ++depth) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& b : basis) {
        for (const Word& f : {b, b.inverse()}) {
          Word v = w * f;
          if (seen.insert(v).second) next.push_back(std::move(v));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace mtorus::fuzz
