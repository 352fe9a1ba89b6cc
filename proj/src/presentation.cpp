#include "mtorus/presentation.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "mtorus/error.hpp"

namespace mtorus {

std::optional<int> Certificate::failed_level() const {
  for (const auto& l : levels) {
    if (!l.free) return l.level;
  }
  return std::nullopt;
}

std::vector<Word> collect_A(std::span<const TorusWord> gens, const Endo& phi) {
  const ImageOracle oracle(phi);
  std::vector<Word> a;
  for (const auto& g : gens) {
    NormalForm nf = normalize(g, oracle);
    if (!nf.x.empty()) a.push_back(std::move(nf.x));
  }
  return a;
}

namespace {

CertificateLevel check_level(int level, const std::vector<Word>& words) {
  const LabeledGraph folded = quick_tighten(bouquet(words));
  return {level, words.size(), folded.rank(), folded.rank() == static_cast<int>(words.size())};
}

// Basis of a tight pair split along the nested tree.
struct Extraction {
  std::vector<Word> a;
  std::vector<Word> b;
  TreeData tree;
  std::vector<int> symbol;  // tree basis symbol -> A-then-B symbol
};

Extraction extract(const LabeledGraphPair& pair) {
  const LabeledGraph& z = pair.overgraph();
  Extraction ex;
  ex.tree = spanning_tree(z, pair.x_edges());
  const auto basis = basis_from_tree(z, ex.tree);
  std::size_t a_count = 0;
  for (const EdgeId e : ex.tree.basis_edges) a_count += pair.in_x(e) ? 1 : 0;
  ex.symbol.resize(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (pair.in_x(ex.tree.basis_edges[k])) {
      ex.symbol[k] = static_cast<int>(ex.a.size());
      ex.a.push_back(basis[k]);
    } else {
      ex.symbol[k] = static_cast<int>(a_count + ex.b.size());
      ex.b.push_back(basis[k]);
    }
  }
  return ex;
}

std::vector<Word> x_basis(const LabeledGraphPair& pair) {
  const LabeledGraph x = pair.subgraph();
  return basis_from_tree(x, spanning_tree(x));
}

}  // namespace

Certificate certify_depth(std::span<const Word> a, std::span<const Word> b, const Endo& phi, int depth, int jobs) {
  if (depth < 1) throw std::invalid_argument("certification depth must be at least 1");
  std::vector<std::vector<Word>> sets;
  std::vector<Word> current(a.begin(), a.end());
  std::vector<Word> layer(b.begin(), b.end());
  for (int i = 1; i <= depth; ++i) {
    current.insert(current.end(), layer.begin(), layer.end());
    sets.push_back(current);
    if (i < depth) {
      for (auto& w : layer) w = phi(w);
    }
  }

  Certificate cert;
  if (jobs <= 1) {
    for (int i = 1; i <= depth; ++i) {
      cert.levels.push_back(check_level(i, sets[static_cast<std::size_t>(i - 1)]));
      if (!cert.levels.back().free) break;
    }
    return cert;
  }
  std::vector<CertificateLevel> all(static_cast<std::size_t>(depth));
  for (int start = 0; start < depth; start += jobs) {
    std::vector<std::future<CertificateLevel>> batch;
    for (int i = start; i < std::min(depth, start + jobs); ++i) {
      batch.push_back(std::async(std::launch::async, check_level, i + 1, std::cref(sets[static_cast<std::size_t>(i)])));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) all[static_cast<std::size_t>(start) + k] = batch[k].get();
  }
  for (const auto& level : all) {
    cert.levels.push_back(level);
    if (!level.free) break;
  }
  return cert;
}

Presentation present(const Endo& phi, std::span<const Word> a, const PresentOptions& options) {
  if (options.depth < 1) throw std::invalid_argument("certification depth must be at least 1");
  if (!is_injective(phi)) throw Error("endomorphism is not injective");

  Presentation pres;
  std::vector<Word> gens;
  for (const auto& w : a) {
    if (!w.empty()) gens.push_back(w);
  }
  pres.initial_relative_rank = relative_rank(initial_pair(gens, phi));

  while (true) {
    PairTightening tight = tighten_pair(initial_pair(gens, phi), phi, options.observer);
    const int rr = relative_rank(tight.pair);
    Extraction ex = extract(tight.pair);

    // A canonical restart from the extracted A may still lose rank.
    if (!ex.a.empty()) {
      const PairTightening again = tighten_pair(initial_pair(ex.a, phi), phi, options.observer);
      if (relative_rank(again.pair) < rr) {
        gens = x_basis(again.pair);
        ++pres.restart_count;
        continue;
      }
    }

    Certificate cert = certify_depth(ex.a, ex.b, phi, options.depth, options.jobs);
    if (const auto failed = cert.failed_level()) {
      // Level i fails while level i-1 holds: the pair
      // (X(S_i), X(S_(i-1))) is invariant with injective subgraph and
      // non-injective overgraph, so tightening it lowers rr.
      const int i = *failed;
      std::vector<Word> inner(ex.a);
      std::vector<Word> layer(ex.b);
      for (int l = 1; l < i; ++l) {
        inner.insert(inner.end(), layer.begin(), layer.end());
        for (auto& w : layer) w = phi(w);
      }
      // inner = S_(i-1), layer = phi^(i-1)(B).
      const PairTightening reduced =
          tighten_pair(LabeledGraphPair::from_bouquets(inner, layer), phi, options.observer);
      if (relative_rank(reduced.pair) >= rr) {
        throw std::logic_error("certification failure did not lower the relative rank");
      }
      gens = x_basis(reduced.pair);
      ++pres.restart_count;
      continue;
    }

    pres.a = std::move(ex.a);
    pres.b = std::move(ex.b);
    for (std::size_t j = 0; j < pres.a.size(); ++j) {
      const Word raw = express_in_basis(tight.pair.overgraph(), ex.tree, phi(pres.a[j]));
      std::vector<Letter> remapped;
      for (const auto& l : raw.letters()) remapped.push_back({ex.symbol[static_cast<std::size_t>(l.gen)], l.sign});
      pres.relators.push_back({j + 1, Word(std::move(remapped))});
    }
    pres.certificate = std::move(cert);
    pres.certified_depth = options.depth;
    pres.pair = std::move(tight.pair);
    return pres;
  }
}

Word expand_relator_word(const Presentation& pres, const Word& w) {
  std::vector<Word> basis(pres.a);
  basis.insert(basis.end(), pres.b.begin(), pres.b.end());
  for (const auto& l : w.letters()) {
    if (static_cast<std::size_t>(l.gen) >= basis.size()) throw std::out_of_range("relator symbol outside A u B");
  }
  return expand_basis_word(w, basis);
}

TorusWord relator_word(const Presentation& pres, const Relator& rel) {
  const TorusWord t = TorusWord::stable(1);
  return t * TorusWord(pres.a.at(rel.index - 1)) * t.inverse() * TorusWord(expand_relator_word(pres, rel.w).inverse());
}

VerifyReport verify_presentation(const Presentation& pres, const Endo& phi) {
  VerifyReport report;
  report.relator_words = pres.relators.size() == pres.a.size();
  if (!report.relator_words) report.messages.push_back("relator count differs from |A|");
  for (std::size_t j = 0; j < pres.relators.size() && report.relator_words; ++j) {
    const Relator& rel = pres.relators[j];
    if (rel.index != j + 1) {
      report.relator_words = false;
      report.messages.push_back("relators are not indexed 1..|A| in order");
      break;
    }
    try {
      if (expand_relator_word(pres, rel.w) != phi(pres.a[j])) {
        report.relator_words = false;
        report.messages.push_back("w_" + std::to_string(j + 1) + " does not expand to phi(a_" + std::to_string(j + 1) + ")");
      }
    } catch (const std::out_of_range& e) {
      report.relator_words = false;
      report.messages.push_back(e.what());
    }
  }

  std::vector<Word> lhs(pres.a);
  for (const auto& w : pres.a) lhs.push_back(phi(w));
  std::vector<Word> rhs(pres.a);
  rhs.insert(rhs.end(), pres.b.begin(), pres.b.end());
  report.same_subgroup = same_subgroup(lhs, rhs);
  if (!report.same_subgroup) report.messages.push_back("<A, phi(A)> differs from <A, B>");

  report.torus_relators = true;
  try {
    const ImageOracle oracle(phi);
    for (const auto& rel : pres.relators) {
      if (rel.index < 1 || rel.index > pres.a.size() ||
          !equal_in_torus(relator_word(pres, rel), TorusWord{}, oracle)) {
        report.torus_relators = false;
        report.messages.push_back("relator " + std::to_string(rel.index) + " is not trivial in the mapping torus");
      }
    }
  } catch (const std::exception& e) {
    report.torus_relators = false;
    report.messages.push_back(e.what());
  }
  return report;
}

TorusWord express_generator(const TorusWord& g, const Presentation& pres, const Endo& phi) {
  const NormalForm nf = normalize(g, phi);
  const LabeledGraph& z = pres.pair.overgraph();
  const TreeData tree = spanning_tree(z, pres.pair.x_edges());
  Word raw;
  try {
    raw = express_in_basis(z, tree, nf.x);
  } catch (const Error&) {
    throw Error("generator's free part is not in <A>");
  }
  // Symbols of X-edges come first in edge order, matching A.
  std::vector<int> a_symbol(tree.basis_edges.size(), -1);
  int next = 0;
  for (std::size_t k = 0; k < tree.basis_edges.size(); ++k) {
    if (pres.pair.in_x(tree.basis_edges[k])) a_symbol[k] = next++;
  }
  std::vector<Letter> letters;
  for (const auto& l : raw.letters()) {
    const int sym = a_symbol[static_cast<std::size_t>(l.gen)];
    if (sym < 0) throw Error("generator's free part is not in <A>");
    letters.push_back({sym, l.sign});
  }
  return TorusWord::stable(-nf.q) * TorusWord(Word(std::move(letters))) * TorusWord::stable(nf.r);
}

TorusWord expand_generator_expression(const TorusWord& expr, const Presentation& pres) {
  TorusWord out;
  for (const auto& l : expr.letters()) {
    if (l.gen == kStableGen) {
      out = out * TorusWord::stable(l.sign);
    } else {
      const Word& a = pres.a.at(static_cast<std::size_t>(l.gen));
      out = out * TorusWord(l.sign > 0 ? a : a.inverse());
    }
  }
  return out;
}

}  // namespace mtorus
