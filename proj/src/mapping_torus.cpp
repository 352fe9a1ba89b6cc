#include "mtorus/mapping_torus.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "mtorus/error.hpp"

namespace mtorus {

TorusWord::TorusWord(std::vector<Letter> raw) {
  letters_.reserve(raw.size());
  for (const auto& l : raw) {
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
    if (l.gen < kStableGen) throw std::out_of_range("invalid generator index");
    if (!letters_.empty() && letters_.back() == l.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

TorusWord::TorusWord(const Word& w) : letters_(w.letters().begin(), w.letters().end()) {}

TorusWord TorusWord::stable(long power) {
  return TorusWord(std::vector<Letter>(static_cast<std::size_t>(power < 0 ? -power : power),
                                       Letter{kStableGen, power < 0 ? -1 : 1}));
}

TorusWord TorusWord::inverse() const {
  std::vector<Letter> raw;
  raw.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) raw.push_back(it->inverse());
  TorusWord out;
  out.letters_ = std::move(raw);
  return out;
}

TorusWord TorusWord::pow(long n) const {
  const TorusWord base = n < 0 ? inverse() : *this;
  TorusWord out;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
  return out;
}

TorusWord operator*(const TorusWord& u, const TorusWord& v) {
  std::vector<Letter> raw(u.letters_);
  raw.insert(raw.end(), v.letters_.begin(), v.letters_.end());
  return TorusWord(std::move(raw));
}

TorusWord parse_torus_word(const Alphabet& names, std::string_view text, std::string_view stable_name) {
  std::vector<Letter> raw;
  for (const auto& tok : tokenize_word(text)) {
    if (tok.name == stable_name) {
      raw.push_back({kStableGen, tok.sign});
      continue;
    }
    const auto g = names.index(tok.name);
    if (!g) throw ParseError("unknown generator '" + tok.name + "'", 0, tok.column);
    raw.push_back({*g, tok.sign});
  }
  return TorusWord(std::move(raw));
}

std::string format_torus_word(const Alphabet& names, const TorusWord& w, std::string_view stable_name) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += l.gen == kStableGen ? std::string(stable_name) : names.name(l.gen);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

long p_hom(const TorusWord& w) {
  long p = 0;
  for (const auto& l : w.letters()) {
    if (l.gen == kStableGen) p += l.sign;
  }
  return p;
}

TorusWord to_torus_word(const NormalForm& nf) {
  return TorusWord::stable(-nf.q) * TorusWord(nf.x) * TorusWord::stable(nf.r);
}

std::string format_normal_form(const Alphabet& names, const NormalForm& nf, std::string_view stable_name) {
  const std::string t(stable_name);
  const std::string left = nf.q == 0 ? t + "^0" : t + "^-" + std::to_string(nf.q);
  return left + " · " + names.format(nf.x) + " · " + t + "^" + std::to_string(nf.r);
}

// ---------------------------------------------------------------------------

ImageOracle::ImageOracle(const Endo& phi) : phi_(phi) {
  const auto images = phi.images();
  for (const auto& w : images) {
    if (w.empty()) throw Error("endomorphism is not injective (a generator maps to the identity)");
  }
  // Each edge carries a word over the original generators; reading a closed
  // path and multiplying the tags (inverted on backward steps) yields the
  // phi-preimage of the path's label. Circle i contributes e_i on its last
  // edge.
  LabeledGraph g;
  std::vector<Word> tags;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto ids = add_circle(g, images[i]);
    tags.resize(static_cast<std::size_t>(g.edge_count()));
    const int last_sign = images[i][images[i].size() - 1].sign;
    tags[static_cast<std::size_t>(ids.back())] = Word::generator(static_cast<int>(i), last_sign);
  }

  while (const auto v = find_violation(g)) {
    const Edge a = g.edge(v->first);
    const Edge b = g.edge(v->second);
    const bool outgoing = a.origin == b.origin;
    const VertexId fa = outgoing ? a.terminus : a.origin;
    const VertexId fb = outgoing ? b.terminus : b.origin;
    const Word& ta = tags[static_cast<std::size_t>(v->first)];
    const Word& tb = tags[static_cast<std::size_t>(v->second)];
    if (fa == fb) {
      // A bigon with different tags is a nontrivial kernel element.
      if (ta != tb) throw Error("endomorphism is not injective");
    } else {
      // fold() keeps the smaller far endpoint, so the basepoint (vertex 0)
      // is never the removed one. Re-gauge the removed vertex so the two
      // edges carry equal tags before they are identified.
      const VertexId removed = std::max(fa, fb);
      const Word& t_removed = fa == removed ? ta : tb;
      const Word& t_kept = fa == removed ? tb : ta;
      const Word c = outgoing ? t_kept.inverse() * t_removed : t_kept * t_removed.inverse();
      const Word cinv = c.inverse();
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        Word& tag = tags[static_cast<std::size_t>(e)];
        if (ed.origin == removed) tag = c * tag;
        if (ed.terminus == removed) tag = tag * cinv;
      }
    }
    FoldResult r = fold(g, v->first, v->second);
    std::vector<Word> next(static_cast<std::size_t>(r.graph.edge_count()));
    for (std::size_t e = 0; e < r.edge_map.size(); ++e) next[static_cast<std::size_t>(r.edge_map[e])] = tags[e];
    tags = std::move(next);
    g = std::move(r.graph);
  }
  if (g.rank() != static_cast<int>(phi.rank())) throw Error("endomorphism is not injective");

  graph_ = std::move(g);
  tree_ = spanning_tree(graph_);
  auto tag_along = [&](std::span<const TreeStep> steps) {
    Word out;
    for (const auto& s : steps) {
      const Word& tag = tags[static_cast<std::size_t>(s.edge)];
      out *= s.sign > 0 ? tag : tag.inverse();
    }
    return out;
  };
  for (const EdgeId e : tree_.basis_edges) {
    const Edge& ed = graph_.edge(e);
    basis_preimages_.push_back(tag_along(tree_path(tree_, ed.origin)) * tags[static_cast<std::size_t>(e)] *
                               tag_along(tree_path(tree_, ed.terminus)).inverse());
  }
}

bool ImageOracle::contains(const Word& x) const { return mtorus::contains(graph_, x); }

std::optional<Word> ImageOracle::preimage(const Word& x) const {
  if (!contains(x)) return std::nullopt;
  return expand_basis_word(express_in_basis(graph_, tree_, x), basis_preimages_);
}

NormalForm normalize(const TorusWord& w, const Endo& phi) { return normalize(w, ImageOracle(phi)); }

NormalForm normalize(const TorusWord& w, const ImageOracle& oracle) {
  const Endo& phi = oracle.endo();
  NormalForm nf;
  for (const auto& l : w.letters()) {
    if (l.gen == kStableGen) {
      if (l.sign > 0) {
        ++nf.r;
      } else if (nf.r > 0) {
        --nf.r;
      } else {
        // x t^-1 = t^-1 phi(x)
        nf.x = phi(nf.x);
        ++nf.q;
      }
    } else {
      // t^r e = phi^r(e) t^r
      Word letter = Word::generator(l.gen, l.sign);
      for (long i = 0; i < nf.r; ++i) letter = phi(letter);
      nf.x *= letter;
    }
  }
  while (nf.q > 0 && nf.r > 0) {
    auto pre = oracle.preimage(nf.x);
    if (!pre) break;
    nf.x = std::move(*pre);
    --nf.q;
    --nf.r;
  }
  return nf;
}

bool equal_in_torus(const TorusWord& g, const TorusWord& h, const Endo& phi) {
  return equal_in_torus(g, h, ImageOracle(phi));
}

bool equal_in_torus(const TorusWord& g, const TorusWord& h, const ImageOracle& oracle) {
  if (p_hom(g) != p_hom(h)) return false;
  return normalize(g * h.inverse(), oracle) == NormalForm{};
}

// ---------------------------------------------------------------------------

namespace {

struct Bezout {
  long gcd;
  std::vector<long> coefficients;  // gcd = sum coefficients[i] * values[i]
};

// Folds the extended Euclidean recurrence over values in order.
Bezout bezout(std::span<const long> values) {
  Bezout out{0, std::vector<long>(values.size(), 0)};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const long a = out.gcd, b = values[i];
    long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const long q = old_r / r;
      old_r = std::exchange(r, old_r - q * r);
      old_s = std::exchange(s, old_s - q * s);
      old_t = std::exchange(t, old_t - q * t);
    }
    for (std::size_t j = 0; j < i; ++j) out.coefficients[j] *= old_s;
    out.coefficients[i] = old_t;
    out.gcd = old_r;
  }
  if (out.gcd < 0) {
    out.gcd = -out.gcd;
    for (auto& c : out.coefficients) c = -c;
  }
  return out;
}

Word power_image(const Endo& phi, Word x, long n) {
  for (long i = 0; i < n; ++i) x = phi(x);
  return x;
}

}  // namespace

SubgroupReduction reduce_subgroup(std::span<const TorusWord> gens, const Endo& phi) {
  if (gens.empty()) throw Error("subgroup needs at least one generator");
  const ImageOracle oracle(phi);

  std::vector<long> p_values;
  for (const auto& g : gens) p_values.push_back(p_hom(g));
  const Bezout bz = bezout(p_values);

  if (bz.gcd == 0) {
    std::vector<NormalForm> forms;
    long k = 0;
    for (const auto& g : gens) {
      forms.push_back(normalize(g, oracle));
      k = std::max(k, forms.back().q);
    }
    std::vector<Word> conjugated;
    for (const auto& nf : forms) {
      if (!nf.x.empty()) conjugated.push_back(power_image(phi, nf.x, k - nf.q));
    }
    if (conjugated.empty()) throw Error("subgroup is trivial");
    const LabeledGraph g = tighten_graph(bouquet(conjugated)).graph;
    return FreeCase{k, basis_from_tree(g, spanning_tree(g))};
  }

  TCase tc;
  tc.m = bz.gcd;
  TorusWord g_m;
  for (std::size_t i = 0; i < gens.size(); ++i) g_m = g_m * gens[i].pow(bz.coefficients[i]);
  const NormalForm nf_m = normalize(g_m, oracle);
  tc.p = nf_m.q;
  tc.b = nf_m.x;
  tc.theta = twist(tc.b, power_endo(phi, static_cast<int>(tc.m)));

  // t^m = b^-1 s and t^-m = s^-1 b.
  const TorusWord s(std::vector<Letter>{{kStableGen, 1}});
  const TorusWord up = TorusWord(tc.b.inverse()) * s;
  const TorusWord down = up.inverse();
  const TorusWord conj = TorusWord::stable(tc.p);
  for (const auto& g : gens) {
    const NormalForm nf = normalize(conj * g * conj.inverse(), oracle);
    const long j = (tc.m - nf.q % tc.m) % tc.m;
    const Word x = power_image(phi, nf.x, j);
    tc.rewritten.push_back(down.pow((nf.q + j) / tc.m) * TorusWord(x) * up.pow((nf.r + j) / tc.m));
  }
  bool trivial = true;
  for (const auto& w : tc.rewritten) trivial = trivial && w.empty();
  if (trivial) throw Error("subgroup is trivial");
  return tc;
}

TorusWord substitute_back(const TorusWord& rewritten, const TCase& reduction) {
  const TorusWord s_image = TorusWord(reduction.b) * TorusWord::stable(reduction.m);
  TorusWord body;
  for (const auto& l : rewritten.letters()) {
    if (l.gen == kStableGen) {
      body = body * (l.sign > 0 ? s_image : s_image.inverse());
    } else {
      body = body * TorusWord(std::vector<Letter>{l});
    }
  }
  return TorusWord::stable(-reduction.p) * body * TorusWord::stable(reduction.p);
}

}  // namespace mtorus
