#include "mtorus/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "mtorus/error.hpp"
#include "mtorus/labeled_graph.hpp"

namespace mtorus {

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back() == l.inverse()) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word::Word(std::vector<Letter> raw) {
  letters_.reserve(raw.size());
  for (const auto& l : raw) {
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
    if (l.gen < 0) throw std::out_of_range("negative generator index");
    push_reduced(letters_, l);
  }
}

Word Word::inverse() const {
  Word r;
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(it->inverse());
  return r;
}

Word Word::pow(long n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word r;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) r *= base;
  return r;
}

int Word::max_gen() const {
  int m = -1;
  for (const auto& l : letters_) m = std::max(m, l.gen);
  return m;
}

Word operator*(const Word& u, const Word& v) {
  // Cancel the longest suffix of u against the prefix of v.
  std::size_t k = 0;
  const std::size_t limit = std::min(u.size(), v.size());
  while (k < limit && u.letters_[u.size() - 1 - k] == v.letters_[k].inverse()) ++k;
  Word r;
  r.letters_.reserve(u.size() + v.size() - 2 * k);
  r.letters_.insert(r.letters_.end(), u.letters_.begin(), u.letters_.end() - static_cast<long>(k));
  r.letters_.insert(r.letters_.end(), v.letters_.begin() + static_cast<long>(k), v.letters_.end());
  return r;
}

Word reduce_word(std::span<const Letter> raw, std::size_t rank) {
  for (const auto& l : raw) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= rank) {
      throw std::out_of_range("generator index " + std::to_string(l.gen) +
                              " outside alphabet of rank " + std::to_string(rank));
    }
  }
  return Word(std::vector<Letter>(raw.begin(), raw.end()));
}

// ---------------------------------------------------------------------------

bool is_valid_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_reserved_name(std::string_view s) { return s == "t" || s == "s"; }

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_valid_identifier(names_[i])) throw ParseError("invalid generator name '" + names_[i] + "'", 0, 0);
    if (is_reserved_name(names_[i])) throw ParseError("generator name '" + names_[i] + "' is reserved", 0, 0);
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[j] == names_[i]) throw ParseError("duplicate generator name '" + names_[i] + "'", 0, 0);
    }
  }
}

Alphabet Alphabet::numbered(std::size_t rank, std::string_view prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= rank; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return Alphabet(std::move(names));
}

const std::string& Alphabet::name(int gen) const { return names_.at(static_cast<std::size_t>(gen)); }

std::optional<int> Alphabet::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<Token> tokenize_word(std::string_view text) {
  std::vector<Token> out;
  bool saw_one = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view tok = text.substr(start, i - start);
    const std::size_t column = start + 1;
    if (tok == "1") {
      saw_one = true;
      continue;
    }
    Token t;
    t.column = column;
    if (const auto caret = tok.find('^'); caret != std::string_view::npos) {
      if (tok.substr(caret) != "^-1") throw ParseError("only the exponent ^-1 is allowed in '" + std::string(tok) + "'", 0, column + caret);
      t.sign = -1;
      tok = tok.substr(0, caret);
    }
    if (!is_valid_identifier(tok)) throw ParseError("invalid token '" + std::string(tok) + "'", 0, column);
    t.name = std::string(tok);
    out.push_back(std::move(t));
  }
  if (saw_one && !out.empty()) throw ParseError("'1' denotes the empty word and cannot be combined with letters", 0, 1);
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  std::vector<Letter> raw;
  for (const auto& tok : tokenize_word(text)) {
    const auto g = index(tok.name);
    if (!g) throw ParseError("unknown generator '" + tok.name + "'", 0, tok.column);
    raw.push_back({*g, tok.sign});
  }
  return Word(std::move(raw));
}

std::string Alphabet::format(const Letter& l) const {
  return l.sign < 0 ? name(l.gen) + "^-1" : name(l.gen);
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += format(l);
  }
  return out;
}

// ---------------------------------------------------------------------------

Endo::Endo(std::size_t rank, std::vector<Word> images) : images_(std::move(images)) {
  if (images_.size() != rank) throw std::invalid_argument("endomorphism needs one image per generator");
  for (const auto& w : images_) {
    if (w.max_gen() >= static_cast<int>(rank)) throw std::invalid_argument("image uses a generator outside the alphabet");
  }
}

Endo Endo::identity(std::size_t rank) {
  std::vector<Word> images;
  for (std::size_t i = 0; i < rank; ++i) images.push_back(Word::generator(static_cast<int>(i)));
  return Endo(rank, std::move(images));
}

Word Endo::operator()(const Word& w) const {
  if (w.max_gen() >= static_cast<int>(rank())) throw std::invalid_argument("word is not over the endomorphism's alphabet");
  std::vector<Letter> raw;
  for (const auto& l : w.letters()) {
    const Word& img = images_[static_cast<std::size_t>(l.gen)];
    if (l.sign > 0) {
      for (const auto& x : img.letters()) push_reduced(raw, x);
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) push_reduced(raw, it->inverse());
    }
  }
  return Word(std::move(raw));
}

Word apply_endo(const Endo& phi, const Word& w) { return phi(w); }

Endo compose_endo(const Endo& phi, const Endo& psi) {
  if (phi.rank() != psi.rank()) throw std::invalid_argument("alphabet mismatch in composition");
  std::vector<Word> images;
  for (const auto& w : psi.images()) images.push_back(phi(w));
  return Endo(phi.rank(), std::move(images));
}

Endo power_endo(const Endo& phi, int m) {
  if (m < 1) throw std::invalid_argument("power_endo requires m >= 1");
  Endo result = phi;
  for (int i = 1; i < m; ++i) result = compose_endo(phi, result);
  return result;
}

Endo twist(const Word& b, const Endo& phi) {
  if (b.max_gen() >= static_cast<int>(phi.rank())) throw std::invalid_argument("alphabet mismatch in twist");
  std::vector<Word> images;
  const Word binv = b.inverse();
  for (const auto& w : phi.images()) images.push_back(b * w * binv);
  return Endo(phi.rank(), std::move(images));
}

bool is_injective(const Endo& phi) {
  for (const auto& w : phi.images()) {
    if (w.empty()) return false;
  }
  const auto images = phi.images();
  const LabeledGraph folded = quick_tighten(bouquet(std::vector<Word>(images.begin(), images.end())));
  return folded.rank() == static_cast<int>(phi.rank());
}

}  // namespace mtorus
