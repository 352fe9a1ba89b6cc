#pragma once

// Words in a free group of finite rank and endomorphisms given by generator
// images. Generators are plain indices; names live only in Alphabet.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtorus {

/// A generator index with an exponent of +1 or -1.
struct Letter {
  int gen = 0;
  int sign = 1;

  constexpr Letter inverse() const { return {gen, -sign}; }
  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word. Every constructor reduces, so two Words are equal as
/// group elements iff they are equal as sequences.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> raw);
  Word(std::initializer_list<Letter> raw) : Word(std::vector<Letter>(raw)) {}

  static Word generator(int gen, int sign = 1) { return Word{{gen, sign}}; }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word pow(long n) const;
  /// Largest generator index used, or -1 for the identity.
  int max_gen() const;

  friend Word operator*(const Word& u, const Word& v);
  Word& operator*=(const Word& v) { return *this = *this * v; }

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence. Throws std::out_of_range
/// if a generator index is not below `rank`.
Word reduce_word(std::span<const Letter> raw, std::size_t rank);

/// Ordered generator names. "t" and "s" are reserved for stable letters.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// Generators named prefix1 .. prefixN.
  static Alphabet numbered(std::size_t rank, std::string_view prefix = "e");

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int gen) const;
  std::optional<int> index(std::string_view name) const;

  /// Parses whitespace-separated tokens `name` or `name^-1`; `1` alone is
  /// the empty word. Throws ParseError with a 1-based column.
  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;
  std::string format(const Letter& l) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

bool is_valid_identifier(std::string_view s);
bool is_reserved_name(std::string_view s);

/// One token of the shared word grammar, with its 1-based column.
struct Token {
  std::string name;
  int sign = 1;
  std::size_t column = 0;
};

/// Splits `text` into tokens. `1` is returned as an empty list when it is the
/// only token; mixing `1` with other tokens is an error.
std::vector<Token> tokenize_word(std::string_view text);

/// Injective endomorphism candidate: the image of every generator.
class Endo {
 public:
  Endo() = default;
  Endo(std::size_t rank, std::vector<Word> images);

  static Endo identity(std::size_t rank);

  std::size_t rank() const { return images_.size(); }
  const Word& image(int gen) const { return images_.at(static_cast<std::size_t>(gen)); }
  std::span<const Word> images() const { return images_; }

  Word operator()(const Word& w) const;

  friend bool operator==(const Endo&, const Endo&) = default;

 private:
  std::vector<Word> images_;
};

Word apply_endo(const Endo& phi, const Word& w);
/// (phi o psi)(e) = phi(psi(e)).
Endo compose_endo(const Endo& phi, const Endo& psi);
/// phi^m for m >= 1.
Endo power_endo(const Endo& phi, int m);
/// e -> b phi(e) b^-1.
Endo twist(const Word& b, const Endo& phi);
/// True iff the generator images freely generate a subgroup of rank
/// phi.rank(). Decided by folding the bouquet of images.
bool is_injective(const Endo& phi);

}  // namespace mtorus
