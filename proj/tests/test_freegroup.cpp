#include <gtest/gtest.h>

#include "mtorus/error.hpp"
#include "mtorus/freegroup.hpp"
#include "support.hpp"

using namespace mtorus;

namespace {

const Alphabet kE3 = Alphabet::numbered(3);

Word w(const std::string& s) { return kE3.parse(s); }

Endo example_phi() { return Endo(3, {w("e2"), w("e2^-1 e3 e2"), w("e2 e1^-1 e2")}); }

}  // namespace

TEST(Reduce, CancelsAdjacentInverses) {
  EXPECT_TRUE(w("e1 e1^-1").empty());
  EXPECT_EQ(w("e2 e1 e1^-1 e3"), w("e2 e3"));
  EXPECT_EQ(w("e2^-1 e3^-1 e2 e2^-1 e1"), w("e2^-1 e3^-1 e1"));
}

TEST(Reduce, RejectsOutOfRangeGenerator) {
  const std::vector<Letter> raw{{0, 1}, {3, -1}};
  EXPECT_THROW(reduce_word(raw, 3), std::out_of_range);
  EXPECT_EQ(reduce_word(std::vector<Letter>{{0, 1}, {0, -1}, {2, 1}}, 3), Word::generator(2));
}

TEST(Reduce, Idempotent) {
  const Word u = w("e1 e2 e2^-1 e3");
  EXPECT_EQ(Word(std::vector<Letter>(u.letters().begin(), u.letters().end())), u);
}

TEST(Word, ProductCancelsAcrossTheSeam) {
  EXPECT_EQ(w("e1 e2") * w("e2^-1 e1^-1"), Word{});
  EXPECT_EQ(w("e1 e2") * w("e2^-1 e3"), w("e1 e3"));
  EXPECT_EQ(w("e1 e2").inverse(), w("e2^-1 e1^-1"));
  EXPECT_EQ(w("e1 e2").pow(-2), w("e2^-1 e1^-1 e2^-1 e1^-1"));
  EXPECT_EQ(w("e1").pow(0), Word{});
}

TEST(Alphabet, ParsesAndFormats) {
  EXPECT_EQ(kE3.format(w("e3^-1 e1")), "e3^-1 e1");
  EXPECT_EQ(kE3.format(Word{}), "1");
  EXPECT_TRUE(w("1").empty());
  EXPECT_TRUE(w("   ").empty());
}

TEST(Alphabet, ParseErrorsCarryColumns) {
  try {
    kE3.parse("e1 e4");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 4u);
  }
  EXPECT_THROW(kE3.parse("e1^2"), ParseError);
  EXPECT_THROW(kE3.parse("1 e1"), ParseError);
  EXPECT_THROW(kE3.parse("e1 3x"), ParseError);
}

TEST(Alphabet, RejectsReservedAndDuplicateNames) {
  EXPECT_THROW(Alphabet({"a", "t"}), ParseError);
  EXPECT_THROW(Alphabet({"a", "a"}), ParseError);
  EXPECT_THROW(Alphabet({"9a"}), ParseError);
  EXPECT_NO_THROW(Alphabet({"x", "y_1", "Z"}));
}

TEST(Endo, ApplyMatchesWorkedImages) {
  const Endo phi = example_phi();
  EXPECT_EQ(phi(w("e2^-1 e1")), w("e2^-1 e3^-1 e2 e2"));
  EXPECT_EQ(phi(w("e3^-1 e1")), w("e2^-1 e1"));
  EXPECT_EQ(phi(w("e2^-1 e3^-1 e1 e1 e3^-1 e1")), w("e2^-1 e3^-1 e1 e1"));
  const Word u = w("e1 e3^-1 e2");
  EXPECT_EQ(Endo::identity(3)(u), u);
}

TEST(Endo, RankMismatchIsAnError) {
  EXPECT_THROW(Endo(2, {w("e1")}), std::invalid_argument);
  EXPECT_THROW(Endo(2, {w("e1"), w("e3")}), std::invalid_argument);
  EXPECT_THROW(compose_endo(example_phi(), Endo::identity(2)), std::invalid_argument);
}

TEST(Endo, PowerComposeTwist) {
  const Endo phi = example_phi();
  EXPECT_EQ(power_endo(phi, 1), phi);
  EXPECT_EQ(twist(Word{}, phi), phi);
  EXPECT_EQ(power_endo(phi, 2)(w("e1")), w("e2^-1 e3 e2"));
  EXPECT_EQ(twist(w("e1"), phi)(w("e2")), w("e1 e2^-1 e3 e2 e1^-1"));
  EXPECT_EQ(compose_endo(phi, phi), power_endo(phi, 2));
  EXPECT_THROW(power_endo(phi, 0), std::invalid_argument);
}

TEST(Endo, Injectivity) {
  EXPECT_TRUE(is_injective(Endo::identity(3)));
  EXPECT_TRUE(is_injective(example_phi()));
  const Alphabet e2 = Alphabet::numbered(2);
  EXPECT_FALSE(is_injective(Endo(2, {e2.parse("e1"), e2.parse("e1")})));
  EXPECT_FALSE(is_injective(Endo(2, {e2.parse("e1"), Word{}})));
  EXPECT_TRUE(is_injective(Endo(2, {e2.parse("e1 e2"), e2.parse("e2 e1")})));
  EXPECT_FALSE(is_injective(Endo(2, {e2.parse("e1 e1"), e2.parse("e1 e1 e1")})));
}

TEST(EndoProperty, HomomorphismAndPowerAdditivity) {
  fuzz::Rng rng(20261019);
  for (int trial = 0; trial < 300; ++trial) {
    const int rank = fuzz::uniform(rng, 1, 4);
    const Endo phi = fuzz::random_injective(rng, rank);
    const Word u = fuzz::random_word(rng, rank, 8);
    const Word v = fuzz::random_word(rng, rank, 8);
    ASSERT_EQ(phi(u * v), phi(u) * phi(v));
    ASSERT_LE((u * v).size(), u.size() + v.size());
    const int a = fuzz::uniform(rng, 1, 3);
    const int b = fuzz::uniform(rng, 1, 3);
    ASSERT_EQ(power_endo(phi, a + b), compose_endo(power_endo(phi, a), power_endo(phi, b)));
  }
}

TEST(EndoProperty, AutomorphismsAreInjectiveAndCoincidentImagesAreNot) {
  fuzz::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int rank = fuzz::uniform(rng, 1, 4);
    Endo phi = Endo::identity(static_cast<std::size_t>(rank));
    for (int k = 0; k < 6; ++k) phi = compose_endo(phi, fuzz::random_elementary(rng, rank));
    ASSERT_TRUE(is_injective(phi));
    if (rank >= 2) {
      std::vector<Word> images(phi.images().begin(), phi.images().end());
      images[1] = images[0];
      ASSERT_FALSE(is_injective(Endo(static_cast<std::size_t>(rank), images)));
    }
  }
}
