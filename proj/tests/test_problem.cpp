#include <gtest/gtest.h>

#include "mtorus/document.hpp"
#include "mtorus/error.hpp"
#include "mtorus/problem.hpp"

using namespace mtorus;

namespace {

const char* kExample = R"(# three generators
[alphabet]
generators = "e1 e2 e3"

[endomorphism]
e1 = "e2"
e2 = "e2^-1 e3 e2"   # trailing comment
e3 = "e2 e1^-1 e2"

[subgroup]
g1 = "t"
g2 = "e3^-1 e1"
g3 = "e2^-1 e3^-1 e1 e1 e3^-1 e1"

[options]
depth = 5
trace = false
)";

std::pair<std::size_t, std::size_t> error_position(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST(ParseProblem, FullFile) {
  const Problem p = parse_problem(kExample);
  EXPECT_EQ(p.alphabet.names(), (std::vector<std::string>{"e1", "e2", "e3"}));
  EXPECT_EQ(p.phi.image(1), p.alphabet.parse("e2^-1 e3 e2"));
  ASSERT_EQ(p.subgroup.size(), 3u);
  EXPECT_EQ(p.subgroup[0].name, "g1");
  EXPECT_EQ(p.subgroup[0].word, TorusWord::stable(1));
  EXPECT_EQ(p.depth, 5);
  EXPECT_EQ(p.trace, false);
  EXPECT_FALSE(p.jobs);
}

TEST(ParseProblem, InfersAlphabetInNaturalOrder) {
  const Problem p = parse_problem("[endomorphism]\ne10 = \"e2\"\ne2 = \"e10\"\ne1 = \"e1\"\n[subgroup]\ng = \"t\"\n");
  EXPECT_EQ(p.alphabet.names(), (std::vector<std::string>{"e1", "e2", "e10"}));
  EXPECT_EQ(p.phi.image(2), p.alphabet.parse("e2"));
}

TEST(ParseProblem, ErrorsCarryLineAndColumn) {
  EXPECT_EQ(error_position("[endomorphism]\ne1 = \"e1 e9\"\n"), (std::pair<std::size_t, std::size_t>{2, 10}));
  EXPECT_EQ(error_position("[endomorphism]\ne1 = \"e1\"\n[subgroup]\ng = \"t^2\"\n"), (std::pair<std::size_t, std::size_t>{4, 7}));
  EXPECT_EQ(error_position("[endomorphism]\ne1 \"e1\"\n"), (std::pair<std::size_t, std::size_t>{2, 4}));
  EXPECT_EQ(error_position("[bogus]\n").first, 1u);
  EXPECT_EQ(error_position("e1 = \"e1\"\n").first, 1u);
  EXPECT_EQ(error_position("[endomorphism]\ne1 = \"e1\n").first, 2u);
  EXPECT_EQ(error_position("[endomorphism]\ne1 = \"e1\"\n[options]\ndepth = x\n").first, 4u);
  EXPECT_EQ(error_position("[endomorphism]\ne1 = \"e1\"\n[options]\ndepth = 0\n").first, 4u);
  EXPECT_EQ(error_position("[endomorphism]\ne1 = \"e1\"\n[options]\ncolour = 3\n").first, 4u);
  EXPECT_EQ(error_position("[endomorphism]\ne1 = \"e1\"\ne1 = \"e1\"\n").first, 3u);
  EXPECT_EQ(error_position("[alphabet]\ngenerators = \"a b\"\n[endomorphism]\na = \"b\"\n").first, 3u);
  EXPECT_EQ(error_position("[endomorphism]\nt = \"t\"\n").first, 2u);
  EXPECT_EQ(error_position("[subgroup]\ng = \"t\"\n").first, 2u);
}

TEST(NaturalOrder, DigitRunsCompareNumerically) {
  EXPECT_TRUE(natural_less("e2", "e10"));
  EXPECT_FALSE(natural_less("e10", "e2"));
  EXPECT_TRUE(natural_less("a", "b"));
  EXPECT_TRUE(natural_less("x1", "x1a"));
  EXPECT_FALSE(natural_less("e1", "e1"));
}

TEST(RunProblem, DocumentRoundTrip) {
  const Problem p = parse_problem(kExample);
  const mtorus::Run run = run_problem(p);
  EXPECT_TRUE(run.ok());
  EXPECT_TRUE(run.trivial_reduction);
  EXPECT_EQ(run.stable_letter, "t");
  const auto doc = to_json(run);
  EXPECT_EQ(doc.at("certified_depth"), 8);  // options are applied by the caller
  const auto reparsed = nlohmann::json::parse(doc.dump());
  const DocumentReport rep = verify_document(reparsed, p);
  EXPECT_TRUE(rep.ok()) << (rep.messages.empty() ? "" : rep.messages.front());
  EXPECT_EQ(to_json(run_problem(p)).dump(), doc.dump());
}

TEST(RunProblem, TamperedDocumentFails) {
  const Problem p = parse_problem(kExample);
  auto doc = nlohmann::json::parse(to_json(run_problem(p)).dump());
  doc["relators"][0]["w"] = "a1";
  EXPECT_FALSE(verify_document(doc, p).presentation);
  doc = nlohmann::json::parse(to_json(run_problem(p)).dump());
  doc["certificate"][0]["rank"] = 99;
  EXPECT_FALSE(verify_document(doc, p).certificate);
  doc = nlohmann::json::parse(to_json(run_problem(p)).dump());
  doc["witnesses"][1]["expression"] = "t";
  EXPECT_FALSE(verify_document(doc, p).witnesses);
  doc = nlohmann::json::parse(to_json(run_problem(p)).dump());
  doc["endomorphism"]["e1"] = "e1";
  EXPECT_FALSE(verify_document(doc, p).header);
  doc.erase("A");
  EXPECT_THROW(verify_document(doc, p), ParseError);
}

TEST(RunProblem, StableLetterSquared) {
  const Problem p = parse_problem(
      "[alphabet]\ngenerators = \"e1 e2 e3\"\n[endomorphism]\ne1 = \"e2\"\ne2 = \"e2^-1 e3 e2\"\ne3 = \"e2 e1^-1 e2\"\n"
      "[subgroup]\ng1 = \"t t\"\ng2 = \"e1\"\n");
  const mtorus::Run run = run_problem(p);
  EXPECT_FALSE(run.trivial_reduction);
  EXPECT_EQ(run.stable_letter, "s");
  EXPECT_EQ(std::get<TCase>(run.reduction).m, 2);
  EXPECT_TRUE(run.ok());
  EXPECT_NE(format_run(run).find("<s, "), std::string::npos);
  EXPECT_TRUE(verify_document(nlohmann::json::parse(to_json(run).dump()), p).ok());
}

TEST(RunProblem, FreeCaseAndErrors) {
  const Problem p = parse_problem("[endomorphism]\ne1 = \"e1 e1\"\ne2 = \"e2 e2\"\n[subgroup]\ng1 = \"e1\"\ng2 = \"t^-1 e2 t\"\n");
  const mtorus::Run run = run_problem(p);
  EXPECT_TRUE(run.free_case());
  EXPECT_TRUE(run.ok());
  EXPECT_TRUE(verify_document(nlohmann::json::parse(to_json(run).dump()), p).ok());

  EXPECT_THROW(run_problem(parse_problem("[endomorphism]\ne1 = \"e1\"\ne2 = \"e1\"\n[subgroup]\ng = \"t\"\n")), Error);
  EXPECT_THROW(run_problem(parse_problem("[endomorphism]\ne1 = \"e1\"\n")), Error);
  EXPECT_THROW(run_problem(parse_problem("[endomorphism]\ne1 = \"e1\"\n[subgroup]\ng = \"1\"\n")), Error);
}

TEST(RunProblem, IdentityGivesDirectProductRelators) {
  const mtorus::Run run = run_problem(parse_problem("[endomorphism]\ne1 = \"e1\"\ne2 = \"e2\"\n[subgroup]\ng1 = \"t\"\ng2 = \"e1\"\ng3 = \"e2\"\n"));
  ASSERT_TRUE(run.presentation);
  EXPECT_EQ(format_presentation(run), "<t, a1, a2 | t a1 t^-1 = a1, t a2 t^-1 = a2>");
}
