#include "mtorus/document.hpp"

#include <sstream>

#include "mtorus/error.hpp"

namespace mtorus {

using nlohmann::ordered_json;

namespace {

bool is_trivial(const TCase& tc) { return tc.m == 1 && tc.p == 0 && tc.b.empty(); }

ordered_json endo_json(const Alphabet& names, const Endo& phi) {
  ordered_json out = ordered_json::object();
  for (std::size_t g = 0; g < phi.rank(); ++g) {
    out[names.name(static_cast<int>(g))] = names.format(phi.image(static_cast<int>(g)));
  }
  return out;
}

ordered_json words_json(const Alphabet& names, const std::vector<Word>& words) {
  ordered_json out = ordered_json::array();
  for (const auto& w : words) out.push_back(names.format(w));
  return out;
}

std::vector<Word> words_from_json(const Alphabet& names, const nlohmann::json& arr) {
  std::vector<Word> out;
  for (const auto& w : arr) out.push_back(names.parse(w.get<std::string>()));
  return out;
}

}  // namespace

Alphabet symbol_alphabet(std::size_t a_count, std::size_t b_count) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= a_count; ++i) names.push_back("a" + std::to_string(i));
  for (std::size_t i = 1; i <= b_count; ++i) names.push_back("b" + std::to_string(i));
  return Alphabet(std::move(names));
}

Run run_problem(const Problem& problem, const PresentOptions& options) {
  if (!is_injective(problem.phi)) throw Error("endomorphism is not injective");
  if (problem.subgroup.empty()) throw Error("empty subgroup section");

  Run run;
  run.alphabet = problem.alphabet;
  run.phi = problem.phi;
  run.generators = problem.subgroup;
  run.reduction = reduce_subgroup(problem.generators(), problem.phi);

  if (const auto* fc = std::get_if<FreeCase>(&run.reduction)) {
    run.working = problem.phi;
    // Nothing to present: the conjugated subgroup is free on the basis.
    std::vector<Word> conjugated;
    for (const auto& g : problem.subgroup) {
      const NormalForm nf = normalize(g.word, problem.phi);
      Word x = nf.x;
      for (long i = nf.q; i < fc->k; ++i) x = problem.phi(x);
      conjugated.push_back(std::move(x));
    }
    run.report.relator_words = true;
    run.report.torus_relators = true;
    run.report.same_subgroup = same_subgroup(conjugated, fc->basis);
    if (!run.report.same_subgroup) run.report.messages.push_back("free basis differs from the conjugated subgroup");
    run.witnesses_ok = true;
    return run;
  }

  const auto& tc = std::get<TCase>(run.reduction);
  run.trivial_reduction = is_trivial(tc);
  run.working = tc.theta;
  run.stable_letter = run.trivial_reduction ? "t" : "s";

  std::vector<TorusWord> with_stable(tc.rewritten);
  with_stable.push_back(TorusWord::stable(1));
  const std::vector<Word> a = collect_A(with_stable, run.working);
  Presentation pres = present(run.working, a, options);

  const ImageOracle oracle(run.working);
  run.witnesses_ok = true;
  for (std::size_t i = 0; i < tc.rewritten.size(); ++i) {
    Witness w{problem.subgroup[i].name, tc.rewritten[i], express_generator(tc.rewritten[i], pres, run.working)};
    if (!equal_in_torus(expand_generator_expression(w.expression, pres), w.rewritten, oracle)) {
      run.witnesses_ok = false;
    }
    run.witnesses.push_back(std::move(w));
  }
  run.report = verify_presentation(pres, run.working);
  run.presentation = std::move(pres);
  return run;
}

std::string format_presentation(const Run& run) {
  if (!run.presentation) return "";
  const Presentation& p = *run.presentation;
  const Alphabet sym = symbol_alphabet(p.a.size(), p.b.size());
  std::ostringstream os;
  os << '<' << run.stable_letter;
  for (const auto& n : sym.names()) os << ", " << n;
  os << " |";
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    os << (j == 0 ? " " : ", ") << run.stable_letter << ' ' << sym.name(static_cast<int>(j)) << ' ' << run.stable_letter
       << "^-1 = " << sym.format(p.relators[j].w);
  }
  os << (p.relators.empty() ? " >" : ">");
  return os.str();
}

std::string format_run(const Run& run) {
  std::ostringstream os;
  if (const auto* fc = std::get_if<FreeCase>(&run.reduction)) {
    os << "reduction: free, k = " << fc->k << '\n';
    if (fc->k == 0) {
      os << "H is free of rank " << fc->basis.size() << ":\n";
    } else {
      os << "t^" << fc->k << " H t^-" << fc->k << " is free of rank " << fc->basis.size() << ":\n";
    }
    for (std::size_t i = 0; i < fc->basis.size(); ++i) os << "  x" << i + 1 << " = " << run.alphabet.format(fc->basis[i]) << '\n';
  } else {
    const auto& tc = std::get<TCase>(run.reduction);
    if (run.trivial_reduction) {
      os << "reduction: t in H\n";
    } else {
      os << "reduction: m = " << tc.m << ", p = " << tc.p << ", b = " << run.alphabet.format(tc.b) << ", s = b t^" << tc.m
         << " after conjugation by t^" << tc.p << '\n';
      os << "theta:";
      for (std::size_t g = 0; g < tc.theta.rank(); ++g) {
        os << ' ' << run.alphabet.name(static_cast<int>(g)) << " -> " << run.alphabet.format(tc.theta.image(static_cast<int>(g)))
           << (g + 1 < tc.theta.rank() ? "," : "");
      }
      os << '\n';
    }
    const Presentation& p = *run.presentation;
    const Alphabet sym = symbol_alphabet(p.a.size(), p.b.size());
    os << format_presentation(run) << '\n';
    for (std::size_t i = 0; i < p.a.size(); ++i) os << "  " << sym.name(static_cast<int>(i)) << " = " << run.alphabet.format(p.a[i]) << '\n';
    for (std::size_t i = 0; i < p.b.size(); ++i) {
      os << "  " << sym.name(static_cast<int>(p.a.size() + i)) << " = " << run.alphabet.format(p.b[i]) << '\n';
    }
    os << "relative rank " << p.initial_relative_rank << " -> " << p.relative_rank() << ", restarts " << p.restart_count << '\n';
    os << "certificate (depth " << p.certified_depth << "):";
    for (const auto& l : p.certificate.levels) os << ' ' << l.level << ':' << l.rank << '/' << l.word_count;
    os << '\n';
    const Alphabet a_sym = symbol_alphabet(p.a.size(), 0);
    for (const auto& w : run.witnesses) {
      os << "  " << w.name << " = " << format_torus_word(a_sym, w.expression, run.stable_letter) << '\n';
    }
  }
  os << "verification: " << (run.ok() ? "pass" : "FAIL") << '\n';
  for (const auto& m : run.report.messages) os << "  " << m << '\n';
  if (!run.witnesses_ok) os << "  a witness does not match its generator\n";
  return os.str();
}

ordered_json to_json(const Run& run) {
  ordered_json doc;
  doc["alphabet"] = run.alphabet.names();
  doc["stable_letter"] = run.free_case() ? ordered_json(nullptr) : ordered_json(run.stable_letter);
  doc["endomorphism"] = endo_json(run.alphabet, run.phi);

  ordered_json red;
  if (const auto* fc = std::get_if<FreeCase>(&run.reduction)) {
    red["kind"] = "free";
    red["k"] = fc->k;
    red["basis"] = words_json(run.alphabet, fc->basis);
  } else {
    const auto& tc = std::get<TCase>(run.reduction);
    red["kind"] = "stable";
    red["m"] = tc.m;
    red["p"] = tc.p;
    red["b"] = run.alphabet.format(tc.b);
    red["theta"] = endo_json(run.alphabet, tc.theta);
    red["trivial"] = run.trivial_reduction;
  }
  doc["reduction"] = red;

  ordered_json A = ordered_json::array();
  ordered_json B = ordered_json::array();
  ordered_json relators = ordered_json::array();
  ordered_json cert = ordered_json::array();
  ordered_json witnesses = ordered_json::array();
  int depth = 0;
  int restarts = 0;
  int rr0 = 0;
  int rr = 0;
  if (run.presentation) {
    const Presentation& p = *run.presentation;
    const Alphabet sym = symbol_alphabet(p.a.size(), p.b.size());
    const Alphabet a_sym = symbol_alphabet(p.a.size(), 0);
    A = words_json(run.alphabet, p.a);
    B = words_json(run.alphabet, p.b);
    for (const auto& r : p.relators) relators.push_back({{"index", r.index}, {"w", sym.format(r.w)}});
    for (const auto& l : p.certificate.levels) {
      cert.push_back({{"level", l.level}, {"words", l.word_count}, {"rank", l.rank}, {"free", l.free}});
    }
    for (const auto& w : run.witnesses) {
      witnesses.push_back({{"generator", w.name},
                           {"rewritten", format_torus_word(run.alphabet, w.rewritten, run.stable_letter)},
                           {"expression", format_torus_word(a_sym, w.expression, run.stable_letter)}});
    }
    depth = p.certified_depth;
    restarts = p.restart_count;
    rr0 = p.initial_relative_rank;
    rr = p.relative_rank();
  }
  doc["A"] = A;
  doc["B"] = B;
  doc["relators"] = relators;
  doc["certified_depth"] = depth;
  doc["restart_count"] = restarts;
  doc["initial_relative_rank"] = rr0;
  doc["relative_rank"] = rr;
  doc["certificate"] = cert;
  doc["witnesses"] = witnesses;
  doc["verification"] = {{"relator_words", run.report.relator_words},
                         {"same_subgroup", run.report.same_subgroup},
                         {"torus_relators", run.report.torus_relators},
                         {"witnesses", run.witnesses_ok}};
  return doc;
}

DocumentReport verify_document(const nlohmann::json& doc, const Problem& problem) {
  DocumentReport rep;
  try {
    const Alphabet& names = problem.alphabet;
    rep.header = doc.at("alphabet").get<std::vector<std::string>>() == names.names();
    if (rep.header) {
      const auto& endo = doc.at("endomorphism");
      rep.header = endo.size() == names.rank();
      for (std::size_t g = 0; g < names.rank() && rep.header; ++g) {
        const std::string& n = names.name(static_cast<int>(g));
        rep.header = endo.contains(n) && names.parse(endo.at(n).get<std::string>()) == problem.phi.image(static_cast<int>(g));
      }
    }
    if (!rep.header) rep.messages.push_back("alphabet or endomorphism differs from the problem");

    if (!is_injective(problem.phi)) throw Error("endomorphism is not injective");
    const SubgroupReduction reduction = reduce_subgroup(problem.generators(), problem.phi);
    const auto& red = doc.at("reduction");
    const std::string kind = red.at("kind").get<std::string>();

    if (const auto* fc = std::get_if<FreeCase>(&reduction)) {
      const bool match = kind == "free" && red.at("k").get<long>() == fc->k &&
                         same_subgroup(words_from_json(names, red.at("basis")), fc->basis);
      rep.presentation = rep.certificate = rep.witnesses = match;
      if (!match) rep.messages.push_back("free reduction differs from the recomputed one");
      return rep;
    }

    const auto& tc = std::get<TCase>(reduction);
    if (kind != "stable" || red.at("m").get<long>() != tc.m || red.at("p").get<long>() != tc.p ||
        names.parse(red.at("b").get<std::string>()) != tc.b) {
      rep.header = false;
      rep.messages.push_back("reduction differs from the recomputed one");
    }
    const std::string stable = is_trivial(tc) ? "t" : "s";
    if (doc.at("stable_letter").get<std::string>() != stable) {
      rep.header = false;
      rep.messages.push_back("unexpected stable letter");
    }

    Presentation pres;
    pres.a = words_from_json(names, doc.at("A"));
    pres.b = words_from_json(names, doc.at("B"));
    const Alphabet sym = symbol_alphabet(pres.a.size(), pres.b.size());
    for (const auto& r : doc.at("relators")) {
      pres.relators.push_back({r.at("index").get<std::size_t>(), sym.parse(r.at("w").get<std::string>())});
    }
    pres.certified_depth = doc.at("certified_depth").get<int>();
    const VerifyReport vr = verify_presentation(pres, tc.theta);
    rep.presentation = vr.ok();
    rep.messages.insert(rep.messages.end(), vr.messages.begin(), vr.messages.end());

    rep.certificate = pres.certified_depth >= 1;
    if (rep.certificate) {
      const Certificate recomputed = certify_depth(pres.a, pres.b, tc.theta, pres.certified_depth);
      const auto& stored = doc.at("certificate");
      rep.certificate = stored.size() == recomputed.levels.size() && !recomputed.failed_level();
      for (std::size_t i = 0; i < stored.size() && rep.certificate; ++i) {
        const auto& l = recomputed.levels[i];
        rep.certificate = stored[i].at("level").get<int>() == l.level && stored[i].at("words").get<std::size_t>() == l.word_count &&
                          stored[i].at("rank").get<int>() == l.rank && stored[i].at("free").get<bool>() == l.free;
      }
    }
    if (!rep.certificate) rep.messages.push_back("certificate does not match a depth-" + std::to_string(pres.certified_depth) + " recomputation");

    const Alphabet a_sym = symbol_alphabet(pres.a.size(), 0);
    const ImageOracle oracle(tc.theta);
    const auto& wit = doc.at("witnesses");
    rep.witnesses = wit.size() == problem.subgroup.size();
    for (std::size_t i = 0; i < wit.size() && rep.witnesses; ++i) {
      const TorusWord expr = parse_torus_word(a_sym, wit[i].at("expression").get<std::string>(), stable);
      rep.witnesses = wit[i].at("generator").get<std::string>() == problem.subgroup[i].name &&
                      equal_in_torus(expand_generator_expression(expr, pres), tc.rewritten[i], oracle);
      if (!rep.witnesses) rep.messages.push_back("witness for " + problem.subgroup[i].name + " fails");
    }
    if (wit.size() != problem.subgroup.size()) rep.messages.push_back("witness count differs from the generator count");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what(), 0, 0);
  }
  return rep;
}

}  // namespace mtorus
