// mtorus: folding, presentations and normal forms for mapping tori of free
// group endomorphisms.
//
// Exit status: 0 success, 1 verification failure, 2 input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mtorus/document.hpp"
#include "mtorus/error.hpp"
#include "mtorus/labeled_graph.hpp"
#include "mtorus/mapping_torus.hpp"
#include "mtorus/presentation.hpp"
#include "mtorus/problem.hpp"

namespace fs = std::filesystem;
using namespace mtorus;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

class DotWriter {
 public:
  explicit DotWriter(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }

  bool enabled() const { return !dir_.empty(); }

  void write(const std::string& dot) {
    std::ostringstream name;
    name << "step_" << std::setw(4) << std::setfill('0') << count_++ << ".dot";
    std::ofstream out(fs::path(dir_) / name.str());
    if (!out) throw Error("cannot write to '" + dir_ + "'");
    out << dot;
  }

 private:
  std::string dir_;
  int count_ = 0;
};

// Generator names from free-form words, used when --alphabet is absent.
Alphabet alphabet_from_words(const std::vector<std::string>& words) {
  std::vector<std::string> names;
  for (const auto& w : words) {
    for (const auto& tok : tokenize_word(w)) {
      if (tok.name != "t") names.push_back(tok.name);
    }
  }
  return infer_alphabet(std::move(names));
}

Alphabet alphabet_from_option(const std::string& text) {
  std::vector<std::string> names;
  for (const auto& tok : tokenize_word(text)) names.push_back(tok.name);
  return Alphabet(std::move(names));
}

int cmd_fold(const std::vector<std::string>& words, const std::string& alphabet, const std::string& dot_dir, bool trace,
             bool machine) {
  const Alphabet names = alphabet.empty() ? alphabet_from_words(words) : alphabet_from_option(alphabet);
  std::vector<Word> ws;
  for (const auto& w : words) {
    Word parsed = names.parse(w);
    if (parsed.empty()) throw Error("cannot fold the empty word");
    ws.push_back(std::move(parsed));
  }

  DotWriter dots(dot_dir);
  LabeledGraph g = bouquet(ws);
  FoldTrace folds;
  if (dots.enabled()) dots.write(to_dot(g, &names));
  while (const auto v = find_violation(g)) {
    FoldResult r = fold(g, v->first, v->second);
    g = std::move(r.graph);
    folds.push_back(r.record);
    if (dots.enabled()) dots.write(to_dot(g, &names));
  }
  const std::vector<Word> basis = basis_from_tree(g, spanning_tree(g));

  if (machine) {
    nlohmann::ordered_json doc;
    doc["alphabet"] = names.names();
    doc["rank"] = g.rank();
    doc["vertices"] = g.vertex_count();
    doc["edges"] = g.edge_count();
    nlohmann::ordered_json b = nlohmann::ordered_json::array();
    for (const auto& w : basis) b.push_back(names.format(w));
    doc["basis"] = b;
    if (trace) {
      nlohmann::ordered_json t = nlohmann::ordered_json::array();
      std::istringstream lines(format_trace(folds));
      for (std::string line; std::getline(lines, line);) t.push_back(line);
      doc["trace"] = t;
    }
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  if (trace) std::cout << format_trace(folds);
  std::cout << "rank " << g.rank() << '\n';
  for (const auto& w : basis) std::cout << names.format(w) << '\n';
  return kOk;
}

int cmd_present(const std::string& file, int depth, int jobs, const std::string& dot_dir, bool trace_flag, bool machine) {
  const Problem problem = load_problem(file);
  PresentOptions options;
  options.depth = depth > 0 ? depth : problem.depth.value_or(8);
  options.jobs = jobs > 0 ? jobs : problem.jobs.value_or(1);
  const bool trace = trace_flag || problem.trace.value_or(false);

  DotWriter dots(dot_dir);
  std::string trace_text;
  if (dots.enabled() || trace) {
    options.observer = [&](const LabeledGraphPair& pair, const PairStep* step) {
      if (dots.enabled()) dots.write(to_dot(pair, &problem.alphabet));
      if (trace && step) trace_text += format_pair_trace({*step}, problem.alphabet);
      if (trace && !step) trace_text += "PAIR rr " + std::to_string(relative_rank(pair)) + '\n';
    };
  }

  const Run run = run_problem(problem, options);
  if (machine) {
    auto doc = to_json(run);
    if (trace) {
      nlohmann::ordered_json t = nlohmann::ordered_json::array();
      std::istringstream lines(trace_text);
      for (std::string line; std::getline(lines, line);) t.push_back(line);
      doc["trace"] = t;
    }
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << trace_text << format_run(run);
  }
  return run.ok() ? kOk : kVerifyFailed;
}

int cmd_verify(const std::string& doc_file, const std::string& problem_file) {
  const Problem problem = load_problem(problem_file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(doc_file));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
  }
  const DocumentReport rep = verify_document(doc, problem);
  std::cout << "header:       " << (rep.header ? "pass" : "FAIL") << '\n'
            << "presentation: " << (rep.presentation ? "pass" : "FAIL") << '\n'
            << "certificate:  " << (rep.certificate ? "pass" : "FAIL") << '\n'
            << "witnesses:    " << (rep.witnesses ? "pass" : "FAIL") << '\n';
  for (const auto& m : rep.messages) std::cout << "  " << m << '\n';
  std::cout << (rep.ok() ? "PASS" : "FAIL") << '\n';
  return rep.ok() ? kOk : kVerifyFailed;
}

Endo endo_from_images(const Alphabet& names, const std::vector<std::string>& images) {
  std::vector<std::optional<Word>> slots(names.rank());
  for (const auto& entry : images) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw ParseError("expected NAME=WORD in '" + entry + "'", 0, 0);
    std::string key = entry.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    const auto g = names.index(key);
    if (!g) throw ParseError("unknown generator '" + key + "'", 0, 1);
    slots[static_cast<std::size_t>(*g)] = names.parse(entry.substr(eq + 1));
  }
  std::vector<Word> imgs;
  for (std::size_t g = 0; g < slots.size(); ++g) {
    if (!slots[g]) throw ParseError("no image for generator '" + names.name(static_cast<int>(g)) + "'", 0, 0);
    imgs.push_back(*slots[g]);
  }
  return Endo(names.rank(), std::move(imgs));
}

std::pair<Alphabet, Endo> endo_source(const std::string& problem_file, const std::vector<std::string>& images,
                                      const std::string& alphabet) {
  if (!problem_file.empty()) {
    Problem p = load_problem(problem_file);
    return {p.alphabet, p.phi};
  }
  if (images.empty()) throw ParseError("give --problem or at least one --image", 0, 0);
  Alphabet names;
  if (!alphabet.empty()) {
    names = alphabet_from_option(alphabet);
  } else {
    std::vector<std::string> keys;
    for (const auto& entry : images) {
      std::string key = entry.substr(0, entry.find('='));
      while (!key.empty() && key.back() == ' ') key.pop_back();
      keys.push_back(key);
    }
    names = infer_alphabet(std::move(keys));
  }
  Endo phi = endo_from_images(names, images);
  return {names, phi};
}

int cmd_normalize(const std::string& word, const std::string& problem_file, const std::vector<std::string>& images,
                  const std::string& alphabet, bool machine) {
  const auto [names, phi] = endo_source(problem_file, images, alphabet);
  if (!is_injective(phi)) throw Error("endomorphism is not injective");
  const TorusWord w = parse_torus_word(names, word);
  const NormalForm nf = normalize(w, phi);
  if (machine) {
    nlohmann::ordered_json doc;
    doc["q"] = nf.q;
    doc["x"] = names.format(nf.x);
    doc["r"] = nf.r;
    doc["p"] = p_hom(w);
    std::cout << doc.dump(2) << '\n';
  } else if (nf.q == 0 && nf.r == 0 && nf.x.empty()) {
    std::cout << "identity\n";
  } else {
    std::cout << format_normal_form(names, nf) << '\n';
  }
  return kOk;
}

int cmd_reduce(const std::string& file, bool machine) {
  const Problem problem = load_problem(file);
  if (!is_injective(problem.phi)) throw Error("endomorphism is not injective");
  if (problem.subgroup.empty()) throw Error("empty subgroup section");
  const SubgroupReduction red = reduce_subgroup(problem.generators(), problem.phi);
  const Alphabet& names = problem.alphabet;
  nlohmann::ordered_json doc;
  std::ostringstream human;
  if (const auto* fc = std::get_if<FreeCase>(&red)) {
    doc["kind"] = "free";
    doc["k"] = fc->k;
    nlohmann::ordered_json b = nlohmann::ordered_json::array();
    human << "free, k = " << fc->k << '\n';
    for (const auto& w : fc->basis) {
      b.push_back(names.format(w));
      human << "  " << names.format(w) << '\n';
    }
    doc["basis"] = b;
  } else {
    const auto& tc = std::get<TCase>(red);
    doc["kind"] = "stable";
    doc["m"] = tc.m;
    doc["p"] = tc.p;
    doc["b"] = names.format(tc.b);
    nlohmann::ordered_json theta = nlohmann::ordered_json::object();
    human << "m = " << tc.m << ", p = " << tc.p << ", b = " << names.format(tc.b) << '\n' << "theta:\n";
    for (std::size_t g = 0; g < tc.theta.rank(); ++g) {
      const std::string& n = names.name(static_cast<int>(g));
      theta[n] = names.format(tc.theta.image(static_cast<int>(g)));
      human << "  " << n << " -> " << names.format(tc.theta.image(static_cast<int>(g))) << '\n';
    }
    doc["theta"] = theta;
    nlohmann::ordered_json rw = nlohmann::ordered_json::array();
    human << "rewritten over s:\n";
    for (std::size_t i = 0; i < tc.rewritten.size(); ++i) {
      const std::string text = format_torus_word(names, tc.rewritten[i], "s");
      rw.push_back({{"generator", problem.subgroup[i].name}, {"word", text}});
      human << "  " << problem.subgroup[i].name << " = " << text << '\n';
    }
    doc["rewritten"] = rw;
  }
  std::cout << (machine ? doc.dump(2) + "\n" : human.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Presentations of subgroups of mapping tori of free group endomorphisms"};
  app.require_subcommand(1);

  bool machine = false;
  bool trace = false;
  std::string alphabet;
  std::string dot_dir;
  int depth = 0;
  int jobs = 0;

  std::vector<std::string> fold_words;
  auto* fold = app.add_subcommand("fold", "Tighten the bouquet of words and print a basis");
  fold->add_option("words", fold_words, "Words, one argument each");
  fold->add_option("--alphabet", alphabet, "Generator names, in order");
  fold->add_option("--dot-dir", dot_dir, "Write one DOT file per fold step");
  fold->add_flag("--trace", trace, "Print the fold trace");
  fold->add_flag("--machine", machine, "JSON output");

  std::string problem_file;
  auto* present = app.add_subcommand("present", "Compute a presentation of the subgroup in a problem file");
  present->add_option("problem", problem_file, "Problem file")->required()->check(CLI::ExistingFile);
  present->add_option("--depth", depth, "Certification depth (default 8)")->check(CLI::PositiveNumber);
  present->add_option("--jobs", jobs, "Certification levels checked in parallel")->check(CLI::PositiveNumber);
  present->add_option("--dot-dir", dot_dir, "Write one DOT file per pair fold");
  present->add_flag("--trace", trace, "Print the pair-fold trace");
  present->add_flag("--machine", machine, "JSON output");

  std::string doc_file;
  std::string verify_problem;
  auto* verify = app.add_subcommand("verify", "Re-check a JSON presentation against its problem file");
  verify->add_option("document", doc_file, "Output of present --machine")->required()->check(CLI::ExistingFile);
  verify->add_option("problem", verify_problem, "Problem file")->required()->check(CLI::ExistingFile);

  std::string word;
  std::string endo_problem;
  std::vector<std::string> images;
  auto* normalize_cmd = app.add_subcommand("normalize", "Normal form t^-q x t^r of a word");
  normalize_cmd->add_option("word", word, "Word over {t} and the alphabet")->required();
  normalize_cmd->add_option("--problem", endo_problem, "Take the endomorphism from a problem file")->check(CLI::ExistingFile);
  normalize_cmd->add_option("--image", images, "Generator image NAME=WORD, repeatable");
  normalize_cmd->add_option("--alphabet", alphabet, "Generator names, in order");
  normalize_cmd->add_flag("--machine", machine, "JSON output");

  std::string reduce_file;
  auto* reduce = app.add_subcommand("reduce", "Reduce the subgroup to the free or stable-letter case");
  reduce->add_option("problem", reduce_file, "Problem file")->required()->check(CLI::ExistingFile);
  reduce->add_flag("--machine", machine, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*fold) return cmd_fold(fold_words, alphabet, dot_dir, trace, machine);
    if (*present) return cmd_present(problem_file, depth, jobs, dot_dir, trace, machine);
    if (*verify) return cmd_verify(doc_file, verify_problem);
    if (*normalize_cmd) return cmd_normalize(word, endo_problem, images, alphabet, machine);
    if (*reduce) return cmd_reduce(reduce_file, machine);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
