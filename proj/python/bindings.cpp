// Thin string-level bindings; structured results come back as JSON text and
// are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "mtorus/document.hpp"
#include "mtorus/error.hpp"
#include "mtorus/labeled_graph.hpp"
#include "mtorus/mapping_torus.hpp"
#include "mtorus/problem.hpp"

namespace py = pybind11;
using namespace mtorus;

namespace {

Alphabet alphabet_or_infer(const std::optional<std::vector<std::string>>& alphabet, std::vector<std::string> fallback) {
  return alphabet ? Alphabet(*alphabet) : infer_alphabet(std::move(fallback));
}

py::dict fold_words(const std::vector<std::string>& words, const std::optional<std::vector<std::string>>& alphabet) {
  std::vector<std::string> seen;
  for (const auto& w : words) {
    for (const auto& tok : tokenize_word(w)) seen.push_back(tok.name);
  }
  const Alphabet names = alphabet_or_infer(alphabet, std::move(seen));
  std::vector<Word> ws;
  for (const auto& w : words) ws.push_back(names.parse(w));
  const Tightened t = tighten_graph(bouquet(ws));
  std::vector<std::string> basis;
  for (const auto& b : basis_from_tree(t.graph, spanning_tree(t.graph))) basis.push_back(names.format(b));
  py::dict out;
  out["rank"] = t.graph.rank();
  out["basis"] = basis;
  out["trace"] = format_trace(t.trace);
  return out;
}

py::tuple normalize_word(const std::string& word, const std::map<std::string, std::string>& images,
                         const std::optional<std::vector<std::string>>& alphabet) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : images) keys.push_back(k);
  const Alphabet names = alphabet_or_infer(alphabet, keys);
  std::vector<Word> imgs(names.rank());
  for (const auto& [k, v] : images) {
    const auto g = names.index(k);
    if (!g) throw ParseError("unknown generator '" + k + "'", 0, 1);
    imgs[static_cast<std::size_t>(*g)] = names.parse(v);
  }
  if (images.size() != names.rank()) throw Error("every generator needs an image");
  const NormalForm nf = normalize(parse_torus_word(names, word), Endo(names.rank(), std::move(imgs)));
  return py::make_tuple(nf.q, names.format(nf.x), nf.r);
}

std::string present_text(const std::string& problem_text, std::optional<int> depth, std::optional<int> jobs) {
  const Problem problem = parse_problem(problem_text);
  PresentOptions options;
  options.depth = depth.value_or(problem.depth.value_or(8));
  options.jobs = jobs.value_or(problem.jobs.value_or(1));
  return to_json(run_problem(problem, options)).dump();
}

bool verify_text(const std::string& document, const std::string& problem_text) {
  return verify_document(nlohmann::json::parse(document), parse_problem(problem_text)).ok();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<Error>(m, "Error", PyExc_ValueError);
  m.def("fold", &fold_words, py::arg("words"), py::arg("alphabet") = py::none());
  m.def("normalize", &normalize_word, py::arg("word"), py::arg("images"), py::arg("alphabet") = py::none());
  m.def("present_json", &present_text, py::arg("problem"), py::arg("depth") = py::none(), py::arg("jobs") = py::none(),
        py::call_guard<py::gil_scoped_release>());
  m.def("verify_json", &verify_text, py::arg("document"), py::arg("problem"));
}
