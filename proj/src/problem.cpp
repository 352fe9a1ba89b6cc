#include "mtorus/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "mtorus/error.hpp"

namespace mtorus {

namespace {

enum class Section { None, Alphabet, Endomorphism, Subgroup, Options };

struct Entry {
  std::string key;
  std::string value;
  bool quoted = false;
  std::size_t line = 0;
  std::size_t key_column = 0;
  std::size_t value_column = 0;  // first character inside the quotes
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && is_space(s[i])) ++i;
  return i;
}

// Re-anchors a word-level parse error at its place in the file.
template <class F>
auto at_entry(const Entry& e, F&& f) {
  try {
    return f();
  } catch (const ParseError& err) {
    std::string what = err.what();
    if (err.column() != 0) what = what.substr(what.find(": ") + 2);
    throw ParseError(what, e.line, e.value_column + (err.column() == 0 ? 0 : err.column() - 1));
  }
}

int parse_int(const Entry& e) {
  int v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (e.quoted || ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer for '" + e.key + "'", e.line, e.value_column);
  }
  return v;
}

bool parse_bool(const Entry& e) {
  if (!e.quoted && e.value == "true") return true;
  if (!e.quoted && e.value == "false") return false;
  throw ParseError("expected true or false for '" + e.key + "'", e.line, e.value_column);
}

}  // namespace

std::vector<TorusWord> Problem::generators() const {
  std::vector<TorusWord> out;
  out.reserve(subgroup.size());
  for (const auto& g : subgroup) out.push_back(g.word);
  return out;
}

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string_view na = a.substr(i, ie - i);
      std::string_view nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

Alphabet infer_alphabet(std::vector<std::string> names) {
  std::sort(names.begin(), names.end(), [](const std::string& x, const std::string& y) { return natural_less(x, y); });
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return Alphabet(std::move(names));
}

Problem parse_problem(std::string_view text) {
  std::map<Section, std::vector<Entry>> entries;
  std::map<Section, std::size_t> header_line;
  Section section = Section::None;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::size_t i = skip_space(line, 0);
    if (i == line.size() || line[i] == '#') continue;

    if (line[i] == '[') {
      const std::size_t close = line.find(']', i);
      if (close == std::string_view::npos) throw ParseError("unterminated section header", line_no, i + 1);
      const std::string_view name = line.substr(i + 1, close - i - 1);
      const std::size_t rest = skip_space(line, close + 1);
      if (rest != line.size() && line[rest] != '#') throw ParseError("unexpected text after section header", line_no, rest + 1);
      if (name == "alphabet") section = Section::Alphabet;
      else if (name == "endomorphism") section = Section::Endomorphism;
      else if (name == "subgroup") section = Section::Subgroup;
      else if (name == "options") section = Section::Options;
      else throw ParseError("unknown section '" + std::string(name) + "'", line_no, i + 2);
      if (header_line.contains(section)) throw ParseError("duplicate section '" + std::string(name) + "'", line_no, i + 2);
      header_line[section] = line_no;
      continue;
    }

    if (section == Section::None) throw ParseError("entry outside any section", line_no, i + 1);
    Entry e;
    e.line = line_no;
    e.key_column = i + 1;
    std::size_t k = i;
    while (k < line.size() && !is_space(line[k]) && line[k] != '=') ++k;
    e.key = std::string(line.substr(i, k - i));
    if (!is_valid_identifier(e.key)) throw ParseError("invalid key '" + e.key + "'", line_no, i + 1);
    k = skip_space(line, k);
    if (k == line.size() || line[k] != '=') throw ParseError("expected '='", line_no, k + 1);
    k = skip_space(line, k + 1);
    if (k == line.size() || line[k] == '#') throw ParseError("missing value", line_no, k + 1);
    std::size_t after = 0;
    if (line[k] == '"') {
      const std::size_t close = line.find('"', k + 1);
      if (close == std::string_view::npos) throw ParseError("unterminated string", line_no, k + 1);
      e.value = std::string(line.substr(k + 1, close - k - 1));
      e.quoted = true;
      e.value_column = k + 2;
      after = close + 1;
    } else {
      std::size_t v = k;
      while (v < line.size() && !is_space(line[v]) && line[v] != '#') ++v;
      e.value = std::string(line.substr(k, v - k));
      e.value_column = k + 1;
      after = v;
    }
    after = skip_space(line, after);
    if (after != line.size() && line[after] != '#') throw ParseError("unexpected text after value", line_no, after + 1);
    entries[section].push_back(std::move(e));
  }

  Problem p;

  // Alphabet first: every word below is read against it.
  if (header_line.contains(Section::Alphabet)) {
    const auto& list = entries[Section::Alphabet];
    if (list.size() != 1 || list[0].key != "generators" || !list[0].quoted) {
      const std::size_t at = list.empty() ? header_line[Section::Alphabet] : list[0].line;
      throw ParseError("[alphabet] takes exactly one entry: generators = \"...\"", at, 1);
    }
    const Entry& e = list[0];
    std::vector<std::string> names;
    for (const auto& tok : at_entry(e, [&] { return tokenize_word(e.value); })) {
      if (tok.sign < 0) throw ParseError("generator names carry no exponent", e.line, e.value_column + tok.column - 1);
      names.push_back(tok.name);
    }
    if (names.empty()) throw ParseError("empty alphabet", e.line, e.value_column);
    p.alphabet = at_entry(e, [&] { return Alphabet(names); });
  } else {
    if (!header_line.contains(Section::Endomorphism)) throw ParseError("missing [endomorphism] section", std::max<std::size_t>(line_no, 1), 1);
    std::vector<std::string> names;
    for (const auto& e : entries[Section::Endomorphism]) {
      if (is_reserved_name(e.key)) throw ParseError("generator name '" + e.key + "' is reserved", e.line, e.key_column);
      names.push_back(e.key);
    }
    if (names.empty()) throw ParseError("empty [endomorphism] section", header_line[Section::Endomorphism], 1);
    p.alphabet = infer_alphabet(std::move(names));
  }

  if (!header_line.contains(Section::Endomorphism)) throw ParseError("missing [endomorphism] section", std::max<std::size_t>(line_no, 1), 1);
  std::vector<std::optional<Word>> images(p.alphabet.rank());
  for (const auto& e : entries[Section::Endomorphism]) {
    const auto g = p.alphabet.index(e.key);
    if (!g) throw ParseError("unknown generator '" + e.key + "'", e.line, e.key_column);
    if (!e.quoted) throw ParseError("image words must be quoted", e.line, e.value_column);
    auto& slot = images[static_cast<std::size_t>(*g)];
    if (slot) throw ParseError("duplicate image for '" + e.key + "'", e.line, e.key_column);
    slot = at_entry(e, [&] { return p.alphabet.parse(e.value); });
  }
  std::vector<Word> imgs;
  for (std::size_t g = 0; g < images.size(); ++g) {
    if (!images[g]) {
      throw ParseError("no image for generator '" + p.alphabet.name(static_cast<int>(g)) + "'",
                       header_line[Section::Endomorphism], 1);
    }
    imgs.push_back(*images[g]);
  }
  p.phi = Endo(p.alphabet.rank(), std::move(imgs));

  for (const auto& e : entries[Section::Subgroup]) {
    if (!e.quoted) throw ParseError("subgroup words must be quoted", e.line, e.value_column);
    for (const auto& other : p.subgroup) {
      if (other.name == e.key) throw ParseError("duplicate subgroup generator '" + e.key + "'", e.line, e.key_column);
    }
    p.subgroup.push_back({e.key, at_entry(e, [&] { return parse_torus_word(p.alphabet, e.value); })});
  }

  for (const auto& e : entries[Section::Options]) {
    if (e.key == "depth") {
      p.depth = parse_int(e);
      if (*p.depth < 1) throw ParseError("depth must be at least 1", e.line, e.value_column);
    } else if (e.key == "jobs") {
      p.jobs = parse_int(e);
      if (*p.jobs < 1) throw ParseError("jobs must be at least 1", e.line, e.value_column);
    } else if (e.key == "trace") {
      p.trace = parse_bool(e);
    } else {
      throw ParseError("unknown option '" + e.key + "'", e.line, e.key_column);
    }
  }
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem load_problem(const std::filesystem::path& path) { return parse_problem(read_file(path)); }

}  // namespace mtorus
