#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "morpho/error.hpp"
#include "morpho/formula.hpp"
#include "morpho/models.hpp"

namespace morpho {

namespace {

struct Word {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::string text;
  std::vector<Word> words;
};

std::vector<Word> split_words(const std::string& text) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    out.push_back({text.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

// Non-blank, non-comment lines. Comments are lines whose first word starts with '%'.
std::vector<Line> read_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto words = split_words(raw);
    if (words.empty() || words.front().text.starts_with('%')) continue;
    out.push_back({number, raw, std::move(words)});
  }
  return out;
}

[[noreturn]] void fail(const Line& line, std::size_t word, const std::string& msg) {
  const std::size_t col = word < line.words.size() ? line.words[word].column : line.text.size() + 1;
  throw ParseError(line.number, col, msg);
}

void expect_words(const Line& line, std::size_t min, const char* usage) {
  if (line.words.size() < min) fail(line, line.words.size(), std::string("expected: ") + usage);
}

std::size_t parse_count(const Line& line, std::size_t word) {
  const std::string& t = line.words[word].text;
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(t, &pos);
  } catch (const std::exception&) {
    fail(line, word, "expected a positive integer, found '" + t + "'");
  }
  if (pos != t.size() || v <= 0 || v > 100000) fail(line, word, "expected a positive integer, found '" + t + "'");
  return static_cast<std::size_t>(v);
}

double parse_real(const Line& line, std::size_t word, const std::string& t) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    fail(line, word, "expected a real number, found '" + t + "'");
  }
  if (pos != t.size()) fail(line, word, "expected a real number, found '" + t + "'");
  return v;
}

class StateTable {
 public:
  void add(const Line& line, std::size_t word) {
    const std::string& name = line.words[word].text;
    if (index_.contains(name)) fail(line, word, "duplicate state '" + name + "'");
    index_.emplace(name, names_.size());
    names_.push_back(name);
  }
  StateId lookup(const Line& line, std::size_t word) const {
    auto it = index_.find(line.words[word].text);
    if (it == index_.end()) fail(line, word, "unknown state '" + line.words[word].text + "'");
    return it->second;
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::map<std::string, StateId> index_;
  std::vector<std::string> names_;
};

struct Labels {
  std::map<std::string, std::vector<StateId>> crisp;
  std::map<std::string, std::vector<std::pair<StateId, double>>> fuzzy;
  std::vector<std::string> declared;
};

bool parse_label_line(const Line& line, const StateTable& states, Labels& labels) {
  const auto& w = line.words;
  if (w[0].text == "label") {
    expect_words(line, 2, "label STATE ATOM...");
    StateId s = states.lookup(line, 1);
    for (std::size_t i = 2; i < w.size(); ++i) labels.crisp[w[i].text].push_back(s);
    return true;
  }
  if (w[0].text == "atoms") {
    for (std::size_t i = 1; i < w.size(); ++i) labels.declared.push_back(w[i].text);
    return true;
  }
  return false;
}

void apply_labels(Model& m, const Labels& labels, std::size_t n) {
  for (const auto& name : labels.declared)
    if (!labels.crisp.contains(name) && !labels.fuzzy.contains(name)) m.set_atom(name, StateSet(n));
  for (const auto& [name, states] : labels.crisp) {
    if (labels.fuzzy.contains(name)) throw ModelError("atom '" + name + "' is labelled both crisp and fuzzy");
    StateSet ext(n);
    for (StateId s : states) ext.insert(s);
    m.set_atom(name, std::move(ext));
  }
  for (const auto& [name, entries] : labels.fuzzy) {
    std::vector<double> values(n, 0.0);
    for (auto [s, v] : entries) values[s] = v;
    m.set_fuzzy_atom(name, std::move(values));
  }
}

Model parse_kripke(const std::vector<Line>& lines) {
  StateTable states;
  std::vector<std::pair<const Line*, std::size_t>> pending_edges;
  struct SelemDecl {
    std::string name;
    bool reflexive;
  };
  std::vector<SelemDecl> selems;
  Labels labels;
  std::vector<const Line*> deferred;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto& w = line.words;
    if (w[0].text == "states") {
      for (std::size_t k = 1; k < w.size(); ++k) states.add(line, k);
    } else if (w[0].text == "edge" || w[0].text == "selem" || w[0].text == "label" || w[0].text == "atoms" ||
               w[0].text == "fuzzy") {
      deferred.push_back(&line);
    } else {
      fail(line, 0, "unknown kripke directive '" + w[0].text + "'");
    }
  }

  std::vector<std::pair<StateId, StateId>> edges;
  for (const Line* lp : deferred) {
    const Line& line = *lp;
    const auto& w = line.words;
    if (w[0].text == "edge") {
      if (w.size() != 3) fail(line, w.size() > 3 ? 3 : w.size(), "expected: edge FROM TO");
      edges.emplace_back(states.lookup(line, 1), states.lookup(line, 2));
    } else if (w[0].text == "selem") {
      expect_words(line, 3, "selem NAME edges [reflexive]");
      if (w[2].text != "edges") fail(line, 2, "graph selems are declared as 'selem NAME edges'");
      bool reflexive = false;
      if (w.size() == 4) {
        if (w[3].text != "reflexive") fail(line, 3, "expected 'reflexive'");
        reflexive = true;
      } else if (w.size() > 4) {
        fail(line, 4, "unexpected word");
      }
      selems.push_back({w[1].text, reflexive});
    } else if (w[0].text == "fuzzy") {
      if (w.size() < 3 || w[1].text != "label") fail(line, 1, "expected: fuzzy label STATE ATOM=VALUE...");
      StateId s = states.lookup(line, 2);
      for (std::size_t k = 3; k < w.size(); ++k) {
        auto eq = w[k].text.find('=');
        if (eq == std::string::npos || eq == 0) fail(line, k, "expected ATOM=VALUE");
        double v = parse_real(line, k, w[k].text.substr(eq + 1));
        labels.fuzzy[w[k].text.substr(0, eq)].emplace_back(s, v);
      }
    } else {
      parse_label_line(line, states, labels);
    }
  }
  if (states.names().empty()) throw ParseError(lines[0].number, 1, "kripke model declares no states");

  const std::size_t n = states.names().size();
  Model m(ModelKind::graph, states.names());
  if (selems.empty()) selems.push_back({std::string(kMainSelem), false});
  for (const auto& decl : selems) {
    std::vector<std::vector<StateId>> rows(n);
    for (auto [a, b] : edges) rows[a].push_back(b);
    if (decl.reflexive)
      for (StateId s = 0; s < n; ++s) rows[s].push_back(s);
    m.add_selem(StructuringElement::crisp(decl.name, std::move(rows)));
  }
  apply_labels(m, labels, n);
  return m;
}

Model parse_topology(const std::vector<Line>& lines) {
  StateTable states;
  std::vector<const Line*> deferred;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.words[0].text == "states") {
      for (std::size_t k = 1; k < line.words.size(); ++k) states.add(line, k);
    } else {
      deferred.push_back(&line);
    }
  }
  if (states.names().empty()) throw ParseError(lines[0].number, 1, "topology declares no states");
  const std::size_t n = states.names().size();

  std::vector<std::pair<StateId, StateId>> generators, explicit_pairs;
  Labels labels;
  for (const Line* lp : deferred) {
    const Line& line = *lp;
    const auto& w = line.words;
    if (w[0].text == "le" || w[0].text == "edge") {
      if (w.size() != 3) fail(line, w.size() > 3 ? 3 : w.size(), "expected: " + w[0].text + " A B");
      auto pair = std::make_pair(states.lookup(line, 1), states.lookup(line, 2));
      (w[0].text == "le" ? generators : explicit_pairs).push_back(pair);
    } else if (!parse_label_line(line, states, labels)) {
      fail(line, 0, "unknown topology directive '" + w[0].text + "'");
    }
  }
  // `le` generators are closed; explicit `edge` pairs must already be consistent.
  auto order = preorder_closure(n, generators);
  order.insert(order.end(), explicit_pairs.begin(), explicit_pairs.end());
  Model m = make_topology_model(states.names(), order, {});
  apply_labels(m, labels, n);
  return m;
}

std::vector<Offset> parse_offsets(const Line& line, std::size_t first_word, bool fuzzy) {
  std::string joined;
  for (std::size_t k = first_word; k < line.words.size(); ++k) joined += line.words[k].text;
  std::vector<Offset> out;
  std::size_t i = 0;
  auto bad = [&](const std::string& msg) { fail(line, first_word, msg); };
  while (i < joined.size()) {
    if (joined[i] != '(') bad("expected '(dx,dy)' offsets");
    auto close = joined.find(')', i);
    if (close == std::string::npos) bad("unterminated offset");
    std::string inner = joined.substr(i + 1, close - i - 1);
    auto comma = inner.find(',');
    if (comma == std::string::npos) bad("offset must be (dx,dy)");
    Offset o;
    try {
      std::size_t p1 = 0, p2 = 0;
      o.dx = std::stoi(inner.substr(0, comma), &p1);
      o.dy = std::stoi(inner.substr(comma + 1), &p2);
      if (p1 != comma || p2 != inner.size() - comma - 1) bad("offset must be (dx,dy)");
    } catch (const std::logic_error&) {
      bad("offset must be (dx,dy)");
    }
    i = close + 1;
    if (fuzzy) {
      if (i >= joined.size() || joined[i] != '=') bad("fuzzy offsets are written (dx,dy)=w");
      std::size_t j = i + 1;
      while (j < joined.size() && joined[j] != '(') ++j;
      o.weight = parse_real(line, first_word, joined.substr(i + 1, j - i - 1));
      i = j;
    }
    out.push_back(o);
  }
  if (out.empty()) bad("selem needs at least one offset");
  return out;
}

Model parse_grid(const std::vector<Line>& lines) {
  const Line& header = lines[0];
  if (header.words.size() != 3) fail(header, header.words.size(), "expected: grid W H");
  const std::size_t w = parse_count(header, 1), h = parse_count(header, 2);
  if (w * h > 4'000'000) fail(header, 1, "grid too large");
  Model m = make_grid_model(static_cast<int>(w), static_cast<int>(h));
  const GridGeometry geo = *m.grid();

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto& words = line.words;
    const bool fuzzy = words[0].text == "fuzzy";
    const std::size_t k = fuzzy ? 1 : 0;
    if (words.size() <= k) fail(line, k, "expected 'selem' or 'region'");
    const std::string& directive = words[k].text;
    if (directive == "selem") {
      if (words.size() < k + 4 || words[k + 2].text != "offsets")
        fail(line, k + 1, fuzzy ? "expected: fuzzy selem NAME offsets (dx,dy)=w ..." : "expected: selem NAME offsets (dx,dy) ...");
      auto offsets = parse_offsets(line, k + 3, fuzzy);
      const std::string& name = words[k + 1].text;
      m.add_selem(fuzzy ? fuzzy_offset_selem(name, geo, offsets) : offset_selem(name, geo, offsets));
    } else if (directive == "region") {
      if (words.size() != k + 2) fail(line, k + 1, "expected: region NAME");
      const std::string& name = words[k + 1].text;
      if (i + h >= lines.size())
        fail(line, k + 1, "region '" + name + "' needs " + std::to_string(h) + " rows");
      StateSet crisp(geo.cells());
      std::vector<double> values(geo.cells(), 0.0);
      for (std::size_t y = 0; y < h; ++y) {
        const Line& row = lines[i + 1 + y];
        if (fuzzy) {
          if (row.words.size() != w)
            fail(row, std::min(row.words.size(), w), "fuzzy row must have " + std::to_string(w) + " values");
          for (std::size_t x = 0; x < w; ++x)
            values[geo.id(static_cast<int>(x), static_cast<int>(y))] = parse_real(row, x, row.words[x].text);
        } else {
          if (row.words.size() != 1 || row.words[0].text.size() != w)
            fail(row, 0, "region row must be " + std::to_string(w) + " characters of '#' or '.'");
          const std::string& cells = row.words[0].text;
          for (std::size_t x = 0; x < w; ++x) {
            if (cells[x] == '#')
              crisp.insert(geo.id(static_cast<int>(x), static_cast<int>(y)));
            else if (cells[x] != '.')
              throw ParseError(row.number, row.words[0].column + x, "region cells must be '#' or '.'");
          }
        }
      }
      if (fuzzy)
        m.set_fuzzy_atom(name, std::move(values));
      else
        m.set_atom(name, std::move(crisp));
      i += h;
    } else {
      fail(line, k, "unknown grid directive '" + directive + "'");
    }
  }
  return m;
}

Model parse_fol(const std::vector<Line>& lines) {
  std::vector<std::string> vars, domain;
  std::map<std::string, Predicate> preds;
  std::vector<const Line*> pred_lines;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto& w = line.words;
    if (w[0].text == "vars") {
      for (std::size_t k = 1; k < w.size(); ++k) vars.push_back(w[k].text);
    } else if (w[0].text == "domain") {
      for (std::size_t k = 1; k < w.size(); ++k) domain.push_back(w[k].text);
    } else if (w[0].text == "pred") {
      pred_lines.push_back(&line);
    } else {
      fail(line, 0, "unknown fol directive '" + w[0].text + "'");
    }
  }
  if (domain.empty()) throw ParseError(lines[0].number, 1, "fol model needs a non-empty 'domain' line");
  if (vars.empty()) throw ParseError(lines[0].number, 1, "fol model needs a non-empty 'vars' line");

  for (const Line* lp : pred_lines) {
    const Line& line = *lp;
    expect_words(line, 2, "pred NAME(VARS): TUPLES");
    const std::size_t start = line.words[1].column - 1;
    std::string rest = line.text.substr(start);
    auto open = rest.find('('), close = rest.find(')'), colon = rest.find(':', close == std::string::npos ? 0 : close);
    if (open == std::string::npos || close == std::string::npos || close < open || colon == std::string::npos)
      fail(line, 1, "expected: pred NAME(VARS): TUPLES");
    std::string name = rest.substr(0, open);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    if (name.empty()) fail(line, 1, "missing predicate name");
    if (preds.contains(name)) fail(line, 1, "duplicate predicate '" + name + "'");
    Predicate p;
    std::string params = rest.substr(open + 1, close - open - 1);
    std::replace(params.begin(), params.end(), ',', ' ');
    for (const auto& word : split_words(params)) p.params.push_back(word.text);
    if (p.params.empty()) fail(line, 1, "predicate needs at least one argument");
    std::string tuples = rest.substr(colon + 1);
    std::stringstream ts(tuples);
    std::string tuple;
    while (std::getline(ts, tuple, ',')) {
      auto values = split_words(tuple);
      if (values.empty()) {
        if (tuples.find_first_not_of(" \t") == std::string::npos) break;
        fail(line, 1, "empty tuple in predicate '" + name + "'");
      }
      if (values.size() != p.params.size())
        fail(line, 1, "tuple arity mismatch in predicate '" + name + "'");
      std::vector<std::size_t> t;
      for (const auto& v : values) {
        auto it = std::find(domain.begin(), domain.end(), v.text);
        if (it == domain.end()) fail(line, 1, "value '" + v.text + "' not in domain");
        t.push_back(static_cast<std::size_t>(it - domain.begin()));
      }
      p.tuples.push_back(std::move(t));
    }
    preds.emplace(std::move(name), std::move(p));
  }
  return build_valuation_space(vars, domain, preds);
}

}  // namespace

Model parse_model(std::string_view text) {
  auto lines = read_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty model file");
  const std::string& head = lines[0].words[0].text;
  if (head == "kripke") return parse_kripke(lines);
  if (head == "grid") return parse_grid(lines);
  if (head == "topology") return parse_topology(lines);
  if (head == "fol") return parse_fol(lines);
  fail(lines[0], 0, "unknown model format '" + head + "' (expected kripke, grid, topology or fol)");
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

}  // namespace morpho
