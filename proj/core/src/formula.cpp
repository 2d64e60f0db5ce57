#include "morpho/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

#include "morpho/error.hpp"

namespace morpho {

struct Formula::Node {
  NodeKind kind;
  std::string name;
  std::vector<std::string> args;
  unsigned iterations = 0;
  Formula lhs;
  Formula rhs;
};

namespace {

const std::set<std::string_view> kKeywords = {"box", "dia", "U", "A", "T", "F", "forall", "exists"};

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':')) return false;
  return true;
}

bool is_integer(std::string_view s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// Variables are identifiers; integer literals are domain constants.
bool is_variable_term(std::string_view term) { return is_identifier(term); }

}  // namespace

std::string variable_selem(std::string_view variable) {
  return std::string(kVariableSelemPrefix) + std::string(variable);
}

std::optional<std::string> selem_variable(std::string_view selem) {
  if (selem.size() > kVariableSelemPrefix.size() && selem.starts_with(kVariableSelemPrefix))
    return std::string(selem.substr(kVariableSelemPrefix.size()));
  return std::nullopt;
}

// Leaf nodes are shared.
Formula::Formula() : Formula(top()) {}

Formula Formula::atom(std::string name, std::vector<std::string> args) {
  if (!is_identifier(name) || kKeywords.contains(name))
    throw DomainError("invalid atom name '" + name + "'");
  for (const auto& a : args)
    if (!is_identifier(a) && !is_integer(a)) throw DomainError("invalid term '" + a + "'");
  return Formula(std::make_shared<const Node>(Node{NodeKind::atom, std::move(name), std::move(args), 0, {}, {}}));
}

Formula Formula::top() {
  static const auto node = std::make_shared<const Node>(Node{NodeKind::top, {}, {}, 0, Formula(nullptr), Formula(nullptr)});
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node =
      std::make_shared<const Node>(Node{NodeKind::bottom, {}, {}, 0, Formula(nullptr), Formula(nullptr)});
  return Formula(node);
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::negation, {}, {}, 0, std::move(f), Formula(nullptr)}));
}

Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::conjunction, {}, {}, 0, std::move(a), std::move(b)}));
}

Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::disjunction, {}, {}, 0, std::move(a), std::move(b)}));
}

Formula Formula::implication(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::implication, {}, {}, 0, std::move(a), std::move(b)}));
}

Formula Formula::biconditional(const Formula& a, const Formula& b) {
  return conjunction(implication(a, b), implication(b, a));
}

Formula Formula::erosion(std::string selem, unsigned iterations, Formula f) {
  if (!is_identifier(selem)) throw DomainError("invalid structuring element name '" + selem + "'");
  if (iterations == 0) throw DomainError("iteration count must be >= 1");
  return Formula(
      std::make_shared<const Node>(Node{NodeKind::erosion, std::move(selem), {}, iterations, std::move(f), Formula(nullptr)}));
}

Formula Formula::dilation(std::string selem, unsigned iterations, Formula f) {
  if (!is_identifier(selem)) throw DomainError("invalid structuring element name '" + selem + "'");
  if (iterations == 0) throw DomainError("iteration count must be >= 1");
  return Formula(
      std::make_shared<const Node>(Node{NodeKind::dilation, std::move(selem), {}, iterations, std::move(f), Formula(nullptr)}));
}

NodeKind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const noexcept { return node_->name; }
const std::vector<std::string>& Formula::args() const noexcept { return node_->args; }
unsigned Formula::iterations() const noexcept { return node_->iterations; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }

namespace {

int compare(const Formula& a, const Formula& b) {
  if (&a == &b) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case NodeKind::top:
    case NodeKind::bottom:
      return 0;
    case NodeKind::atom:
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      if (a.args() != b.args()) return a.args() < b.args() ? -1 : 1;
      return 0;
    case NodeKind::negation:
      return compare(a.lhs(), b.lhs());
    case NodeKind::erosion:
    case NodeKind::dilation:
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      if (a.iterations() != b.iterations()) return a.iterations() < b.iterations() ? -1 : 1;
      return compare(a.lhs(), b.lhs());
    default:
      if (int c = compare(a.lhs(), b.lhs()); c != 0) return c;
      return compare(a.rhs(), b.rhs());
  }
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || compare(a, b) == 0;
}

bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Lexer and recursive-descent parser.

namespace {

enum class Tok {
  ident,
  integer,
  lparen,
  rparen,
  lbrack,
  rbrack,
  langle,
  rangle,
  caret,
  tilde,
  amp,
  bar,
  arrow,
  iff,
  dot,
  comma,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    auto single = [&](Tok k) {
      out.push_back({k, std::string(1, c), l, cl});
      advance(1);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == ':'))
        ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::integer, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
    } else if (c == '<' && src.substr(i, 3) == "<->") {
      out.push_back({Tok::iff, "<->", l, cl});
      advance(3);
    } else if (c == '-' && src.substr(i, 2) == "->") {
      out.push_back({Tok::arrow, "->", l, cl});
      advance(2);
    } else {
      switch (c) {
        case '(': single(Tok::lparen); break;
        case ')': single(Tok::rparen); break;
        case '[': single(Tok::lbrack); break;
        case ']': single(Tok::rbrack); break;
        case '<': single(Tok::langle); break;
        case '>': single(Tok::rangle); break;
        case '^': single(Tok::caret); break;
        case '~': single(Tok::tilde); break;
        case '&': single(Tok::amp); break;
        case '|': single(Tok::bar); break;
        case '.': single(Tok::dot); break;
        case ',': single(Tok::comma); break;
        default:
          throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
      }
    }
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::end) fail("unexpected " + describe(peek()) + " after formula");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().line, peek().column, msg); }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::arrow)) return Formula::implication(lhs, implication());
    if (accept(Tok::iff)) return Formula::biconditional(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::bar)) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::amp)) f = Formula::conjunction(f, unary());
    return f;
  }

  unsigned iterations() {
    if (!accept(Tok::caret)) return 1;
    const Token& t = expect(Tok::integer, "iteration count");
    unsigned long n = 0;
    try {
      n = std::stoul(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.line, t.column, "iteration count out of range");
    }
    if (n == 0 || n > 1'000'000) throw ParseError(t.line, t.column, "iteration count must be in 1..1000000");
    return static_cast<unsigned>(n);
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::tilde:
        next();
        return Formula::negation(unary());
      case Tok::lbrack: {
        next();
        std::string name = expect(Tok::ident, "structuring element name").text;
        expect(Tok::rbrack, "']'");
        unsigned n = iterations();
        return Formula::erosion(std::move(name), n, unary());
      }
      case Tok::langle: {
        next();
        std::string name = expect(Tok::ident, "structuring element name").text;
        expect(Tok::rangle, "'>'");
        unsigned n = iterations();
        return Formula::dilation(std::move(name), n, unary());
      }
      case Tok::lparen: {
        next();
        Formula f = implication();
        expect(Tok::rparen, "')'");
        return f;
      }
      case Tok::ident:
        return keyword_or_atom();
      default:
        fail("expected formula, found " + describe(t));
    }
  }

  Formula keyword_or_atom() {
    const Token t = next();
    if (t.text == "box") return Formula::box(unary());
    if (t.text == "dia") return Formula::dia(unary());
    if (t.text == "U") return Formula::everywhere(unary());
    if (t.text == "A") return Formula::somewhere(unary());
    if (t.text == "T") return Formula::top();
    if (t.text == "F") return Formula::bottom();
    if (t.text == "forall" || t.text == "exists") {
      if (peek().kind != Tok::ident || kKeywords.contains(peek().text) || peek().text.find(':') != std::string::npos)
        fail("expected variable name after '" + t.text + "'");
      std::string var = next().text;
      expect(Tok::dot, "'.' after quantified variable");
      Formula body = unary();
      return t.text == "forall" ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    std::vector<std::string> args;
    if (accept(Tok::lparen)) {
      do {
        if (peek().kind != Tok::ident && peek().kind != Tok::integer)
          fail("expected term, found " + describe(peek()));
        args.push_back(next().text);
      } while (accept(Tok::comma));
      expect(Tok::rparen, "')' after arguments");
    }
    return Formula::atom(t.text, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Printing precedence: implication 1, disjunction 2, conjunction 3, unary 4.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::implication:
      return 1;
    case NodeKind::disjunction:
      return 2;
    case NodeKind::conjunction:
      return 3;
    default:
      return 4;
  }
}

void render(const Formula& f, int min_prec, std::string& out) {
  const bool parens = precedence(f) < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case NodeKind::atom:
      out += atom_text(f);
      break;
    case NodeKind::top:
      out += 'T';
      break;
    case NodeKind::bottom:
      out += 'F';
      break;
    case NodeKind::negation:
      out += '~';
      render(f.lhs(), 4, out);
      break;
    case NodeKind::conjunction:
      render(f.lhs(), 3, out);
      out += " & ";
      render(f.rhs(), 4, out);
      break;
    case NodeKind::disjunction:
      render(f.lhs(), 2, out);
      out += " | ";
      render(f.rhs(), 3, out);
      break;
    case NodeKind::implication:
      render(f.lhs(), 2, out);
      out += " -> ";
      render(f.rhs(), 1, out);
      break;
    case NodeKind::erosion:
    case NodeKind::dilation: {
      const bool erode = f.kind() == NodeKind::erosion;
      const auto var = selem_variable(f.name());
      if (f.iterations() == 1 && f.name() == kMainSelem) {
        out += erode ? "box " : "dia ";
      } else if (f.iterations() == 1 && f.name() == kUniversalSelem) {
        out += erode ? "U " : "A ";
      } else if (f.iterations() == 1 && var && !kKeywords.contains(*var) && var->find(':') == std::string::npos) {
        out += erode ? "forall " : "exists ";
        out += *var;
        out += ". ";
      } else {
        out += erode ? '[' : '<';
        out += f.name();
        out += erode ? ']' : '>';
        if (f.iterations() > 1) out += "^" + std::to_string(f.iterations());
        out += ' ';
      }
      render(f.lhs(), 4, out);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string print_formula(const Formula& f) {
  std::string out;
  render(f, 1, out);
  return out;
}

std::string atom_text(const Formula& atom) {
  std::string s = atom.name();
  if (!atom.args().empty()) {
    s += '(';
    for (std::size_t i = 0; i < atom.args().size(); ++i) {
      if (i) s += ',';
      s += atom.args()[i];
    }
    s += ')';
  }
  return s;
}

namespace {

template <typename Leaf>
Formula rebuild(const Formula& f, const Leaf& leaf) {
  switch (f.kind()) {
    case NodeKind::atom:
      return leaf(f);
    case NodeKind::top:
    case NodeKind::bottom:
      return f;
    case NodeKind::negation:
      return Formula::negation(rebuild(f.lhs(), leaf));
    case NodeKind::conjunction:
      return Formula::conjunction(rebuild(f.lhs(), leaf), rebuild(f.rhs(), leaf));
    case NodeKind::disjunction:
      return Formula::disjunction(rebuild(f.lhs(), leaf), rebuild(f.rhs(), leaf));
    case NodeKind::implication:
      return Formula::implication(rebuild(f.lhs(), leaf), rebuild(f.rhs(), leaf));
    case NodeKind::erosion:
      return Formula::erosion(f.name(), f.iterations(), rebuild(f.lhs(), leaf));
    case NodeKind::dilation:
      return Formula::dilation(f.name(), f.iterations(), rebuild(f.lhs(), leaf));
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& f, const std::map<std::string, Formula>& replacement) {
  if (replacement.empty()) return f;
  return rebuild(f, [&](const Formula& atom) {
    auto it = replacement.find(atom_text(atom));
    return it == replacement.end() ? atom : it->second;
  });
}

std::size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::atom:
    case NodeKind::top:
    case NodeKind::bottom:
      return 0;
    case NodeKind::negation:
      return 1 + formula_size(f.lhs());
    case NodeKind::erosion:
    case NodeKind::dilation:
      return f.iterations() + formula_size(f.lhs());
    default:
      return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
  }
}

Formula unfold_iterations(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::atom:
    case NodeKind::top:
    case NodeKind::bottom:
      return f;
    case NodeKind::negation:
      return Formula::negation(unfold_iterations(f.lhs()));
    case NodeKind::conjunction:
      return Formula::conjunction(unfold_iterations(f.lhs()), unfold_iterations(f.rhs()));
    case NodeKind::disjunction:
      return Formula::disjunction(unfold_iterations(f.lhs()), unfold_iterations(f.rhs()));
    case NodeKind::implication:
      return Formula::implication(unfold_iterations(f.lhs()), unfold_iterations(f.rhs()));
    case NodeKind::erosion:
    case NodeKind::dilation: {
      Formula g = unfold_iterations(f.lhs());
      for (unsigned i = 0; i < f.iterations(); ++i)
        g = f.kind() == NodeKind::erosion ? Formula::erosion(f.name(), 1, g) : Formula::dilation(f.name(), 1, g);
      return g;
    }
  }
  return f;
}

namespace {

void collect(const Formula& f, const std::function<void(const Formula&)>& visit) {
  visit(f);
  if (f.kind() == NodeKind::negation || f.is_modal()) {
    collect(f.lhs(), visit);
  } else if (f.is_binary()) {
    collect(f.lhs(), visit);
    collect(f.rhs(), visit);
  }
}

void free_vars(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case NodeKind::atom:
      for (const auto& a : f.args())
        if (is_variable_term(a) && std::find(bound.begin(), bound.end(), a) == bound.end()) out.insert(a);
      return;
    case NodeKind::top:
    case NodeKind::bottom:
      return;
    case NodeKind::negation:
      free_vars(f.lhs(), bound, out);
      return;
    case NodeKind::erosion:
    case NodeKind::dilation: {
      auto var = selem_variable(f.name());
      if (var) bound.push_back(*var);
      free_vars(f.lhs(), bound, out);
      if (var) bound.pop_back();
      return;
    }
    default:
      free_vars(f.lhs(), bound, out);
      free_vars(f.rhs(), bound, out);
  }
}

struct Captured {};

Formula subst_var(const Formula& f, const std::string& x, const std::string& t, std::vector<std::string>& bound) {
  switch (f.kind()) {
    case NodeKind::atom: {
      if (std::find(bound.begin(), bound.end(), x) != bound.end()) return f;
      bool changed = false;
      std::vector<std::string> args = f.args();
      for (auto& a : args) {
        if (a == x) {
          if (is_variable_term(t) && std::find(bound.begin(), bound.end(), t) != bound.end()) throw Captured{};
          a = t;
          changed = true;
        }
      }
      return changed ? Formula::atom(f.name(), std::move(args)) : f;
    }
    case NodeKind::top:
    case NodeKind::bottom:
      return f;
    case NodeKind::negation:
      return Formula::negation(subst_var(f.lhs(), x, t, bound));
    case NodeKind::conjunction:
      return Formula::conjunction(subst_var(f.lhs(), x, t, bound), subst_var(f.rhs(), x, t, bound));
    case NodeKind::disjunction:
      return Formula::disjunction(subst_var(f.lhs(), x, t, bound), subst_var(f.rhs(), x, t, bound));
    case NodeKind::implication:
      return Formula::implication(subst_var(f.lhs(), x, t, bound), subst_var(f.rhs(), x, t, bound));
    case NodeKind::erosion:
    case NodeKind::dilation: {
      auto var = selem_variable(f.name());
      if (var) bound.push_back(*var);
      Formula body = subst_var(f.lhs(), x, t, bound);
      if (var) bound.pop_back();
      return f.kind() == NodeKind::erosion ? Formula::erosion(f.name(), f.iterations(), body)
                                           : Formula::dilation(f.name(), f.iterations(), body);
    }
  }
  return f;
}

}  // namespace

std::set<std::string> atom_names(const Formula& f) {
  std::set<std::string> out;
  collect(f, [&](const Formula& g) {
    if (g.kind() == NodeKind::atom) out.insert(atom_text(g));
  });
  return out;
}

std::set<std::string> selem_names(const Formula& f) {
  std::set<std::string> out;
  collect(f, [&](const Formula& g) {
    if (g.is_modal()) out.insert(g.name());
  });
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  free_vars(f, bound, out);
  return out;
}

std::optional<Formula> substitute_variable(const Formula& f, std::string_view variable, std::string_view term) {
  if (!is_identifier(term) && !is_integer(term)) throw DomainError("invalid term '" + std::string(term) + "'");
  std::vector<std::string> bound;
  try {
    return subst_var(f, std::string(variable), std::string(term), bound);
  } catch (const Captured&) {
    return std::nullopt;
  }
}

}  // namespace morpho
