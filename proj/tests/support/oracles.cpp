#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace morpho::fixtures {

Extent oracle_image(const Relation& rel, const Extent& x) {
  Extent out(rel.n, false);
  for (std::size_t a = 0; a < rel.n; ++a)
    if (x[a])
      for (std::size_t b = 0; b < rel.n; ++b)
        if (rel.r[a][b]) out[b] = true;
  return out;
}

Extent oracle_erode(const Relation& rel, const Extent& x) {
  Extent out(rel.n, true);
  for (std::size_t a = 0; a < rel.n; ++a)
    for (std::size_t b = 0; b < rel.n; ++b)
      if (rel.r[a][b] && !x[b]) out[a] = false;
  return out;
}

namespace {

Extent oracle_meets(const Relation& rel, const Extent& x) {
  Extent out(rel.n, false);
  for (std::size_t a = 0; a < rel.n; ++a)
    for (std::size_t b = 0; b < rel.n; ++b)
      if (rel.r[a][b] && x[b]) out[a] = true;
  return out;
}

}  // namespace

Extent oracle_sat(const Scenario& s, const Formula& f) {
  const std::size_t n = s.model.state_count();
  switch (f.kind()) {
    case NodeKind::atom: {
      auto it = s.atoms.find(f.name());
      if (it == s.atoms.end()) throw std::invalid_argument("oracle: unknown atom " + f.name());
      return it->second;
    }
    case NodeKind::top: return Extent(n, true);
    case NodeKind::bottom: return Extent(n, false);
    case NodeKind::negation: return complement(oracle_sat(s, f.lhs()));
    case NodeKind::conjunction: return intersect(oracle_sat(s, f.lhs()), oracle_sat(s, f.rhs()));
    case NodeKind::disjunction: return unite(oracle_sat(s, f.lhs()), oracle_sat(s, f.rhs()));
    case NodeKind::implication: return unite(complement(oracle_sat(s, f.lhs())), oracle_sat(s, f.rhs()));
    case NodeKind::erosion:
    case NodeKind::dilation: {
      auto it = s.relations.find(f.name());
      if (it == s.relations.end()) throw std::invalid_argument("oracle: unknown selem " + f.name());
      Extent x = oracle_sat(s, f.lhs());
      for (unsigned i = 0; i < f.iterations(); ++i)
        x = f.kind() == NodeKind::erosion ? oracle_erode(it->second, x) : oracle_meets(it->second, x);
      return x;
    }
  }
  return Extent(n, false);
}

bool subset(const Extent& a, const Extent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

bool meets(const Extent& a, const Extent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return true;
  return false;
}

Extent intersect(const Extent& a, const Extent& b) {
  Extent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

Extent unite(const Extent& a, const Extent& b) {
  Extent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

Extent complement(const Extent& a) {
  Extent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = !a[i];
  return out;
}

bool empty(const Extent& a) { return std::none_of(a.begin(), a.end(), [](bool b) { return b; }); }

std::vector<std::size_t> bfs_distances(const Relation& rel, const Extent& from) {
  std::vector<std::size_t> dist(rel.n, kUnreachable);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < rel.n; ++i)
    if (from[i]) {
      dist[i] = 0;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    const std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t b = 0; b < rel.n; ++b)
      if (rel.r[a][b] && dist[b] == kUnreachable) {
        dist[b] = dist[a] + 1;
        queue.push_back(b);
      }
  }
  return dist;
}

std::size_t bfs_min_distance(const Relation& rel, const Extent& a, const Extent& b) {
  const auto d = bfs_distances(rel, a);
  std::size_t best = kUnreachable;
  for (std::size_t i = 0; i < rel.n; ++i)
    if (b[i]) best = std::min(best, d[i]);
  return best;
}

std::size_t bfs_hausdorff(const Relation& rel, const Extent& a, const Extent& b) {
  const auto da = bfs_distances(rel, a);
  const auto db = bfs_distances(rel, b);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < rel.n; ++i) {
    if (b[i]) worst = std::max(worst, da[i]);
    if (a[i]) worst = std::max(worst, db[i]);
  }
  return worst;
}

bool truth_table_tautology(const Formula& skeleton) {
  std::map<std::string, std::size_t> letters;
  std::function<void(const Formula&)> collect = [&](const Formula& f) {
    if (f.kind() == NodeKind::atom) letters.emplace(f.name(), letters.size());
    if (f.kind() == NodeKind::negation) collect(f.lhs());
    if (f.is_binary()) {
      collect(f.lhs());
      collect(f.rhs());
    }
  };
  collect(skeleton);
  std::function<bool(const Formula&, unsigned)> eval = [&](const Formula& f, unsigned bits) -> bool {
    switch (f.kind()) {
      case NodeKind::atom: return (bits >> letters.at(f.name())) & 1u;
      case NodeKind::top: return true;
      case NodeKind::bottom: return false;
      case NodeKind::negation: return !eval(f.lhs(), bits);
      case NodeKind::conjunction: return eval(f.lhs(), bits) && eval(f.rhs(), bits);
      case NodeKind::disjunction: return eval(f.lhs(), bits) || eval(f.rhs(), bits);
      case NodeKind::implication: return !eval(f.lhs(), bits) || eval(f.rhs(), bits);
      default: throw std::invalid_argument("truth table: modal node in skeleton");
    }
  };
  for (unsigned bits = 0; bits < (1u << letters.size()); ++bits)
    if (!eval(skeleton, bits)) return false;
  return true;
}

}  // namespace morpho::fixtures
