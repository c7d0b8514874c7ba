#include "natt/toprep.hpp"

#include <algorithm>
#include <functional>

#include "natt/error.hpp"

namespace natt {

TopRep::TopRep(MarkedGraph graph, std::vector<Word> images, std::size_t lamination_stratum)
    : graph_(std::move(graph)), r_(lamination_stratum) {
  images_.resize(2 * graph_.edge_count());
  for (std::uint32_t e = 0; e < graph_.edge_count() && e < images.size(); ++e) {
    images_[DirEdge::forward(e).code()] = images[e];
    images_[DirEdge::backward(e).code()] = inverse(images[e]);
    max_image_ = std::max(max_image_, images[e].size());
  }
  level_.assign(graph_.edge_count(), graph_.strata().size());
  for (std::uint32_t e = 0; e < graph_.edge_count(); ++e) {
    if (auto s = graph_.stratum_of(e)) level_[e] = *s;
  }
}

bool TopRep::in_top_stratum(std::uint32_t edge) const { return level_.at(edge) == r_; }

std::size_t TopRep::height(const Word& w) const {
  std::size_t h = 0;
  for (DirEdge d : w) h = std::max(h, level_.at(d.edge()));
  return h;
}

bool TransitionMatrix::is_zero() const {
  for (const auto& row : entries) {
    for (auto x : row) {
      if (x != 0) return false;
    }
  }
  return true;
}

bool TransitionMatrix::is_irreducible() const {
  const std::size_t n = dim();
  if (n == 0) return false;
  // Strong connectivity of the digraph k -> j when entries[j][k] > 0.
  auto reach_all = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const auto k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        const auto w = transpose ? entries[k][j] : entries[j][k];
        if (w > 0 && !seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  if (n == 1) return entries[0][0] > 0;
  return reach_all(false) && reach_all(true);
}

bool TransitionMatrix::is_permutation() const {
  const std::size_t n = dim();
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t col = 0;
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      col += entries[j][k];
      row += entries[k][j];
    }
    if (col != 1 || row != 1) return false;
  }
  return true;
}

TransitionMatrix transition_matrix(const TopRep& t, std::size_t stratum) {
  TransitionMatrix m;
  m.edges = t.graph().strata().at(stratum).edges;
  std::sort(m.edges.begin(), m.edges.end());
  const std::size_t n = m.edges.size();
  m.entries.assign(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t k = 0; k < n; ++k) {
    for (DirEdge d : t.image(m.edges[k])) {
      auto it = std::find(m.edges.begin(), m.edges.end(), d.edge());
      if (it != m.edges.end()) ++m.entries[static_cast<std::size_t>(it - m.edges.begin())][k];
    }
  }
  return m;
}

std::vector<RepViolation> validate_rep(const TopRep& t) {
  std::vector<RepViolation> out;
  auto add = [&out](RepViolationKind k, std::string d) { out.push_back({k, std::move(d)}); };
  const auto& g = t.graph();
  for (const auto& gv : validate_graph(g)) add(RepViolationKind::Graph, gv.detail);
  if (!out.empty()) return out;

  const auto& strata = g.strata();
  if (t.lamination_stratum() >= strata.size() || strata[t.lamination_stratum()].kind != StratumClass::EG) {
    add(RepViolationKind::LaminationNotEG, "lamination stratum must be a declared EG stratum");
  }

  for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
    const auto& name = g.edge_name(e);
    const Word& img = t.image(e);
    if (img.empty()) {
      add(RepViolationKind::NotAPath, "image of " + name + " is trivial");
      continue;
    }
    if (!is_composable(g, img)) {
      add(RepViolationKind::NotAPath, "image of " + name + " is not a path");
      continue;
    }
    const DirEdge fe = DirEdge::forward(e);
    if (g.initial(img.front()) != g.initial(fe) || g.terminal(img.back()) != g.terminal(fe)) {
      add(RepViolationKind::EndpointMismatch,
          "image of " + name + " does not join the (fixed) endpoints of " + name);
    }
    if (!is_reduced(img)) add(RepViolationKind::UnreducedImage, "image of " + name + " is not reduced");
    if (t.height(img) > t.height(e)) {
      add(RepViolationKind::Filtration, "image of " + name + " leaves G_" + std::to_string(t.height(e) + 1));
    }
  }
  if (!out.empty()) return out;

  for (std::size_t i = 0; i < strata.size(); ++i) {
    const auto label = "stratum " + std::to_string(i + 1);
    const auto m = transition_matrix(t, i);
    const auto kind = strata[i].kind;
    if (kind == StratumClass::Zero) {
      if (!m.is_zero()) add(RepViolationKind::ZeroMismatch, label + " is declared zero but M_i != 0");
      continue;
    }
    if (m.is_zero()) {
      add(RepViolationKind::ZeroMismatch, label + " has M_i = 0 but is not declared zero");
      continue;
    }
    if (kind == StratumClass::EG) {
      if (!m.is_irreducible()) {
        add(RepViolationKind::NotIrreducible, label + " is declared EG but M_i is reducible");
      } else if (m.is_permutation()) {
        add(RepViolationKind::NoGrowth, label + " is declared EG but M_i is a permutation matrix");
      }
      continue;
    }
    if (strata[i].edges.size() != 1) {
      add(RepViolationKind::NotSingleEdge, label + " is NEG but has more than one edge");
      continue;
    }
    const std::uint32_t e = strata[i].edges.front();
    const Word& img = t.image(e);
    const Word u(img.begin() + 1, img.end());
    if (img.front() != DirEdge::forward(e) || (!u.empty() && t.height(u) >= i)) {
      add(RepViolationKind::NegForm, label + ": image of " + g.edge_name(e) + " is not E.u with u below");
      continue;
    }
    if (kind == StratumClass::NegFixed && !u.empty()) {
      add(RepViolationKind::NotFixed, label + ": " + g.edge_name(e) + " is declared fixed");
    }
    if (kind == StratumClass::NegLinear) {
      const bool closed = !u.empty() && g.initial(u.front()) == g.terminal(u.back());
      if (!closed || f_sharp_word(t, u) != free_reduce(u)) {
        add(RepViolationKind::NotLinear,
            label + ": " + g.edge_name(e) + " is declared linear but u is not a closed Nielsen path");
      }
    }
  }
  return out;
}

Word f_sharp_word(const TopRep& t, const Word& w) {
  Word out;
  for (DirEdge d : w) {
    for (DirEdge x : t.image(d)) {
      if (!out.empty() && out.back() == x.inverse()) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
  }
  return out;
}

EdgePath f_sharp(const TopRep& t, const EdgePath& p) { return {p.start, f_sharp_word(t, p.edges)}; }

Circuit f_sharp(const TopRep& t, const Circuit& c) {
  Word w = f_sharp_word(t, c.word());
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  if (hi == lo) throw InvalidInput("a circuit maps to the trivial class");
  return Circuit::from_cyclically_reduced(
      Word(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi)));
}

EdgePath iterate(const TopRep& t, const EdgePath& p, std::size_t k, std::size_t budget) {
  EdgePath cur = p;
  for (std::size_t i = 1; i <= k; ++i) {
    cur = f_sharp(t, cur);
    if (cur.size() > budget) throw BudgetExceeded(i, cur.size());
  }
  return cur;
}

Circuit iterate(const TopRep& t, const Circuit& c, std::size_t k, std::size_t budget) {
  Circuit cur = c;
  for (std::size_t i = 1; i <= k; ++i) {
    cur = f_sharp(t, cur);
    if (cur.size() > budget) throw BudgetExceeded(i, cur.size());
  }
  return cur;
}

DirEdge tile_edge(const TopRep& t) {
  const auto& edges = t.top_edges();
  if (edges.empty()) throw InvalidInput("lamination stratum is empty");
  return DirEdge::forward(*std::min_element(edges.begin(), edges.end()));
}

Word tile(const TopRep& t, std::size_t m, std::size_t budget) {
  const DirEdge e = tile_edge(t);
  return iterate(t, EdgePath{t.graph().initial(e), {e}}, m, budget).edges;
}

DirEdge direction_image(const TopRep& t, DirEdge d) { return t.image(d).front(); }

bool is_illegal_turn(const TopRep& t, DirEdge d1, DirEdge d2) {
  if (d1 == d2) return false;
  const std::size_t period_bound = 2 * t.graph().edge_count() + 1;
  for (std::size_t k = 0; k < period_bound; ++k) {
    d1 = direction_image(t, d1);
    d2 = direction_image(t, d2);
    if (d1 == d2) return true;
  }
  return false;
}

GrowthBounds pf_growth(const TransitionMatrix& m, std::size_t n) {
  using boost::multiprecision::cpp_int;
  if (!m.is_irreducible()) throw InvalidInput("transition matrix is reducible");
  const std::size_t dim = m.dim();
  auto apply = [&](const std::vector<cpp_int>& x) {
    std::vector<cpp_int> y(dim, 0);
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < dim; ++k) y[j] += m.entries[j][k] * x[k];
    }
    return y;
  };
  std::vector<cpp_int> x(dim, 1);
  for (std::size_t i = 0; i < n; ++i) x = apply(x);
  const auto y = apply(x);
  GrowthBounds b;
  b.power = n;
  for (std::size_t j = 0; j < dim; ++j) {
    const Rational ratio(y[j], x[j]);
    if (j == 0 || ratio < b.lower) b.lower = ratio;
    if (j == 0 || ratio > b.upper) b.upper = ratio;
  }
  return b;
}

GrowthBounds pf_growth(const TopRep& t, std::size_t stratum, std::size_t n) {
  return pf_growth(transition_matrix(t, stratum), n);
}

}  // namespace natt
