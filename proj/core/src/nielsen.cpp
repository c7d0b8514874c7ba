#include "natt/nielsen.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "natt/error.hpp"

namespace natt {

std::string_view to_string(NielsenKind k) {
  switch (k) {
    case NielsenKind::Trivial:
      return "trivial";
    case NielsenKind::NonClosed:
      return "nonclosed";
    case NielsenKind::Closed:
      return "closed";
  }
  return "?";
}

bool verify_nielsen(const TopRep& t, const EdgePath& p) { return f_sharp(t, p) == p; }

bool is_indivisible_nielsen(const TopRep& t, const EdgePath& p) {
  if (p.trivial() || !is_reduced(p.edges) || !verify_nielsen(t, p)) return false;
  const auto& g = t.graph();
  for (std::size_t cut = 1; cut < p.size(); ++cut) {
    const EdgePath head{p.start, Word(p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(cut))};
    const EdgePath tail{g.terminal(p.edges[cut - 1]),
                        Word(p.edges.begin() + static_cast<std::ptrdiff_t>(cut), p.edges.end())};
    if (verify_nielsen(t, head) && verify_nielsen(t, tail)) return false;
  }
  return true;
}

namespace {

/// Depth-first enumeration of fixed paths with exact prefix pruning.
///
/// Write a candidate p = q.s with |q| = k. Then f_#(p) is reduce(W.X) where
/// W = f_#(q) and X = f_#(s), so f_#(p) begins with the first |W| - |X|
/// letters of W, and |X| <= max_image * |s| <= max_image * (max_len - k).
/// Any fixed p must therefore agree with W on that many letters.
class FixedPathScan {
 public:
  FixedPathScan(const TopRep& t, std::size_t height, std::size_t max_len)
      : t_(t), height_(height), max_len_(max_len), lmax_(t.max_image_length()) {}

  std::vector<EdgePath> run() {
    const auto& g = t_.graph();
    for (std::uint32_t code = 0; code < 2 * g.edge_count(); ++code) {
      const DirEdge d = DirEdge::from_code(code);
      if (t_.height(d.edge()) > height_) continue;
      q_.assign(1, d);
      images_.assign(1, t_.image(d));
      extend(t_.height(d.edge()) == height_ ? 1 : 0);
    }
    std::sort(found_.begin(), found_.end(), [](const EdgePath& a, const EdgePath& b) {
      return a.edges.size() != b.edges.size() ? a.edges.size() < b.edges.size() : a.edges < b.edges;
    });
    return found_;
  }

 private:
  void extend(std::size_t top_count) {
    const std::size_t k = q_.size();
    const Word w = images_.back();
    if (top_count > 0 && w == q_) found_.push_back({t_.graph().initial(q_.front()), q_});
    if (k == max_len_) return;

    const std::size_t slack = lmax_ * (max_len_ - k);
    std::optional<DirEdge> forced;
    if (w.size() > slack) {
      const std::size_t agreed = w.size() - slack;
      if (agreed > max_len_) return;
      for (std::size_t i = 0; i < std::min(agreed, k); ++i) {
        if (w[i] != q_[i]) return;
      }
      if (agreed > k) forced = w[k];
    }

    const auto& g = t_.graph();
    for (DirEdge d : g.darts_at(g.terminal(q_.back()))) {
      if (d == q_.back().inverse() || t_.height(d.edge()) > height_) continue;
      if (forced && d != *forced) continue;
      Word next = w;
      for (DirEdge x : t_.image(d)) {
        if (!next.empty() && next.back() == x.inverse()) {
          next.pop_back();
        } else {
          next.push_back(x);
        }
      }
      q_.push_back(d);
      images_.push_back(std::move(next));
      extend(top_count + (t_.height(d.edge()) == height_ ? 1 : 0));
      images_.pop_back();
      q_.pop_back();
    }
  }

  const TopRep& t_;
  std::size_t height_;
  std::size_t max_len_;
  std::size_t lmax_;
  Word q_;
  std::vector<Word> images_;
  std::vector<EdgePath> found_;
};

EdgePath normalise(const MarkedGraph& g, const EdgePath& p) {
  EdgePath rev = inverse(g, p);
  return rev.edges < p.edges ? rev : p;
}

VertexId least_vertex_of_stratum(const TopRep& t, std::size_t height) {
  const auto& g = t.graph();
  std::optional<VertexId> best;
  for (auto e : g.strata().at(height).edges) {
    for (VertexId v : {g.initial(DirEdge::forward(e)), g.terminal(DirEdge::forward(e))}) {
      if (!best || v < *best) best = v;
    }
  }
  if (!best) throw InvalidInput("stratum " + std::to_string(height + 1) + " is empty");
  return *best;
}

NielsenData from_rho(const TopRep& t, std::size_t height, const EdgePath& rho) {
  const auto& g = t.graph();
  NielsenData nd;
  nd.height = height;
  nd.rho = normalise(g, rho);
  nd.kind = nd.rho.start == nd.rho.finish(g) ? NielsenKind::Closed : NielsenKind::NonClosed;
  return nd;
}

bool crosses(const TopRep& t, const Word& w, std::size_t height) {
  return std::any_of(w.begin(), w.end(), [&](DirEdge d) { return t.height(d.edge()) == height; });
}

}  // namespace

std::vector<EdgePath> fixed_paths(const TopRep& t, std::size_t height, std::size_t max_len) {
  if (max_len == 0) return {};
  return FixedPathScan(t, height, max_len).run();
}

NielsenData search_inp(const TopRep& t, std::size_t height, const NielsenSearchOptions& opts) {
  const auto& g = t.graph();
  if (height >= g.strata().size() || g.strata()[height].kind != StratumClass::EG) {
    throw InvalidInput("Nielsen search needs an EG stratum");
  }

  std::set<EdgePath> candidates;
  for (const auto& p : fixed_paths(t, height, opts.max_len)) candidates.insert(p);

  // Iteration pass: periodic behaviour of short seeds can settle on fixed
  // paths longer than max_len.
  const std::size_t cap = 4 * std::max<std::size_t>(opts.max_len, 1);
  for (const auto& seed : enumerate_paths(g, std::min(opts.seed_len, opts.max_len))) {
    if (t.height(seed.edges) != height) continue;
    EdgePath cur = seed;
    for (std::size_t i = 0; i < opts.max_seed_iters; ++i) {
      EdgePath next = f_sharp(t, cur);
      if (next.size() > cap || next.trivial()) break;
      if (next == cur) {
        if (t.height(cur.edges) == height) candidates.insert(cur);
        break;
      }
      cur = std::move(next);
    }
  }

  std::map<Word, EdgePath> classes;
  for (const auto& p : candidates) {
    if (!crosses(t, p.edges, height) || !is_indivisible_nielsen(t, p)) continue;
    const EdgePath n = normalise(g, p);
    classes.emplace(n.edges, n);
  }
  if (classes.size() > 1) {
    auto it = classes.begin();
    const auto first = format_path(g, it->second);
    ++it;
    throw InvalidInput("two indivisible Nielsen paths of height " + std::to_string(height + 1) +
                       " that differ up to reversal: " + first + " and " + format_path(g, it->second));
  }

  NielsenData nd;
  if (classes.empty()) {
    nd.height = height;
    nd.kind = NielsenKind::Trivial;
    nd.rho = EdgePath{least_vertex_of_stratum(t, height), {}};
  } else {
    nd = from_rho(t, height, classes.begin()->second);
  }
  nd.bounded_search = true;
  return nd;
}

NielsenData declared_nielsen(const TopRep& t, std::size_t height, const EdgePath& rho) {
  const auto& g = t.graph();
  if (rho.trivial()) {
    NielsenData nd;
    nd.height = height;
    nd.rho = EdgePath{least_vertex_of_stratum(t, height), {}};
    nd.declared = true;
    return nd;
  }
  const auto text = format_path(g, rho);
  if (!is_reduced(rho.edges) || !is_composable(g, rho.edges)) {
    throw InvalidInput("declared rho is not a reduced path: " + text);
  }
  if (t.height(rho.edges) != height || !crosses(t, rho.edges, height)) {
    throw InvalidInput("declared rho does not have height " + std::to_string(height + 1) + ": " + text);
  }
  if (!verify_nielsen(t, rho)) throw InvalidInput("declared rho is not fixed by f_#: " + text);
  if (!is_indivisible_nielsen(t, rho)) throw InvalidInput("declared rho is divisible: " + text);
  NielsenData nd = from_rho(t, height, rho);
  nd.declared = true;
  return nd;
}

GeometricityReport classify(const NielsenData& nd) {
  switch (nd.kind) {
    case NielsenKind::Trivial:
      return {false, true, "rho trivial: nongeometric, free factor system of Z"};
    case NielsenKind::NonClosed:
      return {false, true, "rho nonclosed: nongeometric (parageometric), free factor system"};
    case NielsenKind::Closed:
      return {true, false, "rho closed: geometric, not a free factor system"};
  }
  return {};
}

}  // namespace natt
