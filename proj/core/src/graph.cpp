#include "natt/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "natt/error.hpp"

namespace natt {

std::string_view to_string(StratumClass c) {
  switch (c) {
    case StratumClass::EG:
      return "EG";
    case StratumClass::NegFixed:
      return "fixed";
    case StratumClass::NegLinear:
      return "linear";
    case StratumClass::NegOther:
      return "neg";
    case StratumClass::Zero:
      return "zero";
  }
  return "?";
}

std::optional<StratumClass> stratum_class_from_string(std::string_view s) {
  if (s == "EG" || s == "eg") return StratumClass::EG;
  if (s == "fixed") return StratumClass::NegFixed;
  if (s == "linear") return StratumClass::NegLinear;
  if (s == "neg") return StratumClass::NegOther;
  if (s == "zero") return StratumClass::Zero;
  return std::nullopt;
}

VertexId MarkedGraph::add_vertex(std::string name) {
  vertex_names_.push_back(std::move(name));
  return VertexId{static_cast<std::uint32_t>(vertex_names_.size() - 1)};
}

std::uint32_t MarkedGraph::add_edge(std::string name, VertexId initial, VertexId terminal) {
  edge_names_.push_back(std::move(name));
  darts_.push_back({initial, terminal});
  darts_.push_back({terminal, initial});
  return static_cast<std::uint32_t>(edge_names_.size() - 1);
}

std::size_t MarkedGraph::add_stratum(Stratum stratum) {
  strata_.push_back(std::move(stratum));
  return strata_.size() - 1;
}

void MarkedGraph::set_dart(DirEdge d, Dart endpoints) { darts_.at(d.code()) = endpoints; }

std::optional<VertexId> MarkedGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
    if (vertex_names_[i] == name) return VertexId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

std::optional<std::uint32_t> MarkedGraph::find_edge(std::string_view name) const {
  for (std::size_t i = 0; i < edge_names_.size(); ++i) {
    if (edge_names_[i] == name) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

std::vector<DirEdge> MarkedGraph::darts_at(VertexId v) const {
  std::vector<DirEdge> out;
  for (std::uint32_t code = 0; code < darts_.size(); ++code) {
    if (darts_[code].initial == v) out.push_back(DirEdge::from_code(code));
  }
  return out;
}

std::optional<std::size_t> MarkedGraph::stratum_of(std::uint32_t edge) const {
  for (std::size_t i = 0; i < strata_.size(); ++i) {
    const auto& es = strata_[i].edges;
    if (std::find(es.begin(), es.end(), edge) != es.end()) return i;
  }
  return std::nullopt;
}

std::vector<GraphViolation> validate_graph(const MarkedGraph& g) {
  std::vector<GraphViolation> out;
  auto add = [&out](GraphViolationKind k, std::string d) { out.push_back({k, std::move(d)}); };

  std::set<std::string> names;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!names.insert(g.vertex_name(VertexId{static_cast<std::uint32_t>(v)})).second) {
      add(GraphViolationKind::DuplicateName,
          "vertex name repeated: " + g.vertex_name(VertexId{static_cast<std::uint32_t>(v)}));
    }
  }
  names.clear();
  for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
    if (!names.insert(g.edge_name(e)).second) {
      add(GraphViolationKind::DuplicateName, "edge name repeated: " + g.edge_name(e));
    }
    const DirEdge fwd = DirEdge::forward(e);
    const DirEdge bwd = DirEdge::backward(e);
    for (DirEdge d : {fwd, bwd}) {
      if (index_of(g.initial(d)) >= g.vertex_count() || index_of(g.terminal(d)) >= g.vertex_count()) {
        add(GraphViolationKind::UnknownVertex, "edge " + g.edge_name(e) + " has an unknown endpoint");
      }
    }
    if (g.initial(bwd) != g.terminal(fwd) || g.terminal(bwd) != g.initial(fwd)) {
      add(GraphViolationKind::EndpointMismatch,
          "edge " + g.edge_name(e) + ": inverse endpoints do not match");
    }
  }

  std::vector<int> owner(g.edge_count(), -1);
  const auto& strata = g.strata();
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const auto label = "stratum " + std::to_string(i + 1);
    if (strata[i].edges.empty()) add(GraphViolationKind::EmptyStratum, label + " is empty");
    for (auto e : strata[i].edges) {
      if (e >= g.edge_count()) {
        add(GraphViolationKind::UnknownEdge, label + " lists an unknown edge");
        continue;
      }
      if (owner[e] >= 0) {
        add(GraphViolationKind::DuplicateEdge,
            "edge " + g.edge_name(e) + " appears in strata " + std::to_string(owner[e] + 1) +
                " and " + std::to_string(i + 1));
      } else {
        owner[e] = static_cast<int>(i);
      }
    }
    if (strata[i].kind == StratumClass::Zero) {
      if (!strata[i].envelope) {
        add(GraphViolationKind::MissingEnvelope, label + " is a zero stratum with no envelope");
      } else {
        const auto s = *strata[i].envelope;
        if (s >= strata.size() || s <= i || strata[s].kind != StratumClass::EG) {
          add(GraphViolationKind::BadEnvelope,
              label + " must be enveloped by a higher EG stratum");
        }
      }
    }
  }
  for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
    if (owner[e] < 0) {
      add(GraphViolationKind::UnassignedEdge, "edge " + g.edge_name(e) + " is in no stratum");
    }
  }
  return out;
}

Subgraph::Subgraph(const MarkedGraph& parent) : parent_(&parent), mask_(parent.edge_count(), false) {}

Subgraph::Subgraph(const MarkedGraph& parent, const std::vector<std::uint32_t>& edges)
    : Subgraph(parent) {
  for (auto e : edges) mask_.at(e) = true;
}

Subgraph Subgraph::full(const MarkedGraph& parent) {
  Subgraph s(parent);
  s.mask_.assign(parent.edge_count(), true);
  return s;
}

std::vector<std::uint32_t> Subgraph::edges() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t e = 0; e < mask_.size(); ++e) {
    if (mask_[e]) out.push_back(e);
  }
  return out;
}

std::vector<VertexId> Subgraph::vertices() const {
  std::set<VertexId> vs;
  for (auto e : edges()) {
    vs.insert(parent_->initial(DirEdge::forward(e)));
    vs.insert(parent_->terminal(DirEdge::forward(e)));
  }
  return {vs.begin(), vs.end()};
}

bool Subgraph::contains_vertex(VertexId v) const {
  for (auto e : edges()) {
    if (parent_->initial(DirEdge::forward(e)) == v || parent_->terminal(DirEdge::forward(e)) == v) {
      return true;
    }
  }
  return false;
}

bool Subgraph::empty() const { return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; }); }

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<Component> components(const Subgraph& s) {
  const auto& g = s.parent();
  UnionFind uf(g.vertex_count());
  const auto edges = s.edges();
  for (auto e : edges) {
    uf.unite(index_of(g.initial(DirEdge::forward(e))), index_of(g.terminal(DirEdge::forward(e))));
  }
  std::map<std::size_t, Component> by_root;
  for (auto v : s.vertices()) by_root[uf.find(index_of(v))].vertices.push_back(v);
  for (auto e : edges) by_root[uf.find(index_of(g.initial(DirEdge::forward(e))))].edges.push_back(e);

  std::vector<Component> out;
  for (auto& [root, c] : by_root) {
    c.first_betti = c.edges.size() + 1 - c.vertices.size();
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const Component& a, const Component& b) { return a.vertices.front() < b.vertices.front(); });
  return out;
}

std::vector<Word> free_basis(const MarkedGraph& g, const Component& c) {
  if (c.first_betti == 0) throw ContractibleComponent("component is contractible");
  const VertexId base = c.vertices.front();
  std::vector<bool> in_component(g.edge_count(), false);
  for (auto e : c.edges) in_component[e] = true;

  // parent_dart[v]: tree dart arriving at v from its BFS parent.
  std::map<VertexId, std::optional<DirEdge>> parent_dart;
  std::vector<bool> tree_edge(g.edge_count(), false);
  parent_dart[base] = std::nullopt;
  std::deque<VertexId> queue{base};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (DirEdge d : g.darts_at(v)) {
      if (!in_component[d.edge()]) continue;
      const VertexId w = g.terminal(d);
      if (parent_dart.count(w) != 0) continue;
      parent_dart[w] = d;
      tree_edge[d.edge()] = true;
      queue.push_back(w);
    }
  }

  auto path_from_base = [&](VertexId v) {
    Word rev;
    while (auto d = parent_dart.at(v)) {
      rev.push_back(*d);
      v = g.initial(*d);
    }
    return Word(rev.rbegin(), rev.rend());
  };

  std::vector<Word> basis;
  for (auto e : c.edges) {
    if (tree_edge[e]) continue;
    const DirEdge d = DirEdge::forward(e);
    Word gen = path_from_base(g.initial(d));
    gen.push_back(d);
    Word back = path_from_base(g.terminal(d));
    for (auto it = back.rbegin(); it != back.rend(); ++it) gen.push_back(it->inverse());
    basis.push_back(std::move(gen));
  }
  return basis;
}

}  // namespace natt
