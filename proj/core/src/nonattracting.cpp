#include "natt/nonattracting.hpp"

#include <algorithm>
#include <map>

#include "natt/error.hpp"

namespace natt {

std::size_t default_k_max(const TopRep& t) { return 8 + t.graph().strata().size(); }

std::size_t uncovered_top_edges(const TopRep& t, const NielsenData& nd, const Word& w) {
  const auto is_top = [&](DirEdge d) { return t.in_top_stratum(d.edge()); };
  const auto total = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), is_top));
  if (total == 0 || nd.trivial()) return total;

  const Word& rho = nd.rho.edges;
  const auto weight = static_cast<std::size_t>(std::count_if(rho.begin(), rho.end(), is_top));
  std::vector<std::vector<std::size_t>> starts(w.size());
  for (const auto& occ : occurrences(w, rho)) starts[occ.begin].push_back(occ.length);
  // best[i]: most H_r edges covered by disjoint copies inside w[i..].
  std::vector<std::size_t> best(w.size() + 1, 0);
  for (std::size_t i = w.size(); i-- > 0;) {
    best[i] = best[i + 1];
    for (auto len : starts[i]) best[i] = std::max(best[i], weight + best[i + len]);
  }
  return total - best[0];
}

EdgeAttraction edge_attracted(const TopRep& t, const NielsenData& nd, DirEdge e, std::size_t k_max,
                              std::size_t budget) {
  if (t.in_top_stratum(e.edge())) return {EdgeVerdict::Attracted, 0};
  Word cur{e};
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (uncovered_top_edges(t, nd, cur) > 0) return {EdgeVerdict::Attracted, k};
    if (k == k_max) break;
    cur = f_sharp_word(t, cur);
    if (cur.size() > budget) return {EdgeVerdict::Inconclusive, k + 1};
  }
  return {EdgeVerdict::NotAttracted, k_max};
}

std::vector<std::uint32_t> build_z(const TopRep& t, const NielsenData& nd, std::size_t k_max,
                                   std::size_t budget) {
  const auto& g = t.graph();
  const auto& strata = g.strata();
  const std::size_t r = t.lamination_stratum();
  std::vector<bool> in_z(strata.size(), false);
  std::vector<bool> witnessed(strata.size(), false);

  for (std::size_t i = 0; i < strata.size(); ++i) {
    if (i == r || strata[i].kind == StratumClass::Zero) continue;
    for (auto e : strata[i].edges) {
      if (edge_attracted(t, nd, DirEdge::forward(e), k_max, budget).verdict == EdgeVerdict::Attracted) {
        witnessed[i] = true;
        break;
      }
    }
    in_z[i] = !witnessed[i];
  }
  auto sync_zero_strata = [&] {
    for (std::size_t i = 0; i < strata.size(); ++i) {
      if (strata[i].kind == StratumClass::Zero) {
        in_z[i] = strata[i].envelope && *strata[i].envelope != r && in_z[*strata[i].envelope];
      }
    }
  };
  sync_zero_strata();

  auto collect = [&] {
    std::vector<std::uint32_t> edges;
    for (std::size_t i = 0; i < strata.size(); ++i) {
      if (in_z[i]) edges.insert(edges.end(), strata[i].edges.begin(), strata[i].edges.end());
    }
    std::sort(edges.begin(), edges.end());
    return edges;
  };

  std::vector<std::size_t> unexplained;
  for (bool changed = true; changed;) {
    changed = false;
    const auto ns = build_k(t, nd, collect());
    for (std::size_t i = 0; i < strata.size(); ++i) {
      if (!in_z[i]) continue;
      for (auto e : strata[i].edges) {
        const DirEdge d = DirEdge::forward(e);
        if (!is_lift(member(ns, f_sharp(t, EdgePath{g.initial(d), {d}})))) {
          in_z[i] = false;
          changed = true;
          unexplained.push_back(i);
          break;
        }
      }
    }
    if (changed) sync_zero_strata();
  }
  if (!unexplained.empty()) {
    std::string list;
    for (auto i : unexplained) list += (list.empty() ? "" : ", ") + std::to_string(i + 1);
    throw Inconclusive("strata " + list + " show no attraction within k_max = " + std::to_string(k_max) +
                       " but their edge images leave <Z, rho>; raise --kmax or check the input");
  }
  return collect();
}

NonattractingSystem::NonattractingSystem(const TopRep& t, NielsenData nd, std::vector<std::uint32_t> z_edges)
    : rep_(&t), nd_(std::move(nd)), z_(std::move(z_edges)) {
  const auto& g = t.graph();
  std::sort(z_.begin(), z_.end());
  for (auto e : z_) {
    if (t.in_top_stratum(e)) throw InvalidInput("Z may not contain an edge of the lamination stratum");
  }
  const Subgraph zs(g, z_);

  std::map<VertexId, VertexId> k_of;
  for (VertexId v : zs.vertices()) {
    k_of[v] = k_.add_vertex(g.vertex_name(v));
    k_vertex_image_.push_back(v);
  }
  for (auto e : z_) {
    const DirEdge d = DirEdge::forward(e);
    k_.add_edge(g.edge_name(e), k_of.at(g.initial(d)), k_of.at(g.terminal(d)));
    k_edge_image_.push_back({d});
  }
  const Word& rho = nd_.rho.edges;
  if (!rho.empty()) {
    for (VertexId v : {nd_.rho.start, nd_.rho.finish(g)}) {
      if (k_of.count(v) == 0) {
        k_of[v] = k_.add_vertex(g.vertex_name(v));
        k_vertex_image_.push_back(v);
      }
    }
    std::string name = "rho";
    while (g.find_edge(name)) name += '_';
    rho_edge_ = k_.add_edge(name, k_of.at(nd_.rho.start), k_of.at(nd_.rho.finish(g)));
    k_edge_image_.push_back(rho);
  }

  state_vertex_ = k_vertex_image_;
  steps_.resize(k_.vertex_count());
  auto add_step = [&](std::uint32_t from, DirEdge label, Step s) {
    for (const auto& [l, existing] : steps_[from]) {
      if (l == label) {
        throw InvalidInput("h: K -> G is not an immersion: two K-directions at " +
                           g.vertex_name(state_vertex_[from]) + " map to " + format_word(g, {label}));
      }
    }
    steps_[from].emplace_back(label, s);
  };
  for (std::uint32_t ke = 0; ke < z_.size(); ++ke) {
    const DirEdge kd = DirEdge::forward(ke);
    const auto a = index_of(k_.initial(kd));
    const auto b = index_of(k_.terminal(kd));
    const DirEdge gd = k_edge_image_[ke].front();
    add_step(a, gd, {b, kd, 0});
    add_step(b, gd.inverse(), {a, kd.inverse(), 0});
  }
  if (rho_edge_) {
    const std::size_t n = rho.size();
    std::vector<std::uint32_t> chain{index_of(k_.initial(DirEdge::forward(*rho_edge_)))};
    for (std::size_t j = 0; j + 1 < n; ++j) {
      chain.push_back(static_cast<std::uint32_t>(state_vertex_.size()));
      state_vertex_.push_back(g.terminal(rho[j]));
      steps_.emplace_back();
    }
    chain.push_back(index_of(k_.terminal(DirEdge::forward(*rho_edge_))));
    const DirEdge fwd = DirEdge::forward(*rho_edge_);
    for (std::size_t j = 0; j < n; ++j) {
      add_step(chain[j], rho[j], {chain[j + 1], fwd, j});
      add_step(chain[j + 1], rho[j].inverse(), {chain[j], fwd.inverse(), n - 1 - j});
    }
  }

  for (auto& c : natt::components(Subgraph::full(k_))) {
    if (!c.noncontractible()) continue;
    AnaComponent ac;
    ac.basis_in_k = free_basis(k_, c);
    for (const auto& kw : ac.basis_in_k) {
      Word gw;
      for (DirEdge kd : kw) {
        const Word img = edge_image(kd);
        gw.insert(gw.end(), img.begin(), img.end());
      }
      ac.basis.push_back({k_vertex_image_.at(index_of(c.vertices.front())), gw});
      ac.carried.push_back(cyclic_reduce(g, gw));
    }
    ac.component = std::move(c);
    components_.push_back(std::move(ac));
  }
}

Word NonattractingSystem::edge_image(DirEdge kd) const {
  const Word& w = k_edge_image_.at(kd.edge());
  return kd.reversed() ? inverse(w) : w;
}

const NonattractingSystem::Step* NonattractingSystem::step(std::uint32_t s, DirEdge label) const {
  for (const auto& [l, st] : steps_.at(s)) {
    if (l == label) return &st;
  }
  return nullptr;
}

std::vector<DirEdge> NonattractingSystem::labels(std::uint32_t s) const {
  std::vector<DirEdge> out;
  for (const auto& [l, st] : steps_.at(s)) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::uint32_t> NonattractingSystem::state_over(VertexId gv) const {
  for (std::uint32_t s = 0; s < k_.vertex_count(); ++s) {
    if (state_vertex_[s] == gv) return s;
  }
  return std::nullopt;
}

NonattractingSystem build_k(const TopRep& t, const NielsenData& nd, std::vector<std::uint32_t> z_edges) {
  return NonattractingSystem(t, nd, std::move(z_edges));
}

NonattractingSystem build_nonattracting(const TopRep& t, const NielsenData& nd, std::size_t k_max,
                                        std::size_t budget) {
  return build_k(t, nd, build_z(t, nd, k_max, budget));
}

MembershipCertificate member(const NonattractingSystem& ns, const EdgePath& p) {
  if (p.trivial()) return Lift{};
  const auto start = ns.state_over(p.start);
  if (!start) return Obstruction{0};
  std::uint32_t s = *start;
  Lift lift;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto* st = ns.step(s, p.edges[i]);
    if (st == nullptr) return Obstruction{i};
    if (st->index == 0) lift.kdarts.push_back(st->kdart);
    s = st->to;
  }
  if (!ns.is_k_vertex(s)) return Obstruction{p.size()};
  return lift;
}

MembershipCertificate member(const NonattractingSystem& ns, const Circuit& c) {
  const auto& w = c.word();
  const auto& g = ns.rep().graph();
  const std::size_t n = w.size();
  std::size_t furthest = 0;
  for (std::uint32_t s0 = 0; s0 < ns.state_count(); ++s0) {
    if (ns.state_vertex(s0) != g.initial(w.front())) continue;
    std::vector<const NonattractingSystem::Step*> walk;
    std::uint32_t s = s0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto* st = ns.step(s, w[i]);
      if (st == nullptr) break;
      walk.push_back(st);
      s = st->to;
    }
    furthest = std::max(furthest, walk.size());
    if (walk.size() != n || s != s0) continue;
    // Re-read the closed walk from its first step that begins a K-edge.
    std::size_t r = 0;
    while (walk[r]->index != 0) ++r;
    Lift lift;
    for (std::size_t i = 0; i < n; ++i) {
      const auto* st = walk[(r + i) % n];
      if (st->index == 0) lift.kdarts.push_back(st->kdart);
    }
    lift.offset = (n - r) % n;
    return lift;
  }
  return Obstruction{furthest};
}

Word lift_image(const NonattractingSystem& ns, const Lift& lift) {
  Word w;
  for (DirEdge kd : lift.kdarts) {
    const Word img = ns.edge_image(kd);
    w.insert(w.end(), img.begin(), img.end());
  }
  if (!w.empty()) std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(lift.offset % w.size()), w.end());
  return w;
}

std::optional<std::size_t> illegal_turn_split(const TopRep& t, const NielsenData& nd) {
  if (nd.trivial()) return std::nullopt;
  const Word& rho = nd.rho.edges;
  std::vector<std::size_t> cuts;
  for (std::size_t i = 1; i < rho.size(); ++i) {
    const DirEdge d1 = rho[i - 1].inverse();
    const DirEdge d2 = rho[i];
    if (t.height(d1.edge()) == nd.height && t.height(d2.edge()) == nd.height && is_illegal_turn(t, d1, d2)) {
      cuts.push_back(i);
    }
  }
  if (cuts.size() != 1) return std::nullopt;
  return cuts.front();
}

WindowTable sigma_window_table(const NonattractingSystem& ns) {
  WindowTable table;
  const auto& nd = ns.nielsen();
  if (!nd.trivial()) {
    const std::size_t n = nd.rho.size();
    if (auto cut = illegal_turn_split(ns.rep(), nd)) {
      table.half_width = window_half_width(*cut, n - *cut);
    } else {
      table.half_width = n;
    }
  }
  const std::size_t width = table.width();
  Word cur;
  auto dfs = [&](auto&& self, std::uint32_t s) -> void {
    if (!cur.empty()) table.sigma.insert(cur);
    if (cur.size() == width) return;
    for (DirEdge l : ns.labels(s)) {
      if (!cur.empty() && l == cur.back().inverse()) continue;
      cur.push_back(l);
      self(self, ns.step(s, l)->to);
      cur.pop_back();
    }
  };
  for (std::uint32_t s = 0; s < ns.state_count(); ++s) dfs(dfs, s);
  return table;
}

namespace {

WindowCheck first_failing(const WindowTable& table, const Word& w, bool cyclic) {
  const std::size_t n = w.size();
  const std::size_t width = table.width();
  for (std::size_t i = 0; i < n; ++i) {
    Word win;
    for (std::size_t len = 1; len <= width; ++len) {
      if (cyclic ? len > n : i + len > n) break;
      win.push_back(w[(i + len - 1) % n]);
      if (table.sigma.count(win) == 0) return {false, win, i};
    }
  }
  return {};
}

}  // namespace

WindowCheck window_filter(const WindowTable& table, const Circuit& c) { return first_failing(table, c.word(), true); }

WindowCheck window_filter(const WindowTable& table, const EdgePath& p) { return first_failing(table, p.edges, false); }

std::optional<EdgePath> random_member_path(const NonattractingSystem& ns, std::mt19937_64& rng,
                                           std::size_t max_len, std::optional<VertexId> start) {
  std::vector<std::uint32_t> starts;
  for (std::uint32_t s = 0; s < ns.k_graph().vertex_count(); ++s) {
    if ((!start || ns.state_vertex(s) == *start) && !ns.labels(s).empty()) starts.push_back(s);
  }
  if (starts.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick_start(0, starts.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_len(1, std::max<std::size_t>(max_len, 1));
  const std::uint32_t s0 = starts[pick_start(rng)];
  const std::size_t target = pick_len(rng);

  EdgePath p{ns.state_vertex(s0), {}};
  std::uint32_t s = s0;
  while (p.size() < target || !ns.is_k_vertex(s)) {
    std::vector<DirEdge> options;
    for (DirEdge l : ns.labels(s)) {
      if (p.edges.empty() || l != p.edges.back().inverse()) options.push_back(l);
    }
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const DirEdge l = options[pick(rng)];
    p.edges.push_back(l);
    s = ns.step(s, l)->to;
  }
  return p;
}

std::optional<Circuit> random_member_circuit(const NonattractingSystem& ns, std::mt19937_64& rng,
                                             std::size_t max_factors) {
  const auto& comps = ns.components();
  if (comps.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick_comp(0, comps.size() - 1);
  const auto& comp = comps[pick_comp(rng)];
  const std::size_t rank = comp.basis.size();
  std::uniform_int_distribution<std::size_t> pick_len(1, std::max<std::size_t>(max_factors, 1));
  std::uniform_int_distribution<std::size_t> pick_gen(0, 2 * rank - 1);
  const std::size_t len = pick_len(rng);
  Word w;
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t gen = pick_gen(rng);
    while (prev && gen == (*prev ^ 1U)) gen = pick_gen(rng);
    prev = gen;
    const Word& b = comp.basis[gen / 2].edges;
    const Word piece = (gen % 2 == 0) ? b : inverse(b);
    w.insert(w.end(), piece.begin(), piece.end());
  }
  return cyclic_reduce(ns.rep().graph(), w);
}

std::vector<Circuit> enumerate_member_circuits(const NonattractingSystem& ns, std::size_t max_len) {
  std::set<Word> seen;
  Word cur;
  auto dfs = [&](auto&& self, std::uint32_t s0, std::uint32_t s) -> void {
    if (!cur.empty() && s == s0 && (cur.size() == 1 || cur.back() != cur.front().inverse())) {
      seen.insert(least_rotation(cur));
    }
    if (cur.size() == max_len) return;
    for (DirEdge l : ns.labels(s)) {
      if (!cur.empty() && l == cur.back().inverse()) continue;
      cur.push_back(l);
      self(self, s0, ns.step(s, l)->to);
      cur.pop_back();
    }
  };
  for (std::uint32_t s = 0; s < ns.k_graph().vertex_count(); ++s) dfs(dfs, s, s);
  std::vector<Circuit> out;
  for (const auto& w : seen) out.push_back(Circuit::from_cyclically_reduced(w));
  std::sort(out.begin(), out.end(), [](const Circuit& a, const Circuit& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.word() < b.word();
  });
  return out;
}

}  // namespace natt
