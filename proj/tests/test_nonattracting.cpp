#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "natt/error.hpp"
#include "natt/nonattracting.hpp"
#include "support.hpp"

using namespace natt;
namespace L = testing::letters;

namespace {

std::vector<std::string> z_names(const NonattractingSystem& ns) {
  std::vector<std::string> out;
  for (auto e : ns.z_edges()) out.push_back(ns.rep().graph().edge_name(e));
  return out;
}

// Two vertices u, w with a loop a at u and two edges x, y from u to w.
struct Arc {
  MarkedGraph g;
  std::optional<TopRep> t;
  Arc() {
    const auto u = g.add_vertex("u");
    const auto w = g.add_vertex("w");
    g.add_edge("a", u, u);
    g.add_edge("x", u, w);
    g.add_edge("y", u, w);
    g.add_stratum({{0}, StratumClass::NegFixed, std::nullopt});
    g.add_stratum({{1, 2}, StratumClass::EG, std::nullopt});
    const auto a = DirEdge::forward(0);
    const auto x = DirEdge::forward(1);
    const auto y = DirEdge::forward(2);
    t.emplace(g, std::vector<Word>{{a}, {x, y.inverse(), x}, {y, x.inverse(), y}}, 1);
  }
  NielsenData arc_rho() const {
    NielsenData nd;
    nd.kind = NielsenKind::NonClosed;
    nd.rho = EdgePath{VertexId{0}, {DirEdge::forward(1)}};
    nd.height = 1;
    return nd;
  }
};

}  // namespace

TEST_CASE("edge attraction on EX1") {
  const auto ex = testing::example("ex1.rep");
  const auto k = default_k_max(ex->rep);
  CHECK(k == 11);
  CHECK(edge_attracted(ex->rep, ex->nd, DirEdge::forward(0), k).verdict == EdgeVerdict::NotAttracted);
  CHECK(edge_attracted(ex->rep, ex->nd, DirEdge::forward(1), k).verdict == EdgeVerdict::NotAttracted);
  const auto c = edge_attracted(ex->rep, ex->nd, DirEdge::forward(2), k);
  CHECK(c.verdict == EdgeVerdict::Attracted);
  CHECK(c.k == 0);
}

TEST_CASE("nonattracting subgraphs of the examples") {
  CHECK(z_names(*testing::example("ex1.rep")->ns) == std::vector<std::string>{"a", "b"});
  CHECK(z_names(*testing::example("exg.rep")->ns).empty());
  CHECK(z_names(*testing::example("exd_phi.rep")->ns) == std::vector<std::string>{"c"});
  CHECK(z_names(*testing::example("exd_psi.rep")->ns) == std::vector<std::string>{"c"});
  CHECK(z_names(*testing::example("ex_two_eg.rep")->ns) == std::vector<std::string>{"a", "b"});
  CHECK(z_names(*testing::example("ex_empty.rep")->ns).empty());
}

TEST_CASE("Z is f_#-invariant and avoids the lamination stratum") {
  for (const char* name : {"ex1.rep", "exg.rep", "exd_phi.rep", "exd_psi.rep", "ex_two_eg.rep", "ex_empty.rep"}) {
    CAPTURE(name);
    const auto ex = testing::example(name);
    const auto& top = ex->g().strata().at(ex->rep.lamination_stratum()).edges;
    const auto z = ex->ns->z();
    for (auto e : top) CHECK_FALSE(z.contains(e));
    for (auto e : ex->ns->z_edges()) {
      const auto img = f_sharp(ex->rep, EdgePath{ex->g().initial(DirEdge::forward(e)), {DirEdge::forward(e)}});
      CHECK(is_lift(member(*ex->ns, img)));
    }
  }
}

TEST_CASE("K for EX1 is Z") {
  const auto ex = testing::example("ex1.rep");
  const auto& ns = *ex->ns;
  CHECK(ns.k_graph().vertex_count() == 1);
  CHECK(ns.k_graph().edge_count() == 2);
  CHECK_FALSE(ns.rho_edge());
  REQUIRE(ns.components().size() == 1);
  const auto& comp = ns.components()[0];
  CHECK(comp.component.first_betti == 2);
  REQUIRE(comp.basis.size() == 2);
  CHECK(ex->str(comp.basis[0].edges) == "a");
  CHECK(ex->str(comp.basis[1].edges) == "b");
  CHECK_FALSE(ns.geometric());
}

TEST_CASE("K for the geometric example is the loop rho") {
  const auto ex = testing::example("exg.rep");
  const auto& ns = *ex->ns;
  CHECK(ns.geometric());
  REQUIRE(ns.rho_edge());
  CHECK(ns.k_graph().edge_count() == 1);
  CHECK(ns.edge_image(DirEdge::forward(*ns.rho_edge())) == ex->w("aba'b'"));
  REQUIRE(ns.components().size() == 1);
  const auto& comp = ns.components()[0];
  CHECK(comp.component.first_betti == 1);
  REQUIRE(comp.carried.size() == 1);
  CHECK(comp.carried[0].same_unoriented(ex->circuit("aba'b'")));
  // the automaton subdivides E_rho into four steps
  CHECK(ns.state_count() == 4);
}

TEST_CASE("K for the duality pair joins rho to Z") {
  const auto ex = testing::example("exd_phi.rep");
  const auto& ns = *ex->ns;
  REQUIRE(ns.components().size() == 1);
  CHECK(ns.components()[0].component.first_betti == 2);
  CHECK(ns.k_graph().edge_count() == 2);
}

TEST_CASE("non-closed rho") {
  Arc arc;
  const auto& t = *arc.t;
  SUBCASE("one endpoint in Z") {
    const auto ns = build_k(t, arc.arc_rho(), {0});
    CHECK(ns.k_graph().vertex_count() == 2);
    CHECK(ns.k_graph().edge_count() == 2);
    REQUIRE(ns.components().size() == 1);
    CHECK(ns.components()[0].component.first_betti == 1);
    CHECK(is_lift(member(ns, EdgePath{VertexId{0}, {DirEdge::forward(1)}})));
    CHECK(is_lift(member(ns, EdgePath{VertexId{0}, {DirEdge::forward(0), DirEdge::forward(1)}})));
    CHECK_FALSE(is_lift(member(ns, EdgePath{VertexId{0}, {DirEdge::forward(2)}})));
  }
  SUBCASE("both endpoints outside Z: the arc is contractible") {
    const auto ns = build_k(t, arc.arc_rho(), {});
    CHECK(ns.k_graph().edge_count() == 1);
    CHECK(ns.empty_system());
    CHECK(is_lift(member(ns, EdgePath{VertexId{0}, {DirEdge::forward(1)}})));
  }
}

TEST_CASE("h must be an immersion") {
  const auto ex = testing::example("exg.rep");
  // a in Z and rho starting with a fold at v
  CHECK_THROWS_AS(build_k(ex->rep, ex->nd, {0}), InvalidInput);
}

TEST_CASE("membership certificates") {
  const auto ex = testing::example("ex1.rep");
  const auto& ns = *ex->ns;
  const auto ab = member(ns, ex->circuit("ab"));
  REQUIRE(is_lift(ab));
  CHECK(lift_image(ns, std::get<Lift>(ab)) == ex->circuit("ab").word());
  const auto c = member(ns, ex->circuit("c"));
  REQUIRE_FALSE(is_lift(c));
  CHECK(std::get<Obstruction>(c).position == 0);
  const auto bc = member(ns, ex->path("abbc"));
  REQUIRE_FALSE(is_lift(bc));
  CHECK(std::get<Obstruction>(bc).position == 3);
  CHECK(is_lift(member(ns, EdgePath{VertexId{0}, {}})));

  const auto g = testing::example("exg.rep");
  const auto rho = member(*g->ns, g->circuit("aba'b'"));
  REQUIRE(is_lift(rho));
  const auto& lift = std::get<Lift>(rho);
  REQUIRE(lift.kdarts.size() == 1);
  CHECK(lift.kdarts[0].edge() == *g->ns->rho_edge());
  CHECK(lift_image(*g->ns, lift) == g->circuit("aba'b'").word());
  CHECK(is_lift(member(*g->ns, g->circuit("aba'b'aba'b'"))));
  CHECK_FALSE(is_lift(member(*g->ns, g->circuit("ab"))));
  // a proper subpath of rho ends inside E_rho
  CHECK_FALSE(is_lift(member(*g->ns, g->path("ab"))));
}

TEST_CASE("lift images reproduce the input") {
  for (const char* name : {"ex1.rep", "exg.rep", "exd_phi.rep", "ex_two_eg.rep"}) {
    CAPTURE(name);
    const auto ex = testing::example(name);
    for (const auto& c : enumerate_member_circuits(*ex->ns, 8)) {
      const auto m = member(*ex->ns, c);
      REQUIRE(is_lift(m));
      const auto img = lift_image(*ex->ns, std::get<Lift>(m));
      CHECK(cyclic_reduce(ex->g(), img) == c);
    }
  }
}

TEST_CASE("window half width") {
  CHECK(window_half_width(3, 2) == 3);
  CHECK(WindowTable{3, {}}.width() == 6);
  CHECK(window_half_width(1, 4) == 4);
}

TEST_CASE("window tables") {
  SUBCASE("EX1") {
    const auto ex = testing::example("ex1.rep");
    const auto table = sigma_window_table(*ex->ns);
    CHECK(table.half_width == 1);
    // paths of length <= 2 in the rose on a, b
    CHECK(table.sigma.size() == 4 + 12);
    CHECK(window_filter(table, ex->circuit("ab")).pass);
    const auto c = window_filter(table, ex->circuit("abc"));
    CHECK_FALSE(c.pass);
    CHECK(ex->str(c.failing).find('c') != std::string::npos);
  }
  SUBCASE("geometric example") {
    const auto ex = testing::example("exg.rep");
    const auto split = illegal_turn_split(ex->rep, ex->nd);
    REQUIRE(split);
    CHECK(*split == 2);
    const auto table = sigma_window_table(*ex->ns);
    CHECK(table.half_width == 2);
    CHECK(window_filter(table, ex->circuit("aba'b'")).pass);
    CHECK_FALSE(window_filter(table, ex->circuit("aab")).pass);
    // every window occurs in some member circuit
    const auto members = enumerate_member_circuits(*ex->ns, 3 * table.width());
    for (const auto& w : table.sigma) {
      const bool seen = std::any_of(members.begin(), members.end(),
                                    [&](const Circuit& c) { return !occurrences(c, w).empty(); });
      CHECK(seen);
    }
  }
}

TEST_CASE("random members are closed under the operations") {
  for (const char* name : {"ex1.rep", "exg.rep", "exd_phi.rep", "exd_psi.rep", "ex_two_eg.rep"}) {
    CAPTURE(name);
    const auto ex = testing::example(name);
    const auto& ns = *ex->ns;
    const auto table = sigma_window_table(ns);
    std::mt19937_64 rng(99);
    std::vector<EdgePath> sample;
    for (int i = 0; i < 200; ++i) {
      auto p = random_member_path(ns, rng, 12);
      REQUIRE(p);
      sample.push_back(*p);
      CHECK(is_lift(member(ns, *p)));
      CHECK(is_lift(member(ns, f_sharp(ex->rep, *p))));
      CHECK(window_filter(table, *p).pass);
    }
    for (std::size_t i = 0; i + 1 < sample.size(); ++i) {
      const auto& p = sample[i];
      const auto& q = sample[i + 1];
      if (p.finish(ex->g()) != q.start) continue;
      Word pq = p.edges;
      pq.insert(pq.end(), q.edges.begin(), q.edges.end());
      CHECK(is_lift(member(ns, tighten(ex->g(), p.start, pq))));
    }
    for (int i = 0; i < 50; ++i) {
      const auto c = random_member_circuit(ns, rng, 4);
      if (!c) continue;
      CHECK(is_lift(member(ns, *c)));
      CHECK(window_filter(table, *c).pass);
    }
  }
}

TEST_CASE("members pass the window filter") {
  const auto ex = testing::example("ex1.rep");
  const auto table = sigma_window_table(*ex->ns);
  for (const auto& c : enumerate_circuits(ex->g(), 5)) {
    if (is_lift(member(*ex->ns, c))) CHECK(window_filter(table, c).pass);
  }
}

TEST_CASE("f_# permutes member circuits") {
  for (const char* name : {"ex1.rep", "exg.rep", "exd_phi.rep"}) {
    CAPTURE(name);
    const auto ex = testing::example(name);
    const auto small = enumerate_member_circuits(*ex->ns, 4);
    const auto large = enumerate_member_circuits(*ex->ns, 8);
    std::set<Circuit> images;
    for (const auto& c : small) {
      const auto img = f_sharp(ex->rep, c);
      CHECK(is_lift(member(*ex->ns, img)));
      images.insert(img);
      // a member preimage exists among short member circuits
      const bool found = std::any_of(large.begin(), large.end(),
                                     [&](const Circuit& x) { return f_sharp(ex->rep, x) == c; });
      CHECK(found);
    }
    CHECK(images.size() == small.size());
  }
}

TEST_CASE("empty nonattracting system") {
  const auto ex = testing::example("ex_empty.rep");
  CHECK(ex->ns->empty_system());
  std::mt19937_64 rng(1);
  CHECK_FALSE(random_member_circuit(*ex->ns, rng, 3));
  CHECK(enumerate_member_circuits(*ex->ns, 6).empty());
  CHECK_FALSE(is_lift(member(*ex->ns, ex->circuit("a"))));
}
