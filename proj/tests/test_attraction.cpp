#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "natt/attraction.hpp"
#include "natt/error.hpp"
#include "support.hpp"

using namespace natt;
namespace L = testing::letters;

namespace {

const L::Substitution kEx1{{'a', "a"}, {'b', "ba"}, {'c', "cbc"}};

bool cyclic_contains(const std::string& s, const std::string& needle) {
  std::string line;
  while (line.size() < s.size() + needle.size()) line += s;
  return line.find(needle) != std::string::npos || line.find(L::inverse(needle)) != std::string::npos;
}

/// Least k with tile m of c inside the cyclic word f^k(s), by strings.
std::optional<std::size_t> oracle_tile_k(const std::string& s, std::size_t m, std::size_t k_max) {
  std::string tile = "c";
  for (std::size_t i = 0; i < m; ++i) tile = L::apply(kEx1, tile);
  std::string cur = L::cyclic_reduce(s);
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (cyclic_contains(cur, tile)) return k;
    cur = L::cyclic_reduce(L::apply(kEx1, cur));
  }
  return std::nullopt;
}

AttractionParams params(const testing::Example& ex, std::size_t m) {
  auto p = default_params(ex.rep);
  p.tile_order = m;
  return p;
}

struct Pair {
  std::unique_ptr<testing::Example> phi;
  std::unique_ptr<testing::Example> psi;
  DualitySetup ds;
  Pair(std::string_view a, std::string_view b) : phi(testing::example(a)), psi(testing::example(b)) {
    ds.phi = &phi->rep;
    ds.psi = &psi->rep;
    ds.ns_phi = &*phi->ns;
    ds.ns_psi = &*psi->ns;
    ds.to_psi = cli::parse_dictionary(phi->rf, psi->g());
    ds.to_phi = cli::parse_dictionary(psi->rf, phi->g());
  }
};

}  // namespace

TEST_CASE("verdicts on EX1") {
  const auto ex = testing::example("ex1.rep");
  const auto& ns = *ex->ns;

  const auto ab = attracted_circuit(ex->rep, ns, ex->circuit("ab"), params(*ex, 3));
  CHECK_FALSE(ab.attracted);
  REQUIRE(ab.lift);
  CHECK(lift_image(ns, *ab.lift) == ex->circuit("ab").word());
  CHECK(ab.method == Method::Membership);

  const auto c = attracted_circuit(ex->rep, ns, ex->circuit("c"), params(*ex, 2));
  CHECK(c.attracted);
  CHECK(c.k == *oracle_tile_k("c", 2, 11));
  CHECK(c.k == 2);
  CHECK(c.method == Method::Iteration);

  const auto cab = attracted_circuit(ex->rep, ns, ex->circuit("cab"), params(*ex, 1));
  CHECK(cab.attracted);
  CHECK(cab.k == *oracle_tile_k("cab", 1, 11));

  CHECK_FALSE(attracted_path(ex->rep, ns, ex->path("ab"), params(*ex, 3)).attracted);
  const auto ca = attracted_path(ex->rep, ns, ex->path("ca"), params(*ex, 1));
  CHECK(ca.attracted);
  CHECK(ca.k == 1);
  CHECK_FALSE(attracted_path(ex->rep, ns, EdgePath{VertexId{0}, {}}, params(*ex, 3)).attracted);
}

TEST_CASE("tile iterates match the string oracle") {
  const auto ex = testing::example("ex1.rep");
  for (const auto& c : enumerate_circuits(ex->g(), 4)) {
    const auto s = L::of(ex->g(), c.word());
    CAPTURE(s);
    for (std::size_t m : {1, 2}) {
      const auto lib = first_tile_iterate(ex->rep, c, tile(ex->rep, m), 6, kDefaultBudget);
      CHECK(lib == oracle_tile_k(s, m, 6));
    }
  }
}

TEST_CASE("verdicts are invariant under rotation and inversion") {
  const auto ex = testing::example("ex1.rep");
  const auto p = params(*ex, 2);
  for (const auto& c : enumerate_circuits(ex->g(), 5)) {
    const auto v = attracted_circuit(ex->rep, *ex->ns, c, p);
    const auto w = attracted_circuit(ex->rep, *ex->ns, c.inverse(), p);
    CHECK(v.attracted == w.attracted);
    CHECK(v.k == w.k);
  }
}

TEST_CASE("cross-check agrees on EX1") {
  const auto ex = testing::example("ex1.rep");
  auto p = params(*ex, 1);
  p.cross_check = true;
  for (const auto& c : enumerate_circuits(ex->g(), 4)) {
    CHECK_NOTHROW(attracted_circuit(ex->rep, *ex->ns, c, p));
  }
}

TEST_CASE("complementarity audit") {
  const auto ex = testing::example("ex1.rep");
  const std::vector<Circuit> corpus{ex->circuit("ab"), ex->circuit("c")};
  const auto rep = complementarity_audit(ex->rep, *ex->ns, corpus, params(*ex, 3));
  CHECK(rep.violations.empty());
  CHECK(rep.inconclusive.empty());
  REQUIRE(rep.records.size() == 2);
  CHECK(rep.records[0].member);
  CHECK_FALSE(rep.records[0].tile_k);
  CHECK_FALSE(rep.records[1].member);
  CHECK(rep.records[1].tile_k == 3u);
}

TEST_CASE("corrupted Z is caught") {
  const auto ex = testing::example("ex1.rep");
  // drop b from Z
  const auto bad = build_k(ex->rep, ex->nd, {0});
  const std::vector<Circuit> corpus{ex->circuit("a"), ex->circuit("b"), ex->circuit("ab"), ex->circuit("c")};
  const auto rep = complementarity_audit(ex->rep, bad, corpus, params(*ex, 3));
  CHECK(rep.violations == std::vector<std::size_t>{1, 2});
  CHECK_THROWS_AS(attracted_circuit(ex->rep, bad, ex->circuit("b"), params(*ex, 3)), Inconclusive);
}

TEST_CASE("duality on the inverse pair") {
  Pair pair("exd_phi.rep", "exd_psi.rep");
  CHECK(dictionary_violations(pair.ds).empty());
  const auto corpus = enumerate_circuits(pair.phi->g(), 3);
  const auto p = default_params(pair.phi->rep);
  const auto rep = duality_audit(pair.ds, corpus, p);
  CHECK(rep.checked == corpus.size());
  CHECK(rep.mismatches.empty());

  // symmetric under exchanging the roles
  std::vector<Circuit> back;
  for (const auto& c : corpus) back.push_back(translate(pair.psi->g(), pair.ds.to_psi, c));
  CHECK(duality_audit(swapped(pair.ds), back, p).mismatches.empty());
}

TEST_CASE("a swapped dictionary gives mismatches in both directions") {
  Pair pair("exd_phi_swapped.rep", "exd_psi_swapped.rep");
  CHECK(dictionary_violations(pair.ds).empty());
  const auto corpus = enumerate_circuits(pair.phi->g(), 3);
  const auto p = default_params(pair.phi->rep);
  const auto rep = duality_audit(pair.ds, corpus, p);
  CHECK_FALSE(rep.mismatches.empty());

  std::vector<Circuit> back;
  for (const auto& c : corpus) back.push_back(translate(pair.psi->g(), pair.ds.to_psi, c));
  const auto rev = duality_audit(swapped(pair.ds), back, p);
  CHECK(rev.mismatches.size() == rep.mismatches.size());
}

TEST_CASE("a one-sided dictionary corruption is a dictionary violation") {
  Pair pair("exd_phi.rep", "exd_psi.rep");
  std::swap(pair.ds.to_psi.images[0], pair.ds.to_psi.images[1]);
  CHECK_FALSE(dictionary_violations(pair.ds).empty());
  CHECK_THROWS_AS(duality_audit(pair.ds, enumerate_circuits(pair.phi->g(), 2), default_params(pair.phi->rep)),
                  InvalidInput);
}

TEST_CASE("uniform m") {
  const auto ex = testing::example("ex1.rep");
  const auto p = default_params(ex->rep);
  SUBCASE("single attracted circuit") {
    const auto r = uniform_m(ex->rep, *ex->ns, {ex->circuit("c")}, 1, 1, nullptr, p);
    CHECK(r.m == 1u);
    CHECK(r.certified);
  }
  SUBCASE("carried circuits need nothing") {
    const auto r = uniform_m(ex->rep, *ex->ns, {ex->circuit("ab"), ex->circuit("a")}, 3, 1, nullptr, p);
    CHECK(r.m == 1u);
    CHECK(r.records[0].carried);
  }
  SUBCASE("least m is monotone in the corpus") {
    std::size_t prev = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto r = uniform_m(ex->rep, *ex->ns, enumerate_circuits(ex->g(), n), 2, 1, nullptr, p);
      REQUIRE(r.m);
      CHECK(*r.m >= prev);
      prev = *r.m;
    }
  }
  SUBCASE("an unreachable tile has a worst offender") {
    auto q = p;
    q.k_max = 1;
    const auto r = uniform_m(ex->rep, *ex->ns, {ex->circuit("c")}, 3, 1, nullptr, q);
    CHECK_FALSE(r.m);
    CHECK(r.worst == 0u);
  }
}

TEST_CASE("concatenation closure") {
  const auto ex = testing::example("ex1.rep");
  const auto p = default_params(ex->rep);
  const std::vector<std::pair<EdgePath, EdgePath>> samples{
      {ex->path("ab"), ex->path("ba")}, {ex->path("ab"), ex->path("b'a'")}, {ex->path("c"), ex->path("a")}};
  const auto rep = concat_closure_audit(ex->rep, *ex->ns, samples, p);
  CHECK(rep.checked == 2);
  CHECK(rep.skipped == 1);
  CHECK(rep.violations.empty());
}

TEST_CASE("parallel_for rethrows the first failure by index") {
  std::atomic<int> ran{0};
  try {
    parallel_for(64, 4, [&](std::size_t i) {
      ++ran;
      if (i == 40) throw std::runtime_error("forty");
      if (i == 7) throw std::runtime_error("seven");
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "seven");
  }
  CHECK(ran == 64);
}
