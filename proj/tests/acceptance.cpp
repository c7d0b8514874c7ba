// Acceptance criteria: one PASS/FAIL line each, nonzero exit on any failure.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iterator>
#include <iostream>
#include <random>
#include <sstream>

#include "natt/attraction.hpp"
#include "natt/cli/commands.hpp"
#include "natt/error.hpp"
#include "support.hpp"

using namespace natt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string data(std::string_view name) { return std::string(NATT_DATA_DIR) + "/" + std::string(name); }

Outcome complementarity_ex1() {
  const auto ex = testing::example("ex1.rep");
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = enumerate_circuits(ex->g(), 6);
  const auto rep = complementarity_audit(ex->rep, *ex->ns, corpus, default_params(ex->rep));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << corpus.size() << " circuits, " << rep.violations.size() << " violations, " << rep.inconclusive.size()
    << " inconclusive, " << secs << " s";
  return {rep.violations.empty() && rep.inconclusive.empty() && secs < 10.0, d.str()};
}

Outcome member_closure() {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t vacuous = 0;
  for (const char* name : {"ex1.rep", "exg.rep", "exd_phi.rep", "exd_psi.rep", "ex_two_eg.rep", "ex_empty.rep"}) {
    const auto ex = testing::example(name);
    const auto& ns = *ex->ns;
    const auto table = sigma_window_table(ns);
    std::mt19937_64 rng(2024);
    std::vector<EdgePath> sample;
    for (int i = 0; i < 200; ++i) {
      auto p = random_member_path(ns, rng, 16);
      if (!p) break;
      sample.push_back(*p);
    }
    if (sample.empty()) {
      // no K-vertex: every nontrivial path is a non-member
      ++vacuous;
      continue;
    }
    for (const auto& p : sample) {
      ++checked;
      if (!is_lift(member(ns, f_sharp(ex->rep, p))) || !window_filter(table, p).pass) ++failures;
    }
    for (const auto& p : sample) {
      for (const auto& q : sample) {
        if (p.finish(ex->g()) != q.start) continue;
        Word pq = p.edges;
        pq.insert(pq.end(), q.edges.begin(), q.edges.end());
        ++checked;
        if (!is_lift(member(ns, tighten(ex->g(), p.start, pq)))) ++failures;
      }
    }
  }
  std::ostringstream d;
  d << checked << " checks over 6 reps (" << vacuous << " rep with an empty system), " << failures << " failures";
  return {failures == 0 && checked > 0, d.str()};
}

Outcome nielsen() {
  const auto ex1 = testing::example("ex1.rep");
  const bool trivial = ex1->nd.kind == NielsenKind::Trivial;

  const auto exg = testing::example("exg.rep");
  const bool closed = exg->nd.kind == NielsenKind::Closed && verify_nielsen(exg->rep, exg->nd.rho);
  // G_{r-1} is empty here, so the system should be exactly {[<rho>]}
  NielsenData none;
  none.rho = EdgePath{exg->nd.rho.start, {}};
  none.height = exg->nd.height;
  const auto without = build_k(exg->rep, none, exg->ns->z_edges());
  const auto& comps = exg->ns->components();
  const bool one_more = without.components().empty() && comps.size() == 1 && comps[0].carried.size() == 1 &&
                        comps[0].carried[0].same_unoriented(exg->circuit(exg->str(exg->nd.rho.edges)));
  std::ostringstream d;
  d << "EX1 rho " << to_string(ex1->nd.kind) << "; torus rho " << exg->str(exg->nd.rho.edges) << " "
    << to_string(exg->nd.kind) << "; components " << without.components().size() << " -> " << comps.size();
  return {trivial && closed && one_more, d.str()};
}

/// Determinant of the abelianised map of a rose, by fraction-free elimination.
long abelian_determinant(const TopRep& t) {
  const auto n = t.graph().edge_count();
  std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
  for (std::uint32_t e = 0; e < n; ++e) {
    for (auto d : t.image(e)) m[d.edge()][e] += d.reversed() ? -1 : 1;
  }
  long sign = 1;
  long prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Outcome duality() {
  // The criterion asks for EX1 paired with a rep of its inverse. That pair
  // only exists when EX1 is an automorphism.
  const auto ex1 = testing::example("ex1.rep");
  const auto det = abelian_determinant(ex1->rep);
  const bool invertible = det == 1 || det == -1;

  const auto phi = testing::example("exd_phi.rep");
  const auto psi = testing::example("exd_psi.rep");
  DualitySetup ds{&phi->rep, &psi->rep, &*phi->ns, &*psi->ns, cli::parse_dictionary(phi->rf, psi->g()),
                  cli::parse_dictionary(psi->rf, phi->g())};
  const auto corpus = enumerate_circuits(phi->g(), 4);
  const auto rep = duality_audit(ds, corpus, default_params(phi->rep), default_params(psi->rep));
  std::ostringstream d;
  d << "EX1 abelianised determinant " << det << (invertible ? "" : ", so EX1 has no inverse and the pair cannot exist")
    << "; substitute pair exd_phi/exd_psi: " << rep.checked << " classes, " << rep.mismatches.size()
    << " mismatches";
  return {invertible && rep.mismatches.empty() && rep.checked == corpus.size(), d.str()};
}

Outcome uniform() {
  const auto ex = testing::example("ex1.rep");
  const auto r = uniform_m(ex->rep, *ex->ns, enumerate_circuits(ex->g(), 6), 1, 1, nullptr, default_params(ex->rep));
  std::ostringstream d;
  d << "m = " << (r.m ? std::to_string(*r.m) : std::string("none")) << (r.certified ? ", certified" : "");
  return {r.m && *r.m <= 10 && r.certified, d.str()};
}

Outcome closed_form() {
  const auto ex = testing::example("ex1.rep");
  std::size_t bad = 0;
  for (std::size_t k = 0; k <= 20; ++k) {
    const auto img = iterate(ex->rep, ex->path("b"), k);
    if (ex->str(img.edges) != "b" + std::string(k, 'a')) ++bad;
  }
  return {bad == 0, "k = 0..20, " + std::to_string(bad) + " mismatches"};
}

Outcome negative_controls() {
  const auto ex = testing::example("ex1.rep");
  const auto broken_z = build_k(ex->rep, ex->nd, {0});
  const auto tf =
      complementarity_audit(ex->rep, broken_z, enumerate_circuits(ex->g(), 3), default_params(ex->rep));

  const auto phi = testing::example("exd_phi_swapped.rep");
  const auto psi = testing::example("exd_psi_swapped.rep");
  DualitySetup ds{&phi->rep, &psi->rep, &*phi->ns, &*psi->ns, cli::parse_dictionary(phi->rf, psi->g()),
                  cli::parse_dictionary(psi->rf, phi->g())};
  const auto du = duality_audit(ds, enumerate_circuits(phi->g(), 3), default_params(phi->rep));

  auto one_sided = ds;
  one_sided.to_phi = cli::parse_dictionary(testing::load_data("exd_psi.rep"), phi->g());
  const auto dict = dictionary_violations(one_sided);

  std::ostringstream d;
  d << "Z without b: " << tf.violations.size() << " violations; swapped dictionary: " << du.mismatches.size()
    << " mismatches; one-sided swap: " << dict.size() << " dictionary violations";
  return {!tf.violations.empty() && !du.mismatches.empty() && !dict.empty(), d.str()};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"validate", data("ex1.rep")},
      {"nonattracting", data("exg.rep")},
      {"attract", data("ex1.rep"), "--word", "c", "--word", "ab", "--word", "cab'"},
      {"audit", data("ex1.rep"), "--mode", "theorem-f", "--maxlen", "5"},
      {"audit", data("exd_phi.rep"), data("exd_psi.rep"), "--mode", "duality", "--maxlen", "3"},
      {"audit", data("exd_phi_swapped.rep"), data("exd_psi_swapped.rep"), "--mode", "duality", "--maxlen", "3"},
      {"audit", data("ex1.rep"), "--mode", "uniform-m", "--tile-m", "1", "--maxlen", "4"},
      {"audit", data("exg.rep"), "--mode", "concat", "--samples", "100"},
      {"audit", data("exd_phi.rep"), "--mode", "windows", "--samples", "100"},
  };
  std::size_t differing = 0;
  for (auto args : commands) {
    args.insert(args.end(), {"--format", "jsonl"});
    std::string first;
    for (int run = 0; run < 2; ++run) {
      std::ostringstream out;
      std::ostringstream err;
      cli::run(args, out, err);
      if (run == 0) {
        first = out.str();
      } else if (out.str() != first || first.empty()) {
        ++differing;
      }
    }
  }
  return {differing == 0, std::to_string(commands.size()) + " commands, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {"1 complementarity of the two procedures on EX1 circuits up to length 6", complementarity_ex1},
      {"2 random members: invariance, concatenation, windows", member_closure},
      {"3 Nielsen paths and the nonattracting system", nielsen},
      {"4 duality on the EX1 inverse pair, classes up to length 4", duality},
      {"5 uniform exponent for tile order 1 on EX1", uniform},
      {"6 closed form f^k(b) = b a^k", closed_form},
      {"7 negative controls", negative_controls},
      {"8 byte-identical line-delimited output", determinism},
  };
  constexpr std::size_t count = std::size(criteria);
  // optional argument: run a single criterion by number
  std::size_t only = 0;
  if (argc > 1) {
    only = std::strtoul(argv[1], nullptr, 10);
    if (only < 1 || only > count) {
      std::cerr << "usage: acceptance [1-" << count << "]\n";
      return 2;
    }
  }
  int failed = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (only != 0 && only != i + 1) continue;
    const auto& c = criteria[i];
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << " [" << o.detail << "]\n";
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
