#include "natt/attraction.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "natt/error.hpp"

namespace natt {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Membership:
      return "MEMBERSHIP";
    case Method::Iteration:
      return "ITERATION";
    case Method::Both:
      return "BOTH";
  }
  return "?";
}

AttractionParams default_params(const TopRep& t) {
  AttractionParams p;
  p.k_max = default_k_max(t);
  return p;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  std::vector<std::exception_ptr> errors(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::optional<std::size_t> first_tile_iterate(const TopRep& t, const Circuit& c, const Word& needle,
                                              std::size_t k_max, std::size_t budget) {
  Circuit cur = c;
  for (std::size_t k = 0;; ++k) {
    if (contains(cur, needle)) return k;
    if (k == k_max) return std::nullopt;
    cur = f_sharp(t, cur);
    if (cur.size() > budget) throw BudgetExceeded(k + 1, cur.size());
  }
}

std::optional<std::size_t> first_tile_iterate(const TopRep& t, const EdgePath& p, const Word& needle,
                                              std::size_t k_max, std::size_t budget) {
  EdgePath cur = p;
  for (std::size_t k = 0;; ++k) {
    if (contains(cur.edges, needle)) return k;
    if (k == k_max) return std::nullopt;
    cur = f_sharp(t, cur);
    if (cur.size() > budget) throw BudgetExceeded(k + 1, cur.size());
  }
}

namespace {

template <typename Input>
AttractionVerdict decide(const TopRep& t, const NonattractingSystem& ns, const Input& input,
                         const AttractionParams& p, const std::string& label) {
  const auto cert = member(ns, input);
  AttractionVerdict v;
  if (const auto* lift = std::get_if<Lift>(&cert)) {
    v.attracted = false;
    v.lift = *lift;
    v.method = Method::Membership;
    if (p.cross_check) {
      if (first_tile_iterate(t, input, tile(t, p.tile_order, p.budget), p.k_max, p.budget)) {
        throw Inconclusive(label + " is carried by <Z, rho> yet its iterates contain the tile");
      }
      v.method = Method::Both;
    }
    return v;
  }
  const auto k = first_tile_iterate(t, input, tile(t, p.tile_order, p.budget), p.k_max, p.budget);
  if (!k) {
    throw Inconclusive(label + " is not carried by <Z, rho> and shows no tile of order " +
                       std::to_string(p.tile_order) + " within " + std::to_string(p.k_max) +
                       " iterates; the input is suspected invalid");
  }
  v.attracted = true;
  v.k = *k;
  v.tile_order = p.tile_order;
  v.method = p.cross_check ? Method::Both : Method::Iteration;
  return v;
}

}  // namespace

AttractionVerdict attracted_circuit(const TopRep& t, const NonattractingSystem& ns, const Circuit& c,
                                    const AttractionParams& p) {
  return decide(t, ns, c, p, "circuit " + format_word(t.graph(), c.word()));
}

AttractionVerdict attracted_path(const TopRep& t, const NonattractingSystem& ns, const EdgePath& path,
                                 const AttractionParams& p) {
  return decide(t, ns, path, p, "path " + format_path(t.graph(), path));
}

ComplementarityReport complementarity_audit(const TopRep& t, const NonattractingSystem& ns, const std::vector<Circuit>& corpus,
                               const AttractionParams& p) {
  std::vector<std::optional<ComplementarityRecord>> recs(corpus.size());
  const Word needle = tile(t, p.tile_order, p.budget);
  parallel_for(corpus.size(), p.threads, [&](std::size_t i) {
    ComplementarityRecord rec{corpus[i], false, std::nullopt, false};
    rec.member = is_lift(member(ns, corpus[i]));
    try {
      rec.tile_k = first_tile_iterate(t, corpus[i], needle, p.k_max, p.budget);
    } catch (const BudgetExceeded&) {
      rec.budget_hit = true;
    }
    recs[i] = std::move(rec);
  });
  ComplementarityReport report;
  for (auto& r : recs) report.records.push_back(std::move(*r));
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    if (r.budget_hit && !r.member) {
      report.inconclusive.push_back(i);
    } else if (!r.complementary()) {
      report.violations.push_back(i);
    }
  }
  return report;
}

Word translate(const Dictionary& d, const Word& w) {
  Word out;
  for (DirEdge x : w) {
    const Word& img = d.images.at(x.edge());
    if (x.reversed()) {
      const Word inv = inverse(img);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  return out;
}

Circuit translate(const MarkedGraph& target, const Dictionary& d, const Circuit& c) {
  return cyclic_reduce(target, translate(d, c.word()));
}

std::vector<std::string> dictionary_violations(const DualitySetup& ds) {
  std::vector<std::string> out;
  auto check_side = [&out](const MarkedGraph& src, const MarkedGraph& dst, const Dictionary& there,
                           const Dictionary& back, std::string_view side) {
    if (there.images.size() != src.edge_count()) {
      out.push_back(std::string(side) + ": dictionary does not cover every edge");
      return;
    }
    for (std::uint32_t e = 0; e < src.edge_count(); ++e) {
      const Word& img = there.images[e];
      if (img.empty() || !is_composable(dst, img)) {
        out.push_back(std::string(side) + ": image of " + src.edge_name(e) + " is not a path");
        continue;
      }
      bool known = std::all_of(img.begin(), img.end(),
                               [&](DirEdge x) { return x.edge() < back.images.size(); });
      if (!known || free_reduce(translate(back, img)) != Word{DirEdge::forward(e)}) {
        out.push_back(std::string(side) + ": " + src.edge_name(e) + " does not translate back to itself");
      }
    }
  };
  check_side(ds.phi->graph(), ds.psi->graph(), ds.to_psi, ds.to_phi, "phi->psi");
  if (out.empty()) check_side(ds.psi->graph(), ds.phi->graph(), ds.to_phi, ds.to_psi, "psi->phi");
  return out;
}

DualitySetup swapped(const DualitySetup& ds) {
  return {ds.psi, ds.phi, ds.ns_psi, ds.ns_phi, ds.to_phi, ds.to_psi};
}

DualityReport duality_audit(const DualitySetup& ds, const std::vector<Circuit>& corpus, const AttractionParams& p,
                            std::optional<AttractionParams> psi_params) {
  if (auto v = dictionary_violations(ds); !v.empty()) {
    throw InvalidInput("duality dictionary is not a pair of inverse substitutions: " + v.front());
  }
  const AttractionParams q = psi_params.value_or(p);
  std::vector<std::optional<DualityMismatch>> found(corpus.size());
  parallel_for(corpus.size(), p.threads, [&](std::size_t i) {
    const Circuit& c = corpus[i];
    const Circuit image = translate(ds.psi->graph(), ds.to_psi, c);
    const bool a = attracted_circuit(*ds.phi, *ds.ns_phi, c, p).attracted;
    const bool b = attracted_circuit(*ds.psi, *ds.ns_psi, image, q).attracted;
    if (a != b) found[i] = DualityMismatch{c, image, a, b};
  });
  DualityReport report;
  report.checked = corpus.size();
  for (auto& m : found) {
    if (m) report.mismatches.push_back(std::move(*m));
  }
  return report;
}

UniformMResult uniform_m(const TopRep& t, const NonattractingSystem& ns, const std::vector<Circuit>& corpus,
                         std::size_t m_plus, std::size_t m_minus, const DualitySetup* dual,
                         const AttractionParams& p) {
  UniformMResult result;
  const Word tile_plus = tile(t, m_plus, p.budget);
  std::optional<Word> tile_minus;
  if (dual != nullptr) tile_minus = tile(*dual->psi, m_minus, p.budget);

  std::vector<std::optional<UniformMRecord>> recs(corpus.size());
  parallel_for(corpus.size(), p.threads, [&](std::size_t i) {
    UniformMRecord rec{corpus[i], false, false, {}};
    rec.carried = is_lift(member(ns, corpus[i]));
    if (!rec.carried && tile_minus) {
      rec.in_v_minus = contains(translate(dual->psi->graph(), dual->to_psi, corpus[i]), *tile_minus);
    }
    if (!rec.carried && !rec.in_v_minus) {
      Circuit cur = corpus[i];
      for (std::size_t m = 1; m <= p.k_max; ++m) {
        cur = f_sharp(t, cur);
        if (cur.size() > p.budget) throw BudgetExceeded(m, cur.size());
        if (contains(cur, tile_plus)) rec.attracted_at.push_back(m);
      }
    }
    recs[i] = std::move(rec);
  });
  for (auto& r : recs) result.records.push_back(std::move(*r));

  auto satisfied = [](const UniformMRecord& r, std::size_t m) {
    return r.carried || r.in_v_minus ||
           std::find(r.attracted_at.begin(), r.attracted_at.end(), m) != r.attracted_at.end();
  };
  for (std::size_t m = 1; m <= p.k_max && !result.m; ++m) {
    if (std::all_of(result.records.begin(), result.records.end(), [&](const auto& r) { return satisfied(r, m); })) {
      result.m = m;
    }
  }

  if (!result.m) {
    std::size_t fewest = p.k_max + 1;
    for (std::size_t i = 0; i < result.records.size(); ++i) {
      const auto& r = result.records[i];
      if (r.carried || r.in_v_minus) continue;
      if (r.attracted_at.size() < fewest) {
        fewest = r.attracted_at.size();
        result.worst = i;
      }
    }
    return result;
  }

  // Independent re-check at the chosen exponent.
  const std::size_t m = *result.m;
  std::atomic<bool> ok{true};
  parallel_for(result.records.size(), p.threads, [&](std::size_t i) {
    const auto& r = result.records[i];
    if (r.carried) {
      if (!is_lift(member(ns, r.circuit))) ok = false;
      return;
    }
    if (r.in_v_minus) {
      if (!contains(translate(dual->psi->graph(), dual->to_psi, r.circuit), *tile_minus)) ok = false;
      return;
    }
    if (!contains(iterate(t, r.circuit, m, p.budget), tile_plus)) ok = false;
  });
  result.certified = ok;
  return result;
}

ConcatReport concat_closure_audit(const TopRep& t, const NonattractingSystem& ns,
                                  const std::vector<std::pair<EdgePath, EdgePath>>& samples,
                                  const AttractionParams& p) {
  const auto& g = t.graph();
  ConcatReport report;
  std::vector<int> status(samples.size(), 0);  // 0 skipped, 1 ok, 2 violation
  parallel_for(samples.size(), p.threads, [&](std::size_t i) {
    const auto& [a, b] = samples[i];
    if (a.finish(g) != b.start) return;
    if (attracted_path(t, ns, a, p).attracted || attracted_path(t, ns, b, p).attracted) return;
    Word raw = a.edges;
    raw.insert(raw.end(), b.edges.begin(), b.edges.end());
    const EdgePath joined = tighten(g, a.start, raw);
    status[i] = attracted_path(t, ns, joined, p).attracted ? 2 : 1;
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (status[i] == 0) {
      ++report.skipped;
    } else {
      ++report.checked;
      if (status[i] == 2) report.violations.push_back(samples[i]);
    }
  }
  return report;
}

}  // namespace natt
