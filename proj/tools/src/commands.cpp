#include "natt/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <type_traits>

#include "natt/attraction.hpp"
#include "natt/cli/repfile.hpp"
#include "natt/error.hpp"
#include "natt/nonattracting.hpp"

namespace natt::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string file2;
  std::optional<std::size_t> kmax;
  std::size_t budget = kDefaultBudget;
  std::size_t tile_m = 3;
  std::optional<std::size_t> maxlen;
  std::string format = "human";
  std::size_t nielsen_len = 12;
  std::size_t threads = 0;

  std::vector<std::string> words;
  std::string corpus;
  bool as_path = false;
  bool cross_check = false;

  std::string mode;
  std::size_t m_minus = 3;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  std::optional<std::string> z_override;

  bool json() const { return format == "jsonl"; }
};

/// Thrown once the diagnostics have been written.
struct Exit {
  int code;
};

struct Pipeline {
  RepFile rf;
  TopRep rep;
  std::optional<NonattractingSystem> ns;

  explicit Pipeline(RepFile f) : rf(std::move(f)), rep(to_rep(rf)) {}
};

std::string_view kind_name(RepViolationKind k) {
  switch (k) {
    case RepViolationKind::Graph:
      return "graph";
    case RepViolationKind::NotAPath:
      return "not-a-path";
    case RepViolationKind::EndpointMismatch:
      return "endpoint";
    case RepViolationKind::UnreducedImage:
      return "unreduced";
    case RepViolationKind::Filtration:
      return "filtration";
    case RepViolationKind::ZeroMismatch:
      return "zero";
    case RepViolationKind::NotIrreducible:
      return "not-irreducible";
    case RepViolationKind::NoGrowth:
      return "no-growth";
    case RepViolationKind::NotFixed:
      return "not-fixed";
    case RepViolationKind::NotLinear:
      return "not-linear";
    case RepViolationKind::NotSingleEdge:
      return "not-single-edge";
    case RepViolationKind::NegForm:
      return "neg-form";
    case RepViolationKind::LaminationNotEG:
      return "lamination";
  }
  return "?";
}

std::string plural(std::size_t n, std::string_view noun) {
  return std::to_string(n) + " " + std::string(noun) + (n == 1 ? "" : "s");
}

std::string word_text(const MarkedGraph& g, const Word& w) { return w.empty() ? "1" : format_word(g, w); }

std::string decimal(const Rational& q) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(6) << q.convert_to<double>();
  return ss.str();
}

std::unique_ptr<Pipeline> load(const std::string& path, std::ostream& err) {
  std::unique_ptr<Pipeline> p;
  try {
    p = std::make_unique<Pipeline>(load_repfile(path));
  } catch (const ParseError& e) {
    err << path << ": parse error: " << e.what() << "\n";
    throw Exit{kInvalid};
  }
  const auto v = validate_rep(p->rep);
  if (!v.empty()) {
    err << path << ": invalid representative\n";
    for (const auto& x : v) err << "  " << kind_name(x.kind) << ": " << x.detail << "\n";
    throw Exit{kInvalid};
  }
  return p;
}

std::size_t k_max_for(const TopRep& t, const Options& o) { return o.kmax.value_or(default_k_max(t)); }

AttractionParams params_for(const TopRep& t, const Options& o) {
  AttractionParams p;
  p.tile_order = o.tile_m;
  p.k_max = k_max_for(t, o);
  p.budget = o.budget;
  p.cross_check = o.cross_check;
  p.threads = o.threads;
  return p;
}

std::vector<std::uint32_t> parse_edge_list(const MarkedGraph& g, const std::string& text) {
  std::vector<std::uint32_t> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                token.end());
    if (token.empty()) continue;
    const auto e = g.find_edge(token);
    if (!e) throw ParseError(0, "--z-override: unknown edge '" + token + "'");
    out.push_back(*e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void build(Pipeline& p, const Options& o) {
  NielsenSearchOptions no;
  no.max_len = o.nielsen_len;
  auto nd = nielsen_for(p.rep, p.rf, no);
  if (o.z_override) {
    p.ns.emplace(build_k(p.rep, std::move(nd), parse_edge_list(p.rep.graph(), *o.z_override)));
  } else {
    p.ns.emplace(build_nonattracting(p.rep, nd, k_max_for(p.rep, o), o.budget));
  }
}

Circuit circuit_from(const MarkedGraph& g, std::string_view text, std::size_t line) {
  try {
    return cyclic_reduce(g, parse_word(g, text));
  } catch (const ParseError& e) {
    throw ParseError(line, e.what());
  } catch (const NotComposable&) {
    throw ParseError(line, "'" + std::string(text) + "' is not a closed path");
  } catch (const TrivialClass&) {
    throw ParseError(line, "'" + std::string(text) + "' is the trivial class");
  }
}

std::vector<Circuit> corpus_for(const MarkedGraph& g, const Options& o, std::size_t default_len) {
  if (o.corpus.empty()) return enumerate_circuits(g, o.maxlen.value_or(default_len));
  std::vector<Circuit> out;
  for (const auto& [line, text] : read_corpus(read_file(o.corpus))) out.push_back(circuit_from(g, text, line));
  return out;
}

std::string corpus_label(const Options& o, std::size_t default_len) {
  if (!o.corpus.empty()) return "corpus " + o.corpus;
  return "length <= " + std::to_string(o.maxlen.value_or(default_len));
}

struct Record {
  std::string word;
  std::string verdict;
  std::string method;
  std::optional<std::size_t> k;
  std::string cert;
};

void emit(const Record& r, const Options& o, std::ostream& out) {
  if (o.json()) {
    Json j;
    j["word"] = r.word;
    j["verdict"] = r.verdict;
    j["method"] = r.method;
    j["k"] = r.k ? Json(*r.k) : Json(nullptr);
    j["cert"] = r.cert;
    out << j.dump() << "\n";
    return;
  }
  out << std::left << std::setw(16) << r.word << " " << std::setw(14) << r.verdict << " " << std::setw(10)
      << r.method << " k=" << std::setw(4) << (r.k ? std::to_string(*r.k) : "-") << " " << r.cert << "\n";
}

void emit_summary(const Json& j, const std::string& human, const Options& o, std::ostream& out) {
  if (o.json()) {
    out << j.dump() << "\n";
  } else {
    out << human;
  }
}

std::string lift_text(const NonattractingSystem& ns, const Lift& l) {
  std::string s = "lift " + word_text(ns.k_graph(), l.kdarts);
  if (l.offset != 0) s += " offset " + std::to_string(l.offset);
  return s;
}

template <typename Input>
Record verdict_record(const Pipeline& p, const Input& input, const AttractionParams& ap, std::string word) {
  Record r{std::move(word), "", "", std::nullopt, ""};
  try {
    AttractionVerdict v;
    if constexpr (std::is_same_v<Input, Circuit>) {
      v = attracted_circuit(p.rep, *p.ns, input, ap);
    } else {
      v = attracted_path(p.rep, *p.ns, input, ap);
    }
    r.method = std::string(to_string(v.method));
    if (v.attracted) {
      r.verdict = "ATTRACTED";
      r.k = v.k;
      r.cert = "tile m=" + std::to_string(v.tile_order) + " at k=" + std::to_string(v.k);
    } else {
      r.verdict = "NOT_ATTRACTED";
      r.cert = lift_text(*p.ns, *v.lift);
    }
  } catch (const BudgetExceeded& e) {
    r.verdict = "BUDGET_EXCEEDED";
    r.method = "ITERATION";
    r.k = e.k_reached();
    r.cert = e.what();
  } catch (const Inconclusive& e) {
    r.verdict = "INCONCLUSIVE";
    r.method = "BOTH";
    r.cert = e.what();
  }
  return r;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  RepFile rf;
  try {
    rf = load_repfile(o.file);
  } catch (const ParseError& e) {
    err << o.file << ": parse error: " << e.what() << "\n";
    return kInvalid;
  }
  const TopRep t = to_rep(rf);
  const auto v = validate_rep(t);
  const auto& g = t.graph();
  if (o.json()) {
    Json j;
    j["command"] = "validate";
    j["valid"] = v.empty();
    j["violations"] = Json::array();
    for (const auto& x : v) j["violations"].push_back({{"kind", kind_name(x.kind)}, {"detail", x.detail}});
    out << j.dump() << "\n";
  } else if (v.empty()) {
    out << "valid: " << plural(g.vertex_count(), "vertex") << ", " << plural(g.edge_count(), "edge") << ", "
        << g.strata().size() << (g.strata().size() == 1 ? " stratum" : " strata") << "; lamination stratum " << t.lamination_stratum() + 1 << "\n";
    for (std::size_t i = 0; i < g.strata().size(); ++i) {
      out << "  stratum " << i + 1 << " " << to_string(g.strata()[i].kind) << ":";
      for (auto e : g.strata()[i].edges) out << " " << g.edge_name(e);
      if (g.strata()[i].kind == StratumClass::EG) {
        const auto b = pf_growth(t, i);
        out << "  growth in [" << decimal(b.lower) << ", " << decimal(b.upper) << "]";
      }
      out << "\n";
    }
  } else {
    out << "invalid: " << plural(v.size(), "violation") << "\n";
    for (const auto& x : v) out << "  " << kind_name(x.kind) << ": " << x.detail << "\n";
  }
  return v.empty() ? kOk : kInvalid;
}

int cmd_nonattracting(const Options& o, std::ostream& out, std::ostream& err) {
  auto p = load(o.file, err);
  build(*p, o);
  const auto& ns = *p->ns;
  const auto& g = p->rep.graph();
  const auto& nd = ns.nielsen();
  const auto cls = classify(nd);

  if (o.json()) {
    Json j;
    j["command"] = "nonattracting";
    j["z"] = Json::array();
    for (auto e : ns.z_edges()) j["z"].push_back(g.edge_name(e));
    j["rho"] = {{"word", word_text(g, nd.rho.edges)},
                {"kind", to_string(nd.kind)},
                {"declared", nd.declared},
                {"bounded_search", nd.bounded_search}};
    j["geometric"] = cls.geometric;
    j["free_factor_system"] = cls.free_factor_system;
    j["components"] = Json::array();
    for (const auto& c : ns.components()) {
      Json jc;
      jc["rank"] = c.basis.size();
      jc["basis"] = Json::array();
      for (const auto& b : c.basis) jc["basis"].push_back(format_path(g, b));
      j["components"].push_back(jc);
    }
    out << j.dump() << "\n";
    return kOk;
  }

  out << "Z:";
  if (ns.z_edges().empty()) out << " empty";
  for (auto e : ns.z_edges()) out << " " << g.edge_name(e);
  out << "\nrho: ";
  if (nd.trivial()) {
    out << "trivial";
  } else {
    out << format_path(g, nd.rho) << " (" << to_string(nd.kind) << ")";
  }
  if (nd.declared) {
    out << ", declared and verified";
  } else if (nd.bounded_search) {
    out << ", bounded search up to length " << o.nielsen_len;
  }
  out << "\nclassification: " << (cls.geometric ? "geometric" : "nongeometric") << "; "
      << (cls.free_factor_system ? "free factor system" : "not a free factor system") << "\n";
  out << "K: " << plural(ns.k_graph().vertex_count(), "vertex") << ", " << plural(ns.k_graph().edge_count(), "edge")
      << "\n";
  if (ns.empty_system()) {
    out << "A_na empty\n";
    return kOk;
  }
  out << "A_na: " << plural(ns.components().size(), "component") << "\n";
  for (std::size_t i = 0; i < ns.components().size(); ++i) {
    const auto& c = ns.components()[i];
    out << "  [" << i + 1 << "] rank " << c.basis.size() << ", basis:";
    for (std::size_t j = 0; j < c.basis.size(); ++j) out << (j ? ", " : " ") << format_path(g, c.basis[j]);
    out << "\n";
  }
  return kOk;
}

int cmd_attract(const Options& o, std::ostream& out, std::ostream& err) {
  auto p = load(o.file, err);
  build(*p, o);
  const auto& g = p->rep.graph();
  const auto ap = params_for(p->rep, o);

  std::vector<std::pair<std::size_t, std::string>> inputs;
  for (const auto& w : o.words) inputs.emplace_back(0, w);
  if (!o.corpus.empty()) {
    for (auto& x : read_corpus(read_file(o.corpus))) inputs.push_back(std::move(x));
  }
  if (inputs.empty()) {
    err << "attract: give --word or --corpus\n";
    return kInvalid;
  }

  // Parse everything first so that a bad line aborts before any output.
  struct Query {
    std::string text;
    std::optional<Circuit> circuit;
    std::optional<EdgePath> path;
    bool trivial_class = false;
  };
  std::vector<Query> queries;
  for (const auto& [line, text] : inputs) {
    Query q{text, std::nullopt, std::nullopt, false};
    Word w;
    try {
      w = parse_word(g, text);
    } catch (const ParseError& e) {
      throw ParseError(line, e.what());
    }
    if (w.empty() || !is_composable(g, w)) throw ParseError(line, "'" + text + "' is not a path");
    const bool closed = g.initial(w.front()) == g.terminal(w.back());
    if (closed && !o.as_path) {
      try {
        q.circuit = cyclic_reduce(g, w);
      } catch (const TrivialClass&) {
        q.trivial_class = true;
      }
    } else {
      q.path = tighten(g, g.initial(w.front()), w);
    }
    queries.push_back(std::move(q));
  }

  std::vector<Record> records(queries.size());
  parallel_for(queries.size(), o.threads, [&](std::size_t i) {
    const auto& q = queries[i];
    if (q.trivial_class) {
      records[i] = Record{q.text, "NOT_ATTRACTED", "MEMBERSHIP", std::nullopt, "trivial class"};
    } else if (q.circuit) {
      records[i] = verdict_record(*p, *q.circuit, ap, q.text);
    } else {
      records[i] = verdict_record(*p, *q.path, ap, q.text);
    }
  });

  int code = kOk;
  for (const auto& r : records) {
    emit(r, o, out);
    if (r.verdict == "INCONCLUSIVE" || r.verdict == "BUDGET_EXCEEDED") code = kInconclusive;
  }
  return code;
}

int audit_complementarity(const Options& o, std::ostream& out, std::ostream& err) {
  auto p = load(o.file, err);
  build(*p, o);
  const auto& g = p->rep.graph();
  const auto ap = params_for(p->rep, o);
  const auto corpus = corpus_for(g, o, 6);
  const auto report = complementarity_audit(p->rep, *p->ns, corpus, ap);

  std::size_t members = 0;
  for (const auto& r : report.records) members += r.member ? 1 : 0;
  for (auto i : report.violations) {
    const auto& r = report.records[i];
    emit({format_word(g, r.circuit.word()), "VIOLATION", "BOTH", r.tile_k,
          r.member ? "carried by <Z, rho> and shows the tile" : "not carried and shows no tile"},
         o, out);
  }
  for (auto i : report.inconclusive) {
    const auto& r = report.records[i];
    emit({format_word(g, r.circuit.word()), "BUDGET_EXCEEDED", "ITERATION", std::nullopt, "not carried; budget hit"},
         o, out);
  }
  Json j{{"mode", "theorem-f"},
         {"checked", corpus.size()},
         {"members", members},
         {"violations", report.violations.size()},
         {"inconclusive", report.inconclusive.size()}};
  std::ostringstream h;
  h << "theorem-f: " << corpus.size() << " circuits (" << corpus_label(o, 6) << "), tile m=" << ap.tile_order
    << ", k_max=" << ap.k_max << "\n"
    << "  carried: " << members << "  attracted: " << corpus.size() - members - report.inconclusive.size()
    << "  violations: " << report.violations.size() << "  inconclusive: " << report.inconclusive.size() << "\n";
  emit_summary(j, h.str(), o, out);
  if (!report.violations.empty()) return kViolations;
  return report.inconclusive.empty() ? kOk : kInconclusive;
}

struct DualPair {
  std::unique_ptr<Pipeline> phi;
  std::unique_ptr<Pipeline> psi;
  DualitySetup setup;
};

DualPair load_pair(const Options& o, std::ostream& err) {
  if (o.file2.empty()) {
    err << "audit: this mode needs a second rep file (the inverse)\n";
    throw Exit{kInvalid};
  }
  DualPair d;
  d.phi = load(o.file, err);
  d.psi = load(o.file2, err);
  Options o2 = o;
  o2.z_override.reset();
  build(*d.phi, o);
  build(*d.psi, o2);
  try {
    d.setup.to_psi = parse_dictionary(d.phi->rf, d.psi->rep.graph());
    d.setup.to_phi = parse_dictionary(d.psi->rf, d.phi->rep.graph());
  } catch (const ParseError& e) {
    err << "dictionary: " << e.what() << "\n";
    throw Exit{kInvalid};
  }
  d.setup.phi = &d.phi->rep;
  d.setup.psi = &d.psi->rep;
  d.setup.ns_phi = &*d.phi->ns;
  d.setup.ns_psi = &*d.psi->ns;
  if (const auto v = dictionary_violations(d.setup); !v.empty()) {
    err << "dictionary is not a pair of inverse substitutions\n";
    for (const auto& x : v) err << "  " << x << "\n";
    throw Exit{kInvalid};
  }
  return d;
}

int audit_duality(const Options& o, std::ostream& out, std::ostream& err) {
  auto d = load_pair(o, err);
  const auto& g = d.phi->rep.graph();
  const auto corpus = corpus_for(g, o, 4);
  const auto report = duality_audit(d.setup, corpus, params_for(d.phi->rep, o), params_for(d.psi->rep, o));
  for (const auto& m : report.mismatches) {
    auto side = [](bool a) { return a ? "attracted" : "not attracted"; };
    emit({format_word(g, m.phi_class.word()), "MISMATCH", "BOTH", std::nullopt,
          std::string("phi: ") + side(m.phi_attracted) + "; inverse: " + side(m.psi_attracted) + " as " +
              format_word(d.psi->rep.graph(), m.psi_class.word())},
         o, out);
  }
  Json j{{"mode", "duality"}, {"checked", report.checked}, {"mismatches", report.mismatches.size()}};
  std::ostringstream h;
  h << "duality: " << report.checked << " classes (" << corpus_label(o, 4) << "), mismatches: "
    << report.mismatches.size() << "\n";
  emit_summary(j, h.str(), o, out);
  return report.mismatches.empty() ? kOk : kViolations;
}

int audit_uniform_m(const Options& o, std::ostream& out, std::ostream& err) {
  std::unique_ptr<Pipeline> single;
  std::optional<DualPair> pair;
  if (o.file2.empty()) {
    single = load(o.file, err);
    build(*single, o);
  } else {
    pair = load_pair(o, err);
  }
  Pipeline& p = single ? *single : *pair->phi;
  const auto& g = p.rep.graph();
  const auto ap = params_for(p.rep, o);
  const auto corpus = corpus_for(g, o, 6);
  const auto res =
      uniform_m(p.rep, *p.ns, corpus, o.tile_m, o.m_minus, pair ? &pair->setup : nullptr, ap);

  auto satisfied = [](const UniformMRecord& r, std::size_t m) {
    return r.carried || r.in_v_minus ||
           std::find(r.attracted_at.begin(), r.attracted_at.end(), m) != r.attracted_at.end();
  };
  std::size_t longest = 0;
  for (const auto& c : corpus) longest = std::max(longest, c.size());

  std::ostringstream h;
  h << "uniform-m: " << corpus.size() << " circuits (" << corpus_label(o, 6) << "), tile+ m=" << o.tile_m;
  if (pair) h << ", tile- m=" << o.m_minus;
  h << ", k_max=" << ap.k_max << "\n";
  h << "  max length  circuits  least m\n";
  for (std::size_t len = 1; len <= longest; ++len) {
    std::size_t n = 0;
    for (const auto& r : res.records) n += r.circuit.size() <= len ? 1 : 0;
    std::optional<std::size_t> least;
    for (std::size_t m = 1; m <= ap.k_max && !least; ++m) {
      if (std::all_of(res.records.begin(), res.records.end(),
                      [&](const auto& r) { return r.circuit.size() > len || satisfied(r, m); })) {
        least = m;
      }
    }
    if (o.json()) {
      Json row{{"mode", "uniform-m"}, {"max_length", len}, {"circuits", n}};
      row["least_m"] = least ? Json(*least) : Json(nullptr);
      out << row.dump() << "\n";
    }
    h << "  " << std::setw(10) << std::right << len << "  " << std::setw(8) << n << "  " << std::setw(7)
      << (least ? std::to_string(*least) : "none") << "\n";
  }
  if (res.m) {
    h << "uniform m = " << *res.m << (res.certified ? " (certified)" : " (re-check FAILED)") << "\n";
  } else {
    h << "no m <= " << ap.k_max << " works";
    if (res.worst) h << "; worst circuit " << format_word(g, res.records[*res.worst].circuit.word());
    h << "\n";
  }
  Json j{{"mode", "uniform-m"}, {"checked", corpus.size()}};
  j["m"] = res.m ? Json(*res.m) : Json(nullptr);
  j["certified"] = res.certified;
  if (o.json()) {
    out << j.dump() << "\n";
  } else {
    out << h.str();
  }
  return res.m && res.certified ? kOk : kViolations;
}

int audit_concat(const Options& o, std::ostream& out, std::ostream& err) {
  auto p = load(o.file, err);
  build(*p, o);
  const auto& g = p->rep.graph();
  const auto ap = params_for(p->rep, o);
  const std::size_t len = o.maxlen.value_or(8);
  std::mt19937_64 rng(o.seed);
  std::vector<std::pair<EdgePath, EdgePath>> samples;
  for (std::size_t i = 0; i < o.samples; ++i) {
    auto a = random_member_path(*p->ns, rng, len);
    if (!a) break;
    auto b = random_member_path(*p->ns, rng, len, a->finish(g));
    if (!b) continue;
    samples.emplace_back(std::move(*a), std::move(*b));
  }
  const auto report = concat_closure_audit(p->rep, *p->ns, samples, ap);
  for (const auto& [a, b] : report.violations) {
    emit({format_path(g, a) + " * " + format_path(g, b), "VIOLATION", "BOTH", std::nullopt,
          "concatenation is attracted"},
         o, out);
  }
  Json j{{"mode", "concat"},
         {"checked", report.checked},
         {"skipped", report.skipped},
         {"violations", report.violations.size()}};
  std::ostringstream h;
  h << "concat: " << samples.size() << " sampled pairs (seed " << o.seed << "), checked " << report.checked
    << ", skipped " << report.skipped << ", violations: " << report.violations.size() << "\n";
  if (p->ns->empty_system()) h << "  nonattracting system is empty; nothing to sample\n";
  emit_summary(j, h.str(), o, out);
  return report.violations.empty() ? kOk : kViolations;
}

int audit_windows(const Options& o, std::ostream& out, std::ostream& err) {
  auto p = load(o.file, err);
  build(*p, o);
  const auto& ns = *p->ns;
  const auto& g = p->rep.graph();
  const std::size_t len = o.maxlen.value_or(6);
  const auto table = sigma_window_table(ns);

  std::size_t checked = 0;
  std::size_t failures = 0;
  for (const auto& c : enumerate_member_circuits(ns, len)) {
    ++checked;
    const auto w = window_filter(table, c);
    if (!w.pass) {
      ++failures;
      emit({format_word(g, c.word()), "VIOLATION", "MEMBERSHIP", std::nullopt,
            "member fails window " + word_text(g, w.failing)},
           o, out);
    }
  }
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < o.samples; ++i) {
    const auto path = random_member_path(ns, rng, 4 * len);
    if (!path) break;
    ++checked;
    const auto w = window_filter(table, *path);
    if (!w.pass) {
      ++failures;
      emit({format_path(g, *path), "VIOLATION", "MEMBERSHIP", std::nullopt,
            "member fails window " + word_text(g, w.failing)},
           o, out);
    }
  }

  std::size_t non_members = 0;
  std::size_t rejected = 0;
  for (const auto& c : enumerate_circuits(g, len)) {
    if (is_lift(member(ns, c))) continue;
    ++non_members;
    rejected += window_filter(table, c).pass ? 0 : 1;
  }

  Json j{{"mode", "windows"},
         {"half_width", table.half_width},
         {"sigma", table.sigma.size()},
         {"checked", checked},
         {"violations", failures},
         {"non_members", non_members},
         {"non_members_rejected", rejected}};
  std::ostringstream h;
  h << "windows: L=" << table.half_width << ", |Sigma|=" << table.sigma.size() << "; " << checked
    << " members checked, violations: " << failures << "\n"
    << "  filter rejects " << rejected << " of " << non_members << " non-member circuits of length <= " << len
    << "\n";
  emit_summary(j, h.str(), o, out);
  return failures == 0 ? kOk : kViolations;
}

int cmd_audit(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.mode == "theorem-f") return audit_complementarity(o, out, err);
  if (o.mode == "duality") return audit_duality(o, out, err);
  if (o.mode == "uniform-m") return audit_uniform_m(o, out, err);
  if (o.mode == "concat") return audit_concat(o, out, err);
  return audit_windows(o, out, err);
}

void common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("file", o.file, "Rep file")->required();
  cmd->add_option("--kmax", o.kmax, "Iterates examined (default 8 + number of strata)");
  cmd->add_option("--budget", o.budget, "Longest word an iteration may produce")->capture_default_str();
  cmd->add_option("--tile-m", o.tile_m, "Tile order m of f^m_#(E)")->capture_default_str();
  cmd->add_option("--maxlen", o.maxlen, "Corpus enumeration bound");
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"human", "jsonl"}))
      ->capture_default_str();
  cmd->add_option("--nielsen-maxlen", o.nielsen_len, "Bound for the Nielsen path search")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Nonattracting subgroup systems of relative train track maps", "natt"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a rep file");
  validate->add_option("file", o.file, "Rep file")->required();
  validate->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"human", "jsonl"}));

  auto* nonatt = app.add_subcommand("nonattracting", "Compute Z, rho and the nonattracting subgroup system");
  common_flags(nonatt, o);

  auto* attract = app.add_subcommand("attract", "Decide weak attraction of words");
  common_flags(attract, o);
  attract->add_option("--word", o.words, "Word to decide (repeatable)");
  attract->add_option("--corpus", o.corpus, "File of newline-separated words")->check(CLI::ExistingFile);
  attract->add_flag("--path", o.as_path, "Treat closed words as paths rather than circuits");
  attract->add_flag("--cross-check", o.cross_check, "Run both procedures and require agreement");

  auto* audit = app.add_subcommand("audit", "Run a consistency audit");
  common_flags(audit, o);
  audit->add_option("file2", o.file2, "Rep file of the inverse (duality, uniform-m)");
  audit->add_option("--mode", o.mode, "Audit to run")
      ->required()
      ->check(CLI::IsMember({"theorem-f", "duality", "uniform-m", "concat", "windows"}));
  audit->add_option("--corpus", o.corpus, "File of newline-separated circuits")->check(CLI::ExistingFile);
  audit->add_option("--m-minus", o.m_minus, "Tile order for the inverse lamination")->capture_default_str();
  audit->add_option("--samples", o.samples, "Random samples (concat, windows)")->capture_default_str();
  audit->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  audit->add_option("--z-override", o.z_override, "Comma-separated edges replacing Z (negative controls)");
  audit->add_flag("--cross-check", o.cross_check, "Run both procedures and require agreement");

  std::vector<std::string> argv_store{"natt"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (nonatt->parsed()) return cmd_nonattracting(o, out, err);
    if (attract->parsed()) return cmd_attract(o, out, err);
    return cmd_audit(o, out, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << "\n";
    return kInconclusive;
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace natt::cli
