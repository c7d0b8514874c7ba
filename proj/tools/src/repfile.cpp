#include "natt/cli/repfile.hpp"

#include <fstream>
#include <sstream>

#include "natt/error.hpp"

namespace natt::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

struct Assignment {
  std::string key;
  std::string value;
};

Assignment split_assignment(std::string_view line, std::size_t lineno) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) throw ParseError(lineno, "expected 'name = value'");
  Assignment a{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))};
  if (a.key.empty()) throw ParseError(lineno, "missing name before '='");
  return a;
}

Word word_at(const MarkedGraph& g, std::string_view text, std::size_t lineno) {
  if (text == "1") return {};
  try {
    return parse_word(g, text);
  } catch (const ParseError& e) {
    throw ParseError(lineno, e.what());
  }
}

std::size_t positive_index(std::string_view text, std::size_t lineno) {
  std::size_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoul(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value == 0) throw ParseError(lineno, "expected a positive integer, got '" + std::string(text) + "'");
  return value;
}

enum class Section { None, Graph, Strata, Map, Lamination, Nielsen, Dictionary };

}  // namespace

RepFile parse_repfile(std::string_view text) {
  RepFile rf;
  Section section = Section::None;
  std::vector<bool> seen;
  std::vector<std::size_t> pending_images;  // line numbers of map entries, by edge
  bool have_lamination = false;
  bool have_graph = false;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (name == "graph") {
        section = Section::Graph;
        have_graph = true;
      } else if (!have_graph) {
        throw ParseError(lineno, "[graph] must come first");
      } else if (name == "strata") {
        section = Section::Strata;
      } else if (name == "map") {
        section = Section::Map;
        seen.assign(rf.graph.edge_count(), false);
        rf.images.assign(rf.graph.edge_count(), {});
      } else if (name == "lamination") {
        section = Section::Lamination;
      } else if (name == "nielsen") {
        section = Section::Nielsen;
      } else if (name == "dictionary") {
        section = Section::Dictionary;
      } else {
        throw ParseError(lineno, "unknown section [" + std::string(name) + "]");
      }
      continue;
    }

    switch (section) {
      case Section::None:
        throw ParseError(lineno, "content before the first section");
      case Section::Graph: {
        const auto tok = tokens(line);
        if (tok[0] == "vertex") {
          if (tok.size() < 2) throw ParseError(lineno, "vertex needs a name");
          for (std::size_t i = 1; i < tok.size(); ++i) rf.graph.add_vertex(tok[i]);
        } else if (tok[0] == "edge") {
          if (tok.size() != 4) throw ParseError(lineno, "expected 'edge NAME INITIAL TERMINAL'");
          const auto& name = tok[1];
          if (name.find('\'') != std::string::npos || name == "1") {
            throw ParseError(lineno, "invalid edge name '" + name + "'");
          }
          const auto from = rf.graph.find_vertex(tok[2]);
          const auto to = rf.graph.find_vertex(tok[3]);
          if (!from || !to) throw ParseError(lineno, "unknown vertex in edge " + name);
          rf.graph.add_edge(name, *from, *to);
        } else {
          throw ParseError(lineno, "expected 'vertex' or 'edge', got '" + tok[0] + "'");
        }
        break;
      }
      case Section::Strata: {
        const auto tok = tokens(line);
        const auto kind = stratum_class_from_string(tok[0]);
        if (!kind) throw ParseError(lineno, "unknown stratum class '" + tok[0] + "'");
        Stratum s;
        s.kind = *kind;
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (tok[i].rfind("envelope=", 0) == 0) {
            s.envelope = positive_index(std::string_view(tok[i]).substr(9), lineno) - 1;
            continue;
          }
          const auto e = rf.graph.find_edge(tok[i]);
          if (!e) throw ParseError(lineno, "unknown edge '" + tok[i] + "'");
          s.edges.push_back(*e);
        }
        rf.graph.add_stratum(std::move(s));
        break;
      }
      case Section::Map: {
        const auto a = split_assignment(line, lineno);
        const auto e = rf.graph.find_edge(a.key);
        if (!e) throw ParseError(lineno, "unknown edge '" + a.key + "'");
        if (seen[*e]) throw ParseError(lineno, "second image for edge " + a.key);
        seen[*e] = true;
        rf.images[*e] = word_at(rf.graph, a.value, lineno);
        break;
      }
      case Section::Lamination: {
        const auto a = split_assignment(line, lineno);
        if (a.key != "r") throw ParseError(lineno, "expected 'r = N'");
        rf.lamination = positive_index(a.value, lineno) - 1;
        have_lamination = true;
        break;
      }
      case Section::Nielsen: {
        const auto a = split_assignment(line, lineno);
        if (a.key != "rho") throw ParseError(lineno, "expected 'rho = WORD'");
        rf.rho = word_at(rf.graph, a.value, lineno);
        break;
      }
      case Section::Dictionary: {
        auto a = split_assignment(line, lineno);
        if (!rf.graph.find_edge(a.key)) throw ParseError(lineno, "unknown edge '" + a.key + "'");
        rf.dictionary.emplace_back(std::move(a.key), std::move(a.value));
        break;
      }
    }
  }

  if (!have_graph) throw ParseError(0, "missing [graph] section");
  if (seen.empty() && rf.graph.edge_count() > 0) throw ParseError(0, "missing [map] section");
  for (std::uint32_t e = 0; e < seen.size(); ++e) {
    if (!seen[e]) throw ParseError(0, "no image given for edge " + rf.graph.edge_name(e));
  }
  if (!have_lamination) throw ParseError(0, "missing [lamination] section");
  return rf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RepFile load_repfile(const std::filesystem::path& path) { return parse_repfile(read_file(path)); }

std::string serialize(const RepFile& rf) {
  const auto& g = rf.graph;
  auto word = [&g](const Word& w) { return w.empty() ? std::string("1") : format_word(g, w); };
  std::ostringstream out;
  out << "[graph]\n";
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) out << "vertex " << g.vertex_name(VertexId{v}) << "\n";
  for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
    const auto d = DirEdge::forward(e);
    out << "edge " << g.edge_name(e) << " " << g.vertex_name(g.initial(d)) << " " << g.vertex_name(g.terminal(d))
        << "\n";
  }
  out << "\n[strata]\n";
  for (const auto& s : g.strata()) {
    out << to_string(s.kind);
    if (s.envelope) out << " envelope=" << *s.envelope + 1;
    for (auto e : s.edges) out << " " << g.edge_name(e);
    out << "\n";
  }
  out << "\n[map]\n";
  for (std::uint32_t e = 0; e < rf.images.size(); ++e) out << g.edge_name(e) << " = " << word(rf.images[e]) << "\n";
  out << "\n[lamination]\nr = " << rf.lamination + 1 << "\n";
  if (rf.rho) out << "\n[nielsen]\nrho = " << word(*rf.rho) << "\n";
  if (!rf.dictionary.empty()) {
    out << "\n[dictionary]\n";
    for (const auto& [k, v] : rf.dictionary) out << k << " = " << v << "\n";
  }
  return out.str();
}

TopRep to_rep(const RepFile& rf) { return TopRep(rf.graph, rf.images, rf.lamination); }

NielsenData nielsen_for(const TopRep& t, const RepFile& rf, const NielsenSearchOptions& opts) {
  if (!rf.rho) return search_inp(t, t.lamination_stratum(), opts);
  const auto& g = t.graph();
  EdgePath rho{VertexId{}, *rf.rho};
  if (!rho.trivial()) rho.start = g.initial(rho.edges.front());
  return declared_nielsen(t, t.lamination_stratum(), rho);
}

Dictionary parse_dictionary(const RepFile& from, const MarkedGraph& to) {
  Dictionary d;
  d.images.resize(from.graph.edge_count());
  std::vector<bool> seen(from.graph.edge_count(), false);
  for (const auto& [name, text] : from.dictionary) {
    const auto e = *from.graph.find_edge(name);
    if (seen[e]) throw ParseError(0, "dictionary: second entry for edge " + name);
    seen[e] = true;
    try {
      d.images[e] = parse_word(to, text);
    } catch (const ParseError& err) {
      throw ParseError(0, "dictionary entry for " + name + ": " + err.what());
    }
  }
  for (std::uint32_t e = 0; e < seen.size(); ++e) {
    if (!seen[e]) throw ParseError(0, "dictionary: no entry for edge " + from.graph.edge_name(e));
  }
  return d;
}

std::vector<std::pair<std::size_t, std::string>> read_corpus(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.emplace_back(lineno, std::string(line));
  }
  return out;
}

}  // namespace natt::cli
