#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "natt/attraction.hpp"
#include "natt/cli/repfile.hpp"
#include "natt/nonattracting.hpp"

namespace testing {

inline natt::cli::RepFile load_data(std::string_view name) {
  return natt::cli::load_repfile(std::string(NATT_DATA_DIR) + "/" + std::string(name));
}

/// A rep file with its Nielsen data and nonattracting system. Not movable:
/// the system points at `rep`.
struct Example {
  natt::cli::RepFile rf;
  natt::TopRep rep;
  natt::NielsenData nd;
  std::optional<natt::NonattractingSystem> ns;

  explicit Example(natt::cli::RepFile f)
      : rf(std::move(f)), rep(natt::cli::to_rep(rf)), nd(natt::cli::nielsen_for(rep, rf)) {
    ns.emplace(natt::build_nonattracting(rep, nd, natt::default_k_max(rep)));
  }
  Example(const Example&) = delete;
  Example& operator=(const Example&) = delete;

  const natt::MarkedGraph& g() const { return rep.graph(); }
  natt::Word w(std::string_view text) const { return natt::parse_word(g(), text); }
  natt::EdgePath path(std::string_view text) const {
    auto word = w(text);
    return natt::tighten(g(), g().initial(word.front()), word);
  }
  natt::Circuit circuit(std::string_view text) const { return natt::cyclic_reduce(g(), w(text)); }
  std::string str(const natt::Word& word) const { return natt::format_word(g(), word); }
};

inline std::unique_ptr<Example> example(std::string_view name) { return std::make_unique<Example>(load_data(name)); }

// Independent string model of a rose: a letter is an edge, its upper case
// the inverse. Used as an oracle for tightening and substitution.
namespace letters {

inline char inv(char c) {
  return std::isupper(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c))
                                                     : static_cast<char>(std::toupper(c));
}

inline std::string reduce(std::string_view w) {
  std::string out;
  for (char c : w) {
    if (!out.empty() && out.back() == inv(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string inverse(std::string_view w) {
  std::string out(w.rbegin(), w.rend());
  for (auto& c : out) c = inv(c);
  return out;
}

inline std::string cyclic_reduce(std::string_view w) {
  std::string s = reduce(w);
  std::size_t i = 0;
  std::size_t j = s.size();
  while (j - i >= 2 && s[i] == inv(s[j - 1])) {
    ++i;
    --j;
  }
  return s.substr(i, j - i);
}

using Substitution = std::map<char, std::string>;

inline std::string apply(const Substitution& f, std::string_view w) {
  std::string raw;
  for (char c : w) {
    if (std::islower(static_cast<unsigned char>(c))) {
      raw += f.at(c);
    } else {
      raw += inverse(f.at(inv(c)));
    }
  }
  return reduce(raw);
}

/// Lower case edge names, upper case for reversed orientations.
inline std::string of(const natt::MarkedGraph& g, const natt::Word& w) {
  std::string out;
  for (auto d : w) {
    const char c = g.edge_name(d.edge()).at(0);
    out.push_back(d.reversed() ? inv(c) : c);
  }
  return out;
}

inline natt::Word to_word(const natt::MarkedGraph& g, std::string_view s) {
  natt::Word w;
  for (char c : s) {
    const char lower = static_cast<char>(std::tolower(c));
    const auto e = *g.find_edge(std::string(1, lower));
    w.push_back(c == lower ? natt::DirEdge::forward(e) : natt::DirEdge::backward(e));
  }
  return w;
}

/// The library orders an edge before its inverse and edges by id; with ids
/// assigned alphabetically this is a < A < b < B < ...
inline std::vector<int> ranks(std::string_view s) {
  std::vector<int> out;
  for (char c : s) {
    const bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
    out.push_back(2 * (std::tolower(c) - 'a') + (upper ? 1 : 0));
  }
  return out;
}

/// Least rotation by brute force, in library order.
inline std::string least_rotation(std::string_view s) {
  std::string best(s);
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::string r = std::string(s.substr(i)) + std::string(s.substr(0, i));
    if (ranks(r) < ranks(best)) best = r;
  }
  return best;
}

}  // namespace letters

}  // namespace testing
