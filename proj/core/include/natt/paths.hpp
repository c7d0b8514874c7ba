#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "natt/graph.hpp"

namespace natt {

Word inverse(const Word& w);
/// Free reduction without any endpoint checks.
Word free_reduce(const Word& w);
bool is_reduced(const Word& w);
/// Consecutive edges share endpoints.
bool is_composable(const MarkedGraph& g, const Word& w);

/// A reduced edge path. A trivial path is an empty word at `start`.
struct EdgePath {
  VertexId start{};
  Word edges;

  bool trivial() const { return edges.empty(); }
  std::size_t size() const { return edges.size(); }
  VertexId finish(const MarkedGraph& g) const { return edges.empty() ? start : g.terminal(edges.back()); }

  bool operator==(const EdgePath&) const = default;
  auto operator<=>(const EdgePath&) const = default;
};

EdgePath inverse(const MarkedGraph& g, const EdgePath& p);

/// Tightens a composable raw word. Throws NotComposable.
EdgePath tighten(const MarkedGraph& g, const Word& raw);
/// As above; `start` names the vertex of the trivial result when `raw` is empty.
EdgePath tighten(const MarkedGraph& g, VertexId start, const Word& raw);

/// A nontrivial conjugacy class, stored as the lexicographically least
/// rotation of a cyclically reduced word. The inverse class is a different
/// value; unoriented_key() identifies the two.
class Circuit {
 public:
  /// `word` must already be cyclically reduced and nonempty.
  static Circuit from_cyclically_reduced(Word word);

  const Word& word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  Circuit inverse() const;
  /// Least of the canonical words of the circuit and of its inverse.
  const Word& unoriented_key() const;
  bool same_unoriented(const Circuit& other) const { return unoriented_key() == other.unoriented_key(); }

  bool operator==(const Circuit& o) const { return word_ == o.word_; }
  auto operator<=>(const Circuit& o) const { return word_ <=> o.word_; }

 private:
  explicit Circuit(Word w);
  Word word_;
  Word unoriented_;
};

/// A bi-infinite periodic line, represented by its period.
struct PeriodicLine {
  Circuit period;
};

/// Least rotation of a word (Booth's algorithm).
Word least_rotation(const Word& w);

/// Cyclically reduces a closed composable word. Throws NotComposable when the
/// word is not a closed path and TrivialClass when it reduces to nothing.
Circuit cyclic_reduce(const MarkedGraph& g, const Word& w);

struct Occurrence {
  std::size_t begin = 0;
  std::size_t length = 0;
  bool inverted = false;  // the inverse of the needle occurs here

  bool operator==(const Occurrence&) const = default;
  auto operator<=>(const Occurrence&) const = default;
};

/// All linear occurrences of the needle or its inverse, sorted by position
/// (forward before inverted at equal positions). Uses a direct scan for short
/// inputs and a KMP automaton for long ones.
std::vector<Occurrence> occurrences(const Word& haystack, const Word& needle);
/// Occurrences in the periodic line through the circuit, one per starting
/// position in [0, size). Matches may wrap around more than once.
std::vector<Occurrence> occurrences(const Circuit& haystack, const Word& needle);

/// Force a particular scanner; both honour the contract above.
std::vector<Occurrence> occurrences_naive(const Word& haystack, const Word& needle, bool cyclic);
std::vector<Occurrence> occurrences_kmp(const Word& haystack, const Word& needle, bool cyclic);

bool contains(const Word& haystack, const Word& needle);
bool contains(const Circuit& haystack, const Word& needle);

/// Subpaths of length 1..width. For circuits, windows start at every
/// position and have length at most the period.
std::set<Word> windows(const Word& p, std::size_t width);
std::set<Word> windows(const Circuit& c, std::size_t width);

/// Text form of a word: edge names, inverse marked by a trailing apostrophe.
/// Names are juxtaposed when every edge name is one character, otherwise
/// separated by '.'.
std::string format_word(const MarkedGraph& g, const Word& w);
std::string format_path(const MarkedGraph& g, const EdgePath& p);
/// Tokens may be separated by whitespace or '.'; a run of characters without
/// separators is split greedily into the longest known edge names.
/// Throws ParseError naming the offending token.
Word parse_word(const MarkedGraph& g, std::string_view text);

/// Every cyclically reduced circuit of length 1..max_len, deduplicated by
/// orientation-sensitive canonical form and sorted by (length, word).
std::vector<Circuit> enumerate_circuits(const MarkedGraph& g, std::size_t max_len);
/// Every reduced nontrivial path of length 1..max_len, sorted by (length, word).
std::vector<EdgePath> enumerate_paths(const MarkedGraph& g, std::size_t max_len);

}  // namespace natt
