#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "natt/graph.hpp"
#include "natt/paths.hpp"

namespace natt {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// A graph self-map fixing every vertex, given by the image path of each
/// edge, together with the EG stratum carrying the lamination under study.
class TopRep {
 public:
  /// `images[e]` is the image word of the forward orientation of edge `e`.
  TopRep(MarkedGraph graph, std::vector<Word> images, std::size_t lamination_stratum);

  const MarkedGraph& graph() const { return graph_; }
  const Word& image(DirEdge d) const { return images_.at(d.code()); }
  const Word& image(std::uint32_t edge) const { return image(DirEdge::forward(edge)); }
  std::size_t lamination_stratum() const { return r_; }
  const std::vector<std::uint32_t>& top_edges() const { return graph_.strata().at(r_).edges; }
  bool in_top_stratum(std::uint32_t edge) const;
  /// Filtration level (stratum index) of an edge.
  std::size_t height(std::uint32_t edge) const { return level_.at(edge); }
  /// Highest stratum crossed by a nonempty word.
  std::size_t height(const Word& w) const;
  std::size_t max_image_length() const { return max_image_; }

  bool operator==(const TopRep& o) const { return graph_ == o.graph_ && images_ == o.images_ && r_ == o.r_; }

 private:
  MarkedGraph graph_;
  std::vector<Word> images_;  // indexed by dart code
  std::vector<std::size_t> level_;
  std::size_t r_;
  std::size_t max_image_ = 0;
};

enum class RepViolationKind {
  Graph,
  NotAPath,
  EndpointMismatch,
  UnreducedImage,
  Filtration,
  ZeroMismatch,
  NotIrreducible,
  NoGrowth,
  NotFixed,
  NotLinear,
  NotSingleEdge,
  NegForm,
  LaminationNotEG,
};

struct RepViolation {
  RepViolationKind kind;
  std::string detail;
};

/// Checks the invariants of TopRep plus a subset of the CT axioms:
/// filtration preservation, zero strata have zero transition matrices, EG
/// strata are irreducible and not permutation matrices, NEG strata are one
/// edge E with image E.u (u in lower filtration), fixed edges map to
/// themselves, linear edges have u a nontrivial closed Nielsen path.
/// Complete splittings are not checked.
std::vector<RepViolation> validate_rep(const TopRep& t);

struct TransitionMatrix {
  std::vector<std::uint32_t> edges;  // row/column order
  /// entries[j][k]: number of times the image of edge k crosses edge j,
  /// in either orientation.
  std::vector<std::vector<std::uint64_t>> entries;

  std::size_t dim() const { return edges.size(); }
  bool is_zero() const;
  bool is_irreducible() const;
  bool is_permutation() const;
};

TransitionMatrix transition_matrix(const TopRep& t, std::size_t stratum);

/// Tightened image. Paths map to paths, circuits to circuits.
EdgePath f_sharp(const TopRep& t, const EdgePath& p);
Circuit f_sharp(const TopRep& t, const Circuit& c);
/// Tightened image of a raw word (not necessarily reduced).
Word f_sharp_word(const TopRep& t, const Word& w);

/// f^k_#. Throws BudgetExceeded once an iterate is longer than `budget`.
EdgePath iterate(const TopRep& t, const EdgePath& p, std::size_t k, std::size_t budget = kDefaultBudget);
Circuit iterate(const TopRep& t, const Circuit& c, std::size_t k, std::size_t budget = kDefaultBudget);

/// The least-id oriented edge of the lamination stratum.
DirEdge tile_edge(const TopRep& t);
/// f^m_#(E) for E = tile_edge(t).
Word tile(const TopRep& t, std::size_t m, std::size_t budget = kDefaultBudget);

/// Image of a direction under Df (first edge of the image of a dart).
DirEdge direction_image(const TopRep& t, DirEdge d);
/// The turn (d1, d2) at a vertex is illegal when some iterate of Df
/// identifies the two directions.
bool is_illegal_turn(const TopRep& t, DirEdge d1, DirEdge d2);

using Rational = boost::multiprecision::cpp_rational;

struct GrowthBounds {
  Rational lower;
  Rational upper;
  std::size_t power = 0;

  bool exponential() const { return lower > 1; }
};

/// Collatz-Wielandt bounds on the Perron-Frobenius eigenvalue: with
/// x = M^n 1, min_i (Mx)_i / x_i <= lambda <= max_i (Mx)_i / x_i.
/// Throws InvalidInput for a reducible matrix.
GrowthBounds pf_growth(const TransitionMatrix& m, std::size_t n = 16);
GrowthBounds pf_growth(const TopRep& t, std::size_t stratum, std::size_t n = 16);

}  // namespace natt
