#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace natt {

enum class VertexId : std::uint32_t {};

constexpr std::uint32_t index_of(VertexId v) { return static_cast<std::uint32_t>(v); }

/// An oriented edge. Edge `e` has the two orientations `forward(e)` and
/// `backward(e)`; `inverse()` is the fixed-point-free involution between them.
class DirEdge {
 public:
  constexpr DirEdge() = default;

  static constexpr DirEdge forward(std::uint32_t edge) { return DirEdge{edge * 2}; }
  static constexpr DirEdge backward(std::uint32_t edge) { return DirEdge{edge * 2 + 1}; }
  static constexpr DirEdge from_code(std::uint32_t code) { return DirEdge{code}; }

  constexpr std::uint32_t edge() const { return code_ >> 1; }
  constexpr bool reversed() const { return (code_ & 1U) != 0; }
  constexpr DirEdge inverse() const { return DirEdge{code_ ^ 1U}; }
  constexpr std::uint32_t code() const { return code_; }

  constexpr auto operator<=>(const DirEdge&) const = default;

 private:
  explicit constexpr DirEdge(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

using Word = std::vector<DirEdge>;

enum class StratumClass { EG, NegFixed, NegLinear, NegOther, Zero };

std::string_view to_string(StratumClass c);
std::optional<StratumClass> stratum_class_from_string(std::string_view s);

constexpr bool is_irreducible_class(StratumClass c) { return c != StratumClass::Zero; }

struct Stratum {
  std::vector<std::uint32_t> edges;
  StratumClass kind = StratumClass::NegOther;
  /// Index of the enveloping EG stratum; only meaningful for zero strata.
  std::optional<std::size_t> envelope;

  bool operator==(const Stratum&) const = default;
};

struct Dart {
  VertexId initial{};
  VertexId terminal{};

  bool operator==(const Dart&) const = default;
};

/// A finite graph with a filtration into strata. Strata are indexed from 0
/// internally; reports and rep files number them from 1.
class MarkedGraph {
 public:
  VertexId add_vertex(std::string name);
  std::uint32_t add_edge(std::string name, VertexId initial, VertexId terminal);
  std::size_t add_stratum(Stratum stratum);

  /// Overwrites the endpoints recorded for one orientation only. Used for
  /// raw graph data; may break endpoint compatibility, which validate_graph
  /// reports.
  void set_dart(DirEdge d, Dart endpoints);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edge_names_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(index_of(v)); }
  const std::string& edge_name(std::uint32_t e) const { return edge_names_.at(e); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<std::uint32_t> find_edge(std::string_view name) const;

  VertexId initial(DirEdge d) const { return darts_.at(d.code()).initial; }
  VertexId terminal(DirEdge d) const { return darts_.at(d.code()).terminal; }

  /// Oriented edges whose initial vertex is `v`, in code order.
  std::vector<DirEdge> darts_at(VertexId v) const;

  const std::vector<Stratum>& strata() const { return strata_; }
  /// Stratum containing the edge, if any stratum lists it.
  std::optional<std::size_t> stratum_of(std::uint32_t edge) const;

  bool operator==(const MarkedGraph&) const = default;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<Dart> darts_;
  std::vector<Stratum> strata_;
};

enum class GraphViolationKind {
  EndpointMismatch,
  UnknownVertex,
  EmptyStratum,
  DuplicateEdge,
  UnassignedEdge,
  UnknownEdge,
  MissingEnvelope,
  BadEnvelope,
  DuplicateName,
};

struct GraphViolation {
  GraphViolationKind kind;
  std::string detail;
};

/// Every broken MarkedGraph invariant, one entry each; empty when well formed.
std::vector<GraphViolation> validate_graph(const MarkedGraph& g);

/// Involution-closed edge subset of a parent graph. The parent must outlive it.
class Subgraph {
 public:
  explicit Subgraph(const MarkedGraph& parent);
  Subgraph(const MarkedGraph& parent, const std::vector<std::uint32_t>& edges);

  static Subgraph full(const MarkedGraph& parent);

  const MarkedGraph& parent() const { return *parent_; }
  bool contains(std::uint32_t edge) const { return mask_.at(edge); }
  void insert(std::uint32_t edge) { mask_.at(edge) = true; }
  void erase(std::uint32_t edge) { mask_.at(edge) = false; }

  std::vector<std::uint32_t> edges() const;
  /// Vertices incident to at least one edge of the subgraph.
  std::vector<VertexId> vertices() const;
  bool contains_vertex(VertexId v) const;
  bool empty() const;

  bool operator==(const Subgraph& other) const { return mask_ == other.mask_; }

 private:
  const MarkedGraph* parent_;
  std::vector<bool> mask_;
};

struct Component {
  std::vector<VertexId> vertices;     // sorted
  std::vector<std::uint32_t> edges;   // sorted unoriented edge ids
  std::size_t first_betti = 0;

  bool noncontractible() const { return first_betti >= 1; }
};

/// Connected components of the subgraph, ordered by least vertex.
std::vector<Component> components(const Subgraph& s);

/// Spanning-tree generators of pi_1 of a component, based at its least vertex:
/// one closed reduced path per non-tree edge, in edge-id order. The tree is a
/// BFS tree that scans darts in code order.
/// Throws ContractibleComponent when first_betti == 0.
std::vector<Word> free_basis(const MarkedGraph& g, const Component& c);

}  // namespace natt
