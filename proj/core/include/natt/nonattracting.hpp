#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "natt/graph.hpp"
#include "natt/nielsen.hpp"
#include "natt/paths.hpp"
#include "natt/toprep.hpp"

namespace natt {

/// Default bound on iterates examined when deciding edge attraction.
std::size_t default_k_max(const TopRep& t);

/// H_r edges of `w` outside a maximum family of pairwise disjoint
/// occurrences of rho or its inverse.
std::size_t uncovered_top_edges(const TopRep& t, const NielsenData& nd, const Word& w);

enum class EdgeVerdict { Attracted, NotAttracted, Inconclusive };

struct EdgeAttraction {
  EdgeVerdict verdict = EdgeVerdict::NotAttracted;
  /// Least witnessing iterate when attracted; last iterate examined otherwise.
  std::size_t k = 0;
};

/// Searches k = 0..k_max for an iterate f^k_#(e) with an H_r edge not covered
/// by copies of rho. Inconclusive when the budget ran out first.
EdgeAttraction edge_attracted(const TopRep& t, const NielsenData& nd, DirEdge e, std::size_t k_max,
                              std::size_t budget = kDefaultBudget);

/// The nonattracting subgraph as a greatest fixed point: strata without an
/// attraction witness, pruned until f_#(E) lies in <Z, rho-hat> for every
/// edge E of Z. Zero strata follow their envelope.
/// Throws Inconclusive when a stratum with no witness fails the closure test.
std::vector<std::uint32_t> build_z(const TopRep& t, const NielsenData& nd, std::size_t k_max,
                                   std::size_t budget = kDefaultBudget);

/// A lift through h: K -> G. `kdarts` are oriented K edges; h applied to them
/// and rotated left by `offset` reproduces the input (offset is 0 for paths).
struct Lift {
  std::vector<DirEdge> kdarts;
  std::size_t offset = 0;
};

/// Lifting failed at this input position on every admissible start.
struct Obstruction {
  std::size_t position = 0;
};

using MembershipCertificate = std::variant<Lift, Obstruction>;

inline bool is_lift(const MembershipCertificate& c) { return std::holds_alternative<Lift>(c); }

struct AnaComponent {
  Component component;            // in K
  std::vector<Word> basis_in_k;   // closed K-paths at the least K-vertex
  std::vector<EdgePath> basis;    // images in G
  std::vector<Circuit> carried;   // conjugacy classes of the basis elements
};

/// Z, rho-hat, the graph K with its immersion h: K -> G, and the
/// nonattracting subgroup system read off the noncontractible components.
/// Holds a pointer to the representative, which must outlive it.
class NonattractingSystem {
 public:
  NonattractingSystem(const TopRep& t, NielsenData nd, std::vector<std::uint32_t> z_edges);

  const TopRep& rep() const { return *rep_; }
  const NielsenData& nielsen() const { return nd_; }
  const std::vector<std::uint32_t>& z_edges() const { return z_; }
  Subgraph z() const { return Subgraph(rep_->graph(), z_); }
  const MarkedGraph& k_graph() const { return k_; }
  /// h on K-vertices (injective) and on oriented K-edges.
  VertexId vertex_image(VertexId kv) const { return k_vertex_image_.at(index_of(kv)); }
  Word edge_image(DirEdge kd) const;
  /// The K-edge standing for the domain of rho, when rho is nontrivial.
  std::optional<std::uint32_t> rho_edge() const { return rho_edge_; }

  const std::vector<AnaComponent>& components() const { return components_; }
  bool geometric() const { return nd_.kind == NielsenKind::Closed; }
  bool empty_system() const { return components_.empty(); }

  /// Lift automaton: K with E_rho subdivided. States [0, |V(K)|) are the
  /// K-vertices; the rest are interior points of E_rho.
  struct Step {
    std::uint32_t to = 0;
    DirEdge kdart;
    std::size_t index = 0;  // position of this step inside h(kdart)
  };
  std::size_t state_count() const { return state_vertex_.size(); }
  bool is_k_vertex(std::uint32_t s) const { return s < k_.vertex_count(); }
  VertexId state_vertex(std::uint32_t s) const { return state_vertex_.at(s); }
  const Step* step(std::uint32_t s, DirEdge label) const;
  /// Outgoing labels of a state, in code order.
  std::vector<DirEdge> labels(std::uint32_t s) const;
  /// K-vertex state over a G-vertex, if any.
  std::optional<std::uint32_t> state_over(VertexId gv) const;

 private:
  const TopRep* rep_;
  NielsenData nd_;
  std::vector<std::uint32_t> z_;
  MarkedGraph k_;
  std::vector<VertexId> k_vertex_image_;
  std::vector<Word> k_edge_image_;
  std::optional<std::uint32_t> rho_edge_;
  std::vector<VertexId> state_vertex_;
  std::vector<std::vector<std::pair<DirEdge, Step>>> steps_;
  std::vector<AnaComponent> components_;
};

/// Builds K from Z and rho-hat. Throws InvalidInput when h fails to be an
/// immersion.
NonattractingSystem build_k(const TopRep& t, const NielsenData& nd, std::vector<std::uint32_t> z_edges);

/// Z, then K, in one call.
NonattractingSystem build_nonattracting(const TopRep& t, const NielsenData& nd, std::size_t k_max,
                                        std::size_t budget = kDefaultBudget);

/// Membership in <Z, rho-hat> by deterministic lifting through h. Trivial
/// paths are members.
MembershipCertificate member(const NonattractingSystem& ns, const EdgePath& p);
MembershipCertificate member(const NonattractingSystem& ns, const Circuit& c);

/// h applied to a lift, rotated by its offset.
Word lift_image(const NonattractingSystem& ns, const Lift& lift);

/// Position of the unique height-r illegal turn of rho (rho = alpha * beta
/// with |alpha| = position), if exactly one exists.
std::optional<std::size_t> illegal_turn_split(const TopRep& t, const NielsenData& nd);

/// L = max(|alpha|, |beta|).
constexpr std::size_t window_half_width(std::size_t alpha_len, std::size_t beta_len) {
  return alpha_len > beta_len ? alpha_len : beta_len;
}

struct WindowTable {
  std::size_t half_width = 1;  // L
  std::set<Word> sigma;        // every path of length <= 2L inside a member

  std::size_t width() const { return 2 * half_width; }
};

/// L from the illegal-turn split of rho (|rho| when there is no unique split,
/// 1 when rho is trivial) and the set of windows realised by K-paths.
WindowTable sigma_window_table(const NonattractingSystem& ns);

struct WindowCheck {
  bool pass = true;
  Word failing;
  std::size_t position = 0;
};

WindowCheck window_filter(const WindowTable& table, const Circuit& c);
WindowCheck window_filter(const WindowTable& table, const EdgePath& p);

/// Random members: reduced K-walks between K-vertices pushed through h.
/// `start` restricts the walk to begin over a given G-vertex.
std::optional<EdgePath> random_member_path(const NonattractingSystem& ns, std::mt19937_64& rng,
                                           std::size_t max_len,
                                           std::optional<VertexId> start = std::nullopt);
/// Random reduced product of basis elements of one component, cyclically
/// reduced. Empty when the system is empty.
std::optional<Circuit> random_member_circuit(const NonattractingSystem& ns, std::mt19937_64& rng,
                                             std::size_t max_factors);

/// All member circuits of length <= max_len (closed cyclically reduced
/// walks in the lift automaton), sorted by (length, word).
std::vector<Circuit> enumerate_member_circuits(const NonattractingSystem& ns, std::size_t max_len);

}  // namespace natt
