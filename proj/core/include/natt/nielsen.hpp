#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "natt/paths.hpp"
#include "natt/toprep.hpp"

namespace natt {

enum class NielsenKind { Trivial, NonClosed, Closed };

std::string_view to_string(NielsenKind k);

/// The path rho-hat of a stratum: an indivisible Nielsen path of that height
/// (stored as the lexicographically least of rho and its reversal), or the
/// trivial path at the least vertex of the stratum.
struct NielsenData {
  NielsenKind kind = NielsenKind::Trivial;
  EdgePath rho;
  std::size_t height = 0;
  /// The result comes from a length-bounded search; a longer indivisible
  /// Nielsen path could have been missed.
  bool bounded_search = false;
  bool declared = false;

  bool trivial() const { return kind == NielsenKind::Trivial; }
};

bool verify_nielsen(const TopRep& t, const EdgePath& p);

/// Nontrivial, Nielsen, and not split at any interior vertex into two
/// nontrivial Nielsen subpaths.
bool is_indivisible_nielsen(const TopRep& t, const EdgePath& p);

struct NielsenSearchOptions {
  std::size_t max_len = 12;
  std::size_t max_seed_iters = 4;
  /// Seeds for the iteration pass have at most this many edges.
  std::size_t seed_len = 6;
};

/// All reduced paths in G_height that cross H_height, have at most max_len
/// edges and satisfy f_#(p) = p. Exhaustive; sorted by (length, word).
std::vector<EdgePath> fixed_paths(const TopRep& t, std::size_t height, std::size_t max_len);

/// Bounded search for the indivisible Nielsen path of the given EG stratum.
/// Combines fixed_paths with a pass that iterates f_# on short seeds and
/// keeps any fixed iterate. Throws InvalidInput when two indivisible Nielsen
/// paths are inequivalent up to reversal.
NielsenData search_inp(const TopRep& t, std::size_t height, const NielsenSearchOptions& opts = {});

/// Verifies a user-declared rho and normalises its orientation.
/// Throws InvalidInput when rho is not an indivisible Nielsen path of the
/// given height.
NielsenData declared_nielsen(const TopRep& t, std::size_t height, const EdgePath& rho);

struct GeometricityReport {
  bool geometric = false;
  /// The nonattracting subgroup system is a free factor system.
  bool free_factor_system = true;
  std::string_view summary;
};

GeometricityReport classify(const NielsenData& nd);

}  // namespace natt
