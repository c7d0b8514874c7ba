#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "natt/nonattracting.hpp"

namespace natt {

enum class Method { Membership, Iteration, Both };

std::string_view to_string(Method m);

struct AttractionParams {
  std::size_t tile_order = 3;
  std::size_t k_max = 11;
  std::size_t budget = kDefaultBudget;
  /// Run the iteration oracle for members too and require the two
  /// procedures to agree.
  bool cross_check = false;
  /// Worker threads for corpus audits; 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

AttractionParams default_params(const TopRep& t);

struct AttractionVerdict {
  bool attracted = false;
  /// Iterate at which tile(tile_order) was first seen (attracted only).
  std::size_t k = 0;
  std::size_t tile_order = 0;
  /// Lift certificate (not attracted only).
  std::optional<Lift> lift;
  Method method = Method::Membership;
};

/// Membership first; a non-member must show the tile within k_max iterates.
/// Throws Inconclusive when neither procedure resolves, or when
/// cross_check finds them in conflict; BudgetExceeded propagates.
AttractionVerdict attracted_circuit(const TopRep& t, const NonattractingSystem& ns, const Circuit& c,
                                    const AttractionParams& p);
AttractionVerdict attracted_path(const TopRep& t, const NonattractingSystem& ns, const EdgePath& path,
                                 const AttractionParams& p);

/// Least k <= k_max with `needle` occurring in f^k_#(c), or nullopt.
/// Throws BudgetExceeded.
std::optional<std::size_t> first_tile_iterate(const TopRep& t, const Circuit& c, const Word& needle,
                                              std::size_t k_max, std::size_t budget);
std::optional<std::size_t> first_tile_iterate(const TopRep& t, const EdgePath& p, const Word& needle,
                                              std::size_t k_max, std::size_t budget);

struct ComplementarityRecord {
  Circuit circuit;
  bool member = false;
  std::optional<std::size_t> tile_k;
  bool budget_hit = false;

  /// Exactly one of the two procedures claims the circuit.
  bool complementary() const { return member != tile_k.has_value(); }
};

struct ComplementarityReport {
  std::vector<ComplementarityRecord> records;
  std::vector<std::size_t> violations;    // indices into records
  std::vector<std::size_t> inconclusive;  // budget hit on a non-member
};

/// Runs both procedures on every circuit and lists the circuits where they
/// are not complementary. A non-member whose iterates outgrow the budget
/// before the tile shows up is listed as inconclusive instead.
ComplementarityReport complementarity_audit(const TopRep& t, const NonattractingSystem& ns, const std::vector<Circuit>& corpus,
                               const AttractionParams& p);

/// Substitution from the edges of one graph to paths in another; entry e is
/// the image of the forward orientation of edge e.
struct Dictionary {
  std::vector<Word> images;
};

Word translate(const Dictionary& d, const Word& w);
/// Throws NotComposable / TrivialClass when the image is not a circuit.
Circuit translate(const MarkedGraph& target, const Dictionary& d, const Circuit& c);

/// A rep of phi for Lambda+, a rep of phi^-1 for Lambda-, and dictionaries
/// between their markings. The referenced objects must outlive the setup.
struct DualitySetup {
  const TopRep* phi = nullptr;
  const TopRep* psi = nullptr;
  const NonattractingSystem* ns_phi = nullptr;
  const NonattractingSystem* ns_psi = nullptr;
  Dictionary to_psi;
  Dictionary to_phi;
};

/// Problems with the dictionaries: images that are not paths, or a generator
/// that does not return to itself after translating there and back.
std::vector<std::string> dictionary_violations(const DualitySetup& ds);

DualitySetup swapped(const DualitySetup& ds);

struct DualityMismatch {
  Circuit phi_class;
  Circuit psi_class;
  bool phi_attracted = false;
  bool psi_attracted = false;
};

struct DualityReport {
  std::size_t checked = 0;
  std::vector<DualityMismatch> mismatches;
};

/// For each class in the phi-side corpus, compares attraction to Lambda+
/// under phi with attraction of the translated class to Lambda- under
/// phi^-1. Throws InvalidInput when dictionary_violations is nonempty.
/// When `psi_params` is omitted, `p` is used on both sides.
DualityReport duality_audit(const DualitySetup& ds, const std::vector<Circuit>& corpus, const AttractionParams& p,
                            std::optional<AttractionParams> psi_params = std::nullopt);

struct UniformMRecord {
  Circuit circuit;
  bool carried = false;
  bool in_v_minus = false;
  /// Exponents m in [1, k_max] with tile+(m_plus) in f^m_#(circuit).
  std::vector<std::size_t> attracted_at;
};

struct UniformMResult {
  std::optional<std::size_t> m;
  std::vector<UniformMRecord> records;
  /// When no m works: the record satisfied at the fewest exponents.
  std::optional<std::size_t> worst;
  /// Every record was re-checked at the returned m.
  bool certified = false;
};

/// Least m in [1, k_max] such that every corpus circuit is carried by the
/// nonattracting system, contains tile-(m_minus) of the dual rep (when
/// `dual` is given), or has f^m_# image containing tile+(m_plus).
UniformMResult uniform_m(const TopRep& t, const NonattractingSystem& ns, const std::vector<Circuit>& corpus,
                         std::size_t m_plus, std::size_t m_minus, const DualitySetup* dual,
                         const AttractionParams& p);

struct ConcatReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // pairs failing the precondition
  std::vector<std::pair<EdgePath, EdgePath>> violations;
};

/// For composable pairs of non-attracted paths, checks that the tightened
/// concatenation is again not attracted.
ConcatReport concat_closure_audit(const TopRep& t, const NonattractingSystem& ns,
                                  const std::vector<std::pair<EdgePath, EdgePath>>& samples,
                                  const AttractionParams& p);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace natt
