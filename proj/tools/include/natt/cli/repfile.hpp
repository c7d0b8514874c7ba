#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "natt/attraction.hpp"
#include "natt/graph.hpp"
#include "natt/nielsen.hpp"
#include "natt/toprep.hpp"

namespace natt::cli {

/// Parsed contents of a rep file.
///
///   [graph]        vertex v ...        edge a v w
///   [strata]       EG a b              zero envelope=3 d
///   [map]          a = ab'
///   [lamination]   r = 2
///   [nielsen]      rho = ab a'b'       (optional; "1" declares rho trivial)
///   [dictionary]   a = x.y             (optional; words in a partner graph)
///
/// Strata are listed bottom to top and numbered from 1. '#' starts a comment.
struct RepFile {
  MarkedGraph graph;
  std::vector<Word> images;  // by edge id
  std::size_t lamination = 0;
  std::optional<Word> rho;
  /// Edge name and raw image text, in file order. The words are parsed
  /// against the partner graph once it is known.
  std::vector<std::pair<std::string, std::string>> dictionary;

  bool operator==(const RepFile&) const = default;
};

/// Throws ParseError with the offending line number.
RepFile parse_repfile(std::string_view text);
RepFile load_repfile(const std::filesystem::path& path);
std::string serialize(const RepFile& rf);

TopRep to_rep(const RepFile& rf);

/// The declared rho when present, else a bounded search in the lamination
/// stratum.
NielsenData nielsen_for(const TopRep& t, const RepFile& rf, const NielsenSearchOptions& opts = {});

/// Parses the dictionary of `from` against the graph of `to`. Throws
/// ParseError when an edge is missing or a word does not parse.
Dictionary parse_dictionary(const RepFile& from, const MarkedGraph& to);

/// Newline-separated words; blank lines and '#' comments are skipped.
/// Returns (line number, text) pairs.
std::vector<std::pair<std::size_t, std::string>> read_corpus(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace natt::cli
