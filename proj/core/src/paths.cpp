#include "natt/paths.hpp"

#include <algorithm>
#include <cctype>

#include "natt/error.hpp"

namespace natt {

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (DirEdge d : w) {
    if (!out.empty() && out.back() == d.inverse()) {
      out.pop_back();
    } else {
      out.push_back(d);
    }
  }
  return out;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverse()) return false;
  }
  return true;
}

bool is_composable(const MarkedGraph& g, const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (g.terminal(w[i - 1]) != g.initial(w[i])) return false;
  }
  return true;
}

EdgePath inverse(const MarkedGraph& g, const EdgePath& p) { return {p.finish(g), inverse(p.edges)}; }

EdgePath tighten(const MarkedGraph& g, VertexId start, const Word& raw) {
  if (!is_composable(g, raw)) throw NotComposable("word is not a path: " + format_word(g, raw));
  if (!raw.empty() && g.initial(raw.front()) != start) {
    throw NotComposable("word does not start at " + g.vertex_name(start));
  }
  return {start, free_reduce(raw)};
}

EdgePath tighten(const MarkedGraph& g, const Word& raw) {
  if (raw.empty()) throw NotComposable("empty word has no start vertex");
  return tighten(g, g.initial(raw.front()), raw);
}

Word least_rotation(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return w;
  // Booth's algorithm over the doubled word.
  std::vector<std::ptrdiff_t> fail(2 * n, -1);
  std::size_t k = 0;
  auto at = [&](std::size_t i) { return w[i % n]; };
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const DirEdge sj = at(j);
    std::ptrdiff_t i = fail[j - k - 1];
    while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
      if (sj < at(k + static_cast<std::size_t>(i) + 1)) k = j - static_cast<std::size_t>(i) - 1;
      i = fail[static_cast<std::size_t>(i)];
    }
    if (sj != at(k + static_cast<std::size_t>(i) + 1)) {
      if (sj < at(k)) k = j;
      fail[j - k] = -1;
    } else {
      fail[j - k] = i + 1;
    }
  }
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(k + i));
  return out;
}

Circuit::Circuit(Word w) : word_(least_rotation(w)) {
  Word inv = least_rotation(natt::inverse(word_));
  unoriented_ = std::min(word_, inv);
}

Circuit Circuit::from_cyclically_reduced(Word word) { return Circuit(std::move(word)); }

Circuit Circuit::inverse() const { return Circuit(natt::inverse(word_)); }

const Word& Circuit::unoriented_key() const { return unoriented_; }

Circuit cyclic_reduce(const MarkedGraph& g, const Word& w) {
  if (w.empty()) throw TrivialClass("empty word");
  if (!is_composable(g, w) || g.terminal(w.back()) != g.initial(w.front())) {
    throw NotComposable("word is not a closed path: " + format_word(g, w));
  }
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  if (hi == lo) throw TrivialClass("word represents the trivial class: " + format_word(g, w));
  return Circuit::from_cyclically_reduced(Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
                                               r.begin() + static_cast<std::ptrdiff_t>(hi)));
}

namespace {

constexpr std::size_t kNaiveWorkLimit = 1U << 14;

std::vector<std::size_t> scan_naive(const Word& hay, const Word& needle, bool cyclic) {
  std::vector<std::size_t> out;
  const std::size_t n = hay.size();
  const std::size_t m = needle.size();
  if (m == 0 || n == 0) return out;
  if (!cyclic && m > n) return out;
  const std::size_t starts = cyclic ? n : n - m + 1;
  for (std::size_t i = 0; i < starts; ++i) {
    std::size_t j = 0;
    while (j < m && hay[(i + j) % n] == needle[j]) ++j;
    if (j == m) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> scan_kmp(const Word& hay, const Word& needle, bool cyclic) {
  std::vector<std::size_t> out;
  const std::size_t n = hay.size();
  const std::size_t m = needle.size();
  if (m == 0 || n == 0) return out;
  if (!cyclic && m > n) return out;
  std::vector<std::size_t> border(m, 0);
  for (std::size_t i = 1, k = 0; i < m; ++i) {
    while (k > 0 && needle[i] != needle[k]) k = border[k - 1];
    if (needle[i] == needle[k]) ++k;
    border[i] = k;
  }
  const std::size_t text_len = cyclic ? n + m - 1 : n;
  for (std::size_t i = 0, k = 0; i < text_len; ++i) {
    const DirEdge c = hay[i % n];
    while (k > 0 && c != needle[k]) k = border[k - 1];
    if (c == needle[k]) ++k;
    if (k == m) {
      const std::size_t begin = i + 1 - m;
      if (begin < n) out.push_back(begin);
      k = border[k - 1];
    }
  }
  return out;
}

template <typename Scanner>
std::vector<Occurrence> tagged(const Word& hay, const Word& needle, bool cyclic, Scanner scan) {
  std::vector<Occurrence> out;
  for (auto b : scan(hay, needle, cyclic)) out.push_back({b, needle.size(), false});
  const Word inv = inverse(needle);
  if (inv != needle) {
    for (auto b : scan(hay, inv, cyclic)) out.push_back({b, needle.size(), true});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Occurrence> occurrences_naive(const Word& haystack, const Word& needle, bool cyclic) {
  return tagged(haystack, needle, cyclic, scan_naive);
}

std::vector<Occurrence> occurrences_kmp(const Word& haystack, const Word& needle, bool cyclic) {
  return tagged(haystack, needle, cyclic, scan_kmp);
}

std::vector<Occurrence> occurrences(const Word& haystack, const Word& needle) {
  if (haystack.size() * needle.size() <= kNaiveWorkLimit) return occurrences_naive(haystack, needle, false);
  return occurrences_kmp(haystack, needle, false);
}

std::vector<Occurrence> occurrences(const Circuit& haystack, const Word& needle) {
  if (haystack.size() * needle.size() <= kNaiveWorkLimit) {
    return occurrences_naive(haystack.word(), needle, true);
  }
  return occurrences_kmp(haystack.word(), needle, true);
}

bool contains(const Word& haystack, const Word& needle) { return !occurrences(haystack, needle).empty(); }

bool contains(const Circuit& haystack, const Word& needle) { return !occurrences(haystack, needle).empty(); }

std::set<Word> windows(const Word& p, std::size_t width) {
  std::set<Word> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t len = 1; len <= width && i + len <= p.size(); ++len) {
      out.emplace(p.begin() + static_cast<std::ptrdiff_t>(i), p.begin() + static_cast<std::ptrdiff_t>(i + len));
    }
  }
  return out;
}

std::set<Word> windows(const Circuit& c, std::size_t width) {
  std::set<Word> out;
  const auto& w = c.word();
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    Word win;
    for (std::size_t len = 1; len <= width && len <= n; ++len) {
      win.push_back(w[(i + len - 1) % n]);
      out.insert(win);
    }
  }
  return out;
}

std::string format_word(const MarkedGraph& g, const Word& w) {
  bool single = true;
  for (std::uint32_t e = 0; e < g.edge_count(); ++e) single = single && g.edge_name(e).size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) out += '.';
    out += g.edge_name(w[i].edge());
    if (w[i].reversed()) out += '\'';
  }
  return out;
}

std::string format_path(const MarkedGraph& g, const EdgePath& p) {
  if (p.trivial()) return "1@" + g.vertex_name(p.start);
  return format_word(g, p.edges);
}

Word parse_word(const MarkedGraph& g, std::string_view text) {
  Word out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '.'; };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::size_t best_len = 0;
    std::uint32_t best_edge = 0;
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
      const auto& name = g.edge_name(e);
      if (name.size() > best_len && text.substr(i, name.size()) == name) {
        best_len = name.size();
        best_edge = e;
      }
    }
    if (best_len == 0) {
      std::size_t j = i;
      while (j < text.size() && !is_sep(text[j])) ++j;
      throw ParseError(0, "unknown edge in token '" + std::string(text.substr(i, j - i)) + "'");
    }
    i += best_len;
    bool inv = false;
    if (i < text.size() && text[i] == '\'') {
      inv = true;
      ++i;
      if (i < text.size() && text[i] == '\'') {
        throw ParseError(0, "malformed token '" + g.edge_name(best_edge) + "''': repeated apostrophe");
      }
    }
    out.push_back(inv ? DirEdge::backward(best_edge) : DirEdge::forward(best_edge));
  }
  return out;
}

namespace {

template <typename Visit>
void extend_reduced(const MarkedGraph& g, Word& cur, std::size_t max_len, Visit& visit) {
  visit(cur);
  if (cur.size() == max_len) return;
  for (DirEdge d : g.darts_at(g.terminal(cur.back()))) {
    if (d == cur.back().inverse()) continue;
    cur.push_back(d);
    extend_reduced(g, cur, max_len, visit);
    cur.pop_back();
  }
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<Circuit> enumerate_circuits(const MarkedGraph& g, std::size_t max_len) {
  std::set<Word> seen;
  std::vector<Circuit> out;
  auto visit = [&](const Word& w) {
    if (g.terminal(w.back()) != g.initial(w.front())) return;
    if (w.size() >= 2 && w.back() == w.front().inverse()) return;
    // Only canonical rotations are kept; each class is met at that rotation.
    if (least_rotation(w) != w) return;
    if (seen.insert(w).second) out.push_back(Circuit::from_cyclically_reduced(w));
  };
  if (max_len == 0) return out;
  for (std::uint32_t code = 0; code < 2 * g.edge_count(); ++code) {
    Word cur{DirEdge::from_code(code)};
    extend_reduced(g, cur, max_len, visit);
  }
  std::sort(out.begin(), out.end(), [](const Circuit& a, const Circuit& b) { return shortlex_less(a.word(), b.word()); });
  return out;
}

std::vector<EdgePath> enumerate_paths(const MarkedGraph& g, std::size_t max_len) {
  std::vector<EdgePath> out;
  auto visit = [&](const Word& w) { out.push_back({g.initial(w.front()), w}); };
  if (max_len == 0) return out;
  for (std::uint32_t code = 0; code < 2 * g.edge_count(); ++code) {
    Word cur{DirEdge::from_code(code)};
    extend_reduced(g, cur, max_len, visit);
  }
  std::sort(out.begin(), out.end(),
            [](const EdgePath& a, const EdgePath& b) { return shortlex_less(a.edges, b.edges); });
  return out;
}

}  // namespace natt
