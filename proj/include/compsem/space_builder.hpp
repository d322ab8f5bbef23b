#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "compsem/space.hpp"
#include "compsem/token_stream.hpp"

namespace compsem {

struct BasisSpec {
  std::size_t size = 2000;
  std::set<Pos> pos_filter;  // empty accepts every tag
  std::unordered_set<std::string> stop_words;
  std::size_t skip_top = 0;  // drop this many top-frequency survivors
};

// Sparse target x context count matrix with derived totals.
struct CooccurrenceMatrix {
  std::vector<std::string> targets;
  std::vector<std::string> contexts;
  // rows[t] holds (context index, count) sorted by context index.
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> rows;
  std::size_t window = 5;
  bool lemmatized = false;
  std::vector<std::uint64_t> target_totals;
  std::vector<std::uint64_t> context_totals;
  std::uint64_t grand_total = 0;

  static CooccurrenceMatrix from_counts(
      std::vector<std::string> targets, std::vector<std::string> contexts,
      const std::vector<std::vector<std::uint64_t>>& dense,
      std::size_t window = 5);

  std::uint64_t count(std::size_t t, std::size_t c) const;
  void recompute_totals();
};

// Every distinct word, ordered by frequency descending then lexicographic.
std::vector<std::string> all_words_by_frequency(const TokenStream& stream,
                                                bool lemmatized = false);

// Top spec.size context words after the pos filter, stop-word removal, and
// skipping the spec.skip_top most frequent survivors. Throws DataError
// naming the shortfall when fewer than spec.size words remain.
std::vector<std::string> select_basis(const TokenStream& stream,
                                      const BasisSpec& spec,
                                      bool lemmatized = false);

// counts[t][c] = occurrences of context c within `window` positions of
// target t; windows never cross sentence boundaries. Counting shards over
// sentences; the integer merge makes the result identical for any worker
// count.
CooccurrenceMatrix count_cooccurrences(const TokenStream& stream,
                                       const std::vector<std::string>& targets,
                                       const std::vector<std::string>& contexts,
                                       std::size_t window,
                                       bool lemmatized = false,
                                       std::size_t workers = 1);

// value(t,c) = max(0, ln(p(c|t)/p(c))) with p(c|t) = count/target_total and
// p(c) = context_total/grand_total; zero counts stay 0.
SemanticSpace weight_ppmi(const CooccurrenceMatrix& m);

// value(t,c) = count * ln(p(c|t)/p(c)), unclamped; zero counts stay 0.
SemanticSpace weight_lmi(const CooccurrenceMatrix& m);

// Optionally L2-normalize rows, then reduce to k dimensions via truncated
// SVD; output rows are U_k * diag(s_k).
SemanticSpace project_space(const SemanticSpace& space, std::size_t k,
                            bool normalize_first);

}  // namespace compsem
