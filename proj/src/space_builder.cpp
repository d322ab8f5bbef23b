#include "compsem/space_builder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "compsem/errors.hpp"
#include "compsem/parallel.hpp"

namespace compsem {

namespace {

std::vector<std::pair<std::string, std::uint64_t>> sorted_frequencies(
    const std::unordered_map<std::string, std::uint64_t>& counts) {
  std::vector<std::pair<std::string, std::uint64_t>> out(counts.begin(),
                                                         counts.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

std::unordered_map<std::string, std::size_t> index_of(
    const std::vector<std::string>& words) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
  return index;
}

}  // namespace

CooccurrenceMatrix CooccurrenceMatrix::from_counts(
    std::vector<std::string> targets, std::vector<std::string> contexts,
    const std::vector<std::vector<std::uint64_t>>& dense, std::size_t window) {
  if (dense.size() != targets.size()) {
    throw std::invalid_argument("from_counts: row count mismatch");
  }
  CooccurrenceMatrix m;
  m.targets = std::move(targets);
  m.contexts = std::move(contexts);
  m.window = window;
  m.rows.resize(m.targets.size());
  for (std::size_t t = 0; t < dense.size(); ++t) {
    if (dense[t].size() != m.contexts.size()) {
      throw std::invalid_argument("from_counts: column count mismatch");
    }
    for (std::size_t c = 0; c < dense[t].size(); ++c) {
      if (dense[t][c] > 0) m.rows[t].emplace_back(c, dense[t][c]);
    }
  }
  m.recompute_totals();
  return m;
}

std::uint64_t CooccurrenceMatrix::count(std::size_t t, std::size_t c) const {
  const auto& row = rows[t];
  const auto it = std::lower_bound(
      row.begin(), row.end(), c,
      [](const auto& entry, std::size_t key) { return entry.first < key; });
  return (it != row.end() && it->first == c) ? it->second : 0;
}

void CooccurrenceMatrix::recompute_totals() {
  target_totals.assign(targets.size(), 0);
  context_totals.assign(contexts.size(), 0);
  grand_total = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (const auto& [c, n] : rows[t]) {
      target_totals[t] += n;
      context_totals[c] += n;
      grand_total += n;
    }
  }
}

std::vector<std::string> all_words_by_frequency(const TokenStream& stream,
                                                bool lemmatized) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const Sentence& s : stream.sentences)
    for (const Token& t : s) ++counts[word_of(t, lemmatized)];
  std::vector<std::string> out;
  out.reserve(counts.size());
  for (auto& [word, n] : sorted_frequencies(counts))
    out.push_back(std::move(word));
  return out;
}

std::vector<std::string> select_basis(const TokenStream& stream,
                                      const BasisSpec& spec,
                                      bool lemmatized) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const Sentence& s : stream.sentences) {
    for (const Token& t : s) {
      if (!spec.pos_filter.empty() && spec.pos_filter.count(t.pos) == 0)
        continue;
      const std::string& word = word_of(t, lemmatized);
      if (spec.stop_words.count(word) != 0) continue;
      ++counts[word];
    }
  }
  const auto ranked = sorted_frequencies(counts);
  if (ranked.size() < spec.skip_top + spec.size) {
    const std::size_t available =
        ranked.size() > spec.skip_top ? ranked.size() - spec.skip_top : 0;
    throw DataError("basis selection needs " + std::to_string(spec.size) +
                    " words but only " + std::to_string(available) +
                    " remain after filtering");
  }
  std::vector<std::string> out;
  out.reserve(spec.size);
  for (std::size_t i = spec.skip_top; i < spec.skip_top + spec.size; ++i)
    out.push_back(ranked[i].first);
  return out;
}

CooccurrenceMatrix count_cooccurrences(const TokenStream& stream,
                                       const std::vector<std::string>& targets,
                                       const std::vector<std::string>& contexts,
                                       std::size_t window, bool lemmatized,
                                       std::size_t workers) {
  if (window < 1) {
    throw std::invalid_argument("count_cooccurrences: window must be >= 1");
  }
  const auto target_index = index_of(targets);
  const auto context_index = index_of(contexts);

  using Row = std::unordered_map<std::size_t, std::uint64_t>;
  if (workers == 0) workers = 1;
  std::vector<std::vector<Row>> shard_rows(
      workers, std::vector<Row>(targets.size()));

  parallel_shards(
      stream.sentences.size(), workers,
      [&](std::size_t shard, std::size_t begin, std::size_t end) {
        std::vector<Row>& rows = shard_rows[shard];
        for (std::size_t s = begin; s < end; ++s) {
          const Sentence& sent = stream.sentences[s];
          const std::size_t len = sent.size();
          for (std::size_t i = 0; i < len; ++i) {
            const auto t_it =
                target_index.find(word_of(sent[i], lemmatized));
            if (t_it == target_index.end()) continue;
            const std::size_t lo = i > window ? i - window : 0;
            const std::size_t hi = std::min(len, i + window + 1);
            for (std::size_t j = lo; j < hi; ++j) {
              if (j == i) continue;
              const auto c_it =
                  context_index.find(word_of(sent[j], lemmatized));
              if (c_it == context_index.end()) continue;
              ++rows[t_it->second][c_it->second];
            }
          }
        }
      });

  CooccurrenceMatrix m;
  m.targets = targets;
  m.contexts = contexts;
  m.window = window;
  m.lemmatized = lemmatized;
  m.rows.resize(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    Row merged;
    for (std::size_t shard = 0; shard < shard_rows.size(); ++shard) {
      for (const auto& [c, n] : shard_rows[shard][t]) merged[c] += n;
    }
    auto& row = m.rows[t];
    row.assign(merged.begin(), merged.end());
    std::sort(row.begin(), row.end());
  }
  m.recompute_totals();
  return m;
}

namespace {

enum class Weighting { Ppmi, Lmi };

SemanticSpace weight(const CooccurrenceMatrix& m, Weighting scheme) {
  if (m.grand_total == 0) {
    throw std::invalid_argument("weighting: co-occurrence matrix is empty");
  }
  SemanticSpace space(m.contexts.size(), Provenance::Count, m.lemmatized);
  const double grand = static_cast<double>(m.grand_total);
  for (std::size_t t = 0; t < m.targets.size(); ++t) {
    Vector row(m.contexts.size(), 0.0);
    const double target_total = static_cast<double>(m.target_totals[t]);
    for (const auto& [c, n] : m.rows[t]) {
      const double p_c_given_t = static_cast<double>(n) / target_total;
      const double p_c = static_cast<double>(m.context_totals[c]) / grand;
      const double pmi = std::log(p_c_given_t / p_c);
      row[c] = scheme == Weighting::Ppmi ? std::max(0.0, pmi)
                                         : static_cast<double>(n) * pmi;
    }
    space.add(m.targets[t], std::move(row));
  }
  return space;
}

}  // namespace

SemanticSpace weight_ppmi(const CooccurrenceMatrix& m) {
  return weight(m, Weighting::Ppmi);
}

SemanticSpace weight_lmi(const CooccurrenceMatrix& m) {
  return weight(m, Weighting::Lmi);
}

SemanticSpace project_space(const SemanticSpace& space, std::size_t k,
                            bool normalize_first) {
  Matrix x(space.size(), space.dim());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Vector row = normalize_first ? l2_normalize(space.vector_at(i))
                                       : space.vector_at(i);
    for (std::size_t j = 0; j < space.dim(); ++j) x(i, j) = row[j];
  }
  const SvdResult svd = truncated_svd(x, k);
  SemanticSpace out(k, Provenance::Svd, space.lemmatized());
  for (std::size_t i = 0; i < space.size(); ++i) {
    Vector row(k);
    for (std::size_t r = 0; r < k; ++r) row[r] = svd.u(i, r) * svd.s[r];
    out.add(space.words()[i], std::move(row));
  }
  return out;
}

}  // namespace compsem
