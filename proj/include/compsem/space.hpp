#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "compsem/linalg.hpp"

namespace compsem {

enum class Provenance { Count, Svd, Neural };

using LemmaMap = std::unordered_map<std::string, std::string>;

// Immutable word -> vector map with a fixed dimension. Words keep their
// insertion order, which downstream serialization and iteration rely on.
class SemanticSpace {
 public:
  SemanticSpace() = default;
  explicit SemanticSpace(std::size_t dim,
                         Provenance provenance = Provenance::Count,
                         bool lemmatized = false)
      : dim_(dim), provenance_(provenance), lemmatized_(lemmatized) {}

  // Throws std::invalid_argument on a duplicate word or wrong dimension.
  void add(std::string word, Vector v);

  const Vector* find(const std::string& word) const {
    const auto it = index_.find(word);
    return it == index_.end() ? nullptr : &vectors_[it->second];
  }
  bool contains(const std::string& word) const {
    return index_.count(word) != 0;
  }

  std::size_t size() const { return words_.size(); }
  std::size_t dim() const { return dim_; }
  Provenance provenance() const { return provenance_; }
  bool lemmatized() const { return lemmatized_; }
  const std::vector<std::string>& words() const { return words_; }
  const Vector& vector_at(std::size_t i) const { return vectors_[i]; }

 private:
  std::size_t dim_ = 0;
  Provenance provenance_ = Provenance::Count;
  bool lemmatized_ = false;
  std::vector<std::string> words_;
  std::vector<Vector> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LookupOptions {
  const LemmaMap* lemma_map = nullptr;
  bool case_fold = false;  // ASCII-lowercase the query as a last resort
};

// Exact surface match first; an absent word falls back to its mapped lemma
// when a lemma map is given, then to the case-folded forms when enabled.
// Returns nullptr when every route misses: absence is an outcome, not an
// error.
const Vector* lookup(const SemanticSpace& space, const std::string& token,
                     const LookupOptions& opts = {});

}  // namespace compsem
