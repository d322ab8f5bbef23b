#include "compsem/space.hpp"

#include <cctype>
#include <stdexcept>

namespace compsem {

void SemanticSpace::add(std::string word, Vector v) {
  if (v.size() != dim_) {
    throw std::invalid_argument("SemanticSpace: vector for '" + word +
                                "' has dim " + std::to_string(v.size()) +
                                ", space has dim " + std::to_string(dim_));
  }
  if (index_.count(word) != 0) {
    throw std::invalid_argument("SemanticSpace: duplicate word '" + word +
                                "'");
  }
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  vectors_.push_back(std::move(v));
}

namespace {

std::string ascii_fold(const std::string& s) {
  std::string out = s;
  for (char& ch : out) {
    ch = static_cast<char>(
        std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

const Vector* direct_or_lemma(const SemanticSpace& space,
                              const std::string& token,
                              const LemmaMap* lemma_map) {
  if (const Vector* v = space.find(token)) return v;
  if (lemma_map != nullptr) {
    const auto it = lemma_map->find(token);
    if (it != lemma_map->end()) {
      if (const Vector* v = space.find(it->second)) return v;
    }
  }
  return nullptr;
}

}  // namespace

const Vector* lookup(const SemanticSpace& space, const std::string& token,
                     const LookupOptions& opts) {
  if (const Vector* v = direct_or_lemma(space, token, opts.lemma_map))
    return v;
  if (opts.case_fold) {
    const std::string folded = ascii_fold(token);
    if (folded != token)
      return direct_or_lemma(space, folded, opts.lemma_map);
  }
  return nullptr;
}

}  // namespace compsem
