#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace compsem {

enum class Pos { Noun, Verb, Adj, Adv, Other };

// NOUN/VERB/ADJ/ADV map to their tags; anything else is Other.
Pos parse_pos(std::string_view text);
const char* pos_name(Pos pos);

struct Token {
  std::string surface;
  std::string lemma;  // empty when not provided
  Pos pos = Pos::Other;
};

using Sentence = std::vector<Token>;

struct TokenStream {
  std::vector<Sentence> sentences;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const Sentence& s : sentences) n += s.size();
    return n;
  }
  bool empty() const { return token_count() == 0; }
};

// The token the space is built over: the lemma field when requested and
// present, the surface form otherwise.
inline const std::string& word_of(const Token& t, bool lemmatized) {
  return (lemmatized && !t.lemma.empty()) ? t.lemma : t.surface;
}

// One token per line as `surface<TAB>lemma<TAB>pos` (lemma and pos
// optional), blank line ends a sentence, a line starting with `#DOC` ends a
// document (and the current sentence). Throws DataError with the line
// number on an empty surface field.
TokenStream read_token_stream(std::istream& in);
TokenStream read_token_stream_file(const std::string& path);

}  // namespace compsem
