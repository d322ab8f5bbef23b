#include "compsem/token_stream.hpp"

#include <fstream>
#include <istream>
#include <string>

#include "compsem/errors.hpp"

namespace compsem {

Pos parse_pos(std::string_view text) {
  if (text == "NOUN") return Pos::Noun;
  if (text == "VERB") return Pos::Verb;
  if (text == "ADJ") return Pos::Adj;
  if (text == "ADV") return Pos::Adv;
  return Pos::Other;
}

const char* pos_name(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "NOUN";
    case Pos::Verb: return "VERB";
    case Pos::Adj: return "ADJ";
    case Pos::Adv: return "ADV";
    case Pos::Other: break;
  }
  return "OTHER";
}

TokenStream read_token_stream(std::istream& in) {
  TokenStream stream;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!current.empty()) {
      stream.sentences.push_back(std::move(current));
      current.clear();
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("#DOC", 0) == 0) {
      flush();
      continue;
    }
    Token tok;
    const std::size_t tab1 = line.find('\t');
    if (tab1 == std::string::npos) {
      tok.surface = line;
    } else {
      tok.surface = line.substr(0, tab1);
      const std::size_t tab2 = line.find('\t', tab1 + 1);
      if (tab2 == std::string::npos) {
        tok.lemma = line.substr(tab1 + 1);
      } else {
        tok.lemma = line.substr(tab1 + 1, tab2 - tab1 - 1);
        tok.pos = parse_pos(std::string_view(line).substr(tab2 + 1));
      }
    }
    if (tok.surface.empty()) {
      throw DataError("token stream line " + std::to_string(line_no) +
                      ": empty surface form");
    }
    current.push_back(std::move(tok));
  }
  flush();
  return stream;
}

TokenStream read_token_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open token stream file: " + path);
  return read_token_stream(in);
}

}  // namespace compsem
