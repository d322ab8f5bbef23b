#include "compsem/embedding_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "compsem/errors.hpp"

namespace compsem {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void binary_error(const std::string& what, std::uint64_t offset) {
  throw DataError("word2vec binary: " + what + " at byte offset " +
                  std::to_string(offset));
}

// Reads exactly n bytes, or reports truncation at the current offset.
void read_exact(std::istream& in, char* dst, std::size_t n,
                std::uint64_t& offset, const char* what) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    binary_error(std::string("truncated stream while reading ") + what,
                 offset + static_cast<std::uint64_t>(in.gcount()));
  }
  offset += n;
}

std::uint64_t parse_header_number(const std::string& header,
                                  std::size_t& pos) {
  while (pos < header.size() && header[pos] == ' ') ++pos;
  std::uint64_t value = 0;
  const auto res =
      std::from_chars(header.data() + pos, header.data() + header.size(),
                      value);
  if (res.ec != std::errc() || res.ptr == header.data() + pos) {
    binary_error("non-numeric header field", pos);
  }
  pos = static_cast<std::size_t>(res.ptr - header.data());
  return value;
}

}  // namespace

SemanticSpace read_word2vec_binary(std::istream& in) {
  std::uint64_t offset = 0;
  std::string header;
  char ch;
  while (in.get(ch)) {
    ++offset;
    if (ch == '\n') break;
    header.push_back(ch);
    if (header.size() > 64) binary_error("header line too long", offset);
  }
  if (!in && header.empty()) binary_error("empty stream", 0);

  std::size_t pos = 0;
  const std::uint64_t vocab_size = parse_header_number(header, pos);
  const std::uint64_t dim = parse_header_number(header, pos);

  SemanticSpace space(static_cast<std::size_t>(dim), Provenance::Neural);
  std::vector<char> float_bytes(static_cast<std::size_t>(dim) * 4);
  for (std::uint64_t entry = 0; entry < vocab_size; ++entry) {
    std::string word;
    for (;;) {
      if (!in.get(ch)) {
        binary_error("truncated stream: expected " +
                         std::to_string(vocab_size) + " entries, got " +
                         std::to_string(entry),
                     offset);
      }
      ++offset;
      if (ch == ' ') break;
      word.push_back(ch);
    }
    read_exact(in, float_bytes.data(), float_bytes.size(), offset, "vector");
    Vector v(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto* b =
          reinterpret_cast<const unsigned char*>(&float_bytes[i * 4]);
      const std::uint32_t bits =
          static_cast<std::uint32_t>(b[0]) |
          (static_cast<std::uint32_t>(b[1]) << 8) |
          (static_cast<std::uint32_t>(b[2]) << 16) |
          (static_cast<std::uint32_t>(b[3]) << 24);
      v[i] = static_cast<double>(std::bit_cast<float>(bits));
    }
    if (in.peek() == '\n') {
      in.get(ch);
      ++offset;
    }
    try {
      space.add(std::move(word), std::move(v));
    } catch (const std::invalid_argument& e) {
      binary_error(e.what(), offset);
    }
  }
  return space;
}

SemanticSpace read_word2vec_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file: " + path);
  return read_word2vec_binary(in);
}

void write_word2vec_binary(const SemanticSpace& space, std::ostream& out) {
  out << space.size() << ' ' << space.dim() << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << space.words()[i] << ' ';
    for (const double x : space.vector_at(i)) {
      const std::uint32_t bits =
          std::bit_cast<std::uint32_t>(static_cast<float>(x));
      const char bytes[4] = {
          static_cast<char>(bits & 0xff),
          static_cast<char>((bits >> 8) & 0xff),
          static_cast<char>((bits >> 16) & 0xff),
          static_cast<char>((bits >> 24) & 0xff)};
      out.write(bytes, 4);
    }
    out.put('\n');
  }
}

namespace {

[[noreturn]] void text_error(const std::string& what, std::size_t line_no) {
  throw DataError("space text format: " + what + " at line " +
                  std::to_string(line_no));
}

}  // namespace

SemanticSpace read_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) text_error("missing header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::uint64_t vocab_size = 0, dim = 0;
  {
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    auto res = std::from_chars(begin, end, vocab_size);
    if (res.ec != std::errc() || res.ptr == end || *res.ptr != ' ')
      text_error("malformed header", 1);
    auto res2 = std::from_chars(res.ptr + 1, end, dim);
    if (res2.ec != std::errc() || res2.ptr != end)
      text_error("malformed header", 1);
  }
  SemanticSpace space(static_cast<std::size_t>(dim));
  std::size_t line_no = 1;
  for (std::uint64_t row = 0; row < vocab_size; ++row) {
    if (!std::getline(in, line))
      text_error("expected " + std::to_string(vocab_size) + " rows, got " +
                     std::to_string(row),
                 line_no);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t space_pos = line.find(' ');
    if (space_pos == std::string::npos || space_pos == 0)
      text_error("missing word field", line_no);
    std::string word = line.substr(0, space_pos);
    if (space.contains(word)) text_error("duplicate word", line_no);
    Vector v(static_cast<std::size_t>(dim));
    const char* cursor = line.data() + space_pos;
    const char* end = line.data() + line.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (cursor == end || *cursor != ' ')
        text_error("expected " + std::to_string(dim) + " components",
                   line_no);
      ++cursor;
      const auto res = std::from_chars(cursor, end, v[i]);
      if (res.ec != std::errc())
        text_error("malformed component " + std::to_string(i + 1), line_no);
      cursor = res.ptr;
    }
    if (cursor != end) text_error("trailing characters", line_no);
    space.add(std::move(word), std::move(v));
  }
  return space;
}

SemanticSpace read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open space file: " + path);
  return read_text(in);
}

void write_text(const SemanticSpace& space, std::ostream& out) {
  out << space.size() << ' ' << space.dim() << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    const std::string& word = space.words()[i];
    if (word.empty() || word.find(' ') != std::string::npos)
      throw DataError("space text format: word '" + word +
                      "' is empty or contains a space");
    out << word;
    for (const double x : space.vector_at(i)) {
      if (!std::isfinite(x))
        throw DataError("space text format: non-finite component in '" +
                        word + "'");
      out << ' ' << format_double(x);
    }
    out.put('\n');
  }
}

void write_text_file(const SemanticSpace& space, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path);
  write_text(space, out);
  out.flush();
  if (!out) throw DataError("failed writing space file: " + path);
}

SemanticSpace read_space_file(const std::string& path, SpaceFormat format) {
  return format == SpaceFormat::Text ? read_text_file(path)
                                     : read_word2vec_binary_file(path);
}

LemmaMap read_lemma_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lemma map: " + path);
  LemmaMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw DataError("lemma map line " + std::to_string(line_no) +
                      ": expected surface<TAB>lemma");
    map[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return map;
}

}  // namespace compsem
