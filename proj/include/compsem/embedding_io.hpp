#pragma once

#include <iosfwd>
#include <string>

#include "compsem/space.hpp"

namespace compsem {

// Shortest decimal form that parses back to the same 64-bit value.
std::string format_double(double x);

// Binary embedding format: ASCII header `<vocab_size> <dim>\n`, then per
// entry the word's bytes terminated by a single space, dim little-endian
// 32-bit floats, and an optional trailing newline. Floats are widened to
// 64-bit exactly. Errors name the byte offset.
SemanticSpace read_word2vec_binary(std::istream& in);
SemanticSpace read_word2vec_binary_file(const std::string& path);
void write_word2vec_binary(const SemanticSpace& space, std::ostream& out);

// Portable text format: line 1 `<vocab_size> <dim>`, then one row per word
// as `<word> <v1> … <vdim>` with round-trippable decimal doubles. Words may
// not contain spaces; non-finite components are refused on write. Errors
// name the line number.
SemanticSpace read_text(std::istream& in);
SemanticSpace read_text_file(const std::string& path);
void write_text(const SemanticSpace& space, std::ostream& out);
void write_text_file(const SemanticSpace& space, const std::string& path);

enum class SpaceFormat { Text, Word2vecBinary };

SemanticSpace read_space_file(const std::string& path, SpaceFormat format);

// Lemma map file: UTF-8 lines `surface<TAB>lemma`.
LemmaMap read_lemma_map_file(const std::string& path);

}  // namespace compsem
