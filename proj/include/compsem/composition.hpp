#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compsem/linalg.hpp"
#include "compsem/space.hpp"

namespace compsem {

enum class CompositionMethod {
  VerbOnly,
  Addition,
  Multiplication,
  Relational,
  Kronecker,
  CopySubject,
  CopyObject,
  FrobeniusAdd,
  FrobeniusMult,
  FrobeniusOuter,
};

// All method names in declaration order (the CLI surface).
const std::vector<std::string>& composition_method_names();
std::string_view method_name(CompositionMethod m);
// Throws std::invalid_argument naming the valid methods.
CompositionMethod parse_method(std::string_view name);

// True for methods whose sentence formula needs an SVO triple (and, except
// for Kronecker, a relational verb matrix).
bool is_svo_only(CompositionMethod m);
// True for methods applicable to arbitrary token sequences.
bool is_sequence_method(CompositionMethod m);

// Order-2 verb representation: either an explicit matrix built from the
// verb's argument pairs, or the implicit rank-1 matrix v ⊗ v, which is
// never materialized during composition.
struct VerbRepresentation {
  enum class Kind { RelationalMatrix, KroneckerRank1 };
  Kind kind = Kind::RelationalMatrix;
  Matrix matrix;       // RelationalMatrix
  Vector verb_vector;  // KroneckerRank1

  std::size_t dim() const {
    return kind == Kind::RelationalMatrix ? matrix.rows()
                                          : verb_vector.size();
  }
  // The explicit matrix; materializes v ⊗ v for the rank-1 kind.
  Matrix dense() const;
};

// Result of composing a sentence: a vector, a dense matrix, or a rank-1
// matrix kept as its two factors (a ⊗ b) so wide spaces stay O(dim).
class SentenceRepresentation {
 public:
  enum class Shape { VectorShape, MatrixShape };

  static SentenceRepresentation from_vector(Vector v);
  static SentenceRepresentation from_matrix(Matrix m);
  static SentenceRepresentation from_outer(Vector a, Vector b);

  Shape shape() const { return shape_; }
  bool is_rank_one() const { return rank_one_; }
  const Vector& vec() const;          // VectorShape only
  const Vector& left_factor() const;  // rank-1 only
  const Vector& right_factor() const;
  const Matrix& matrix() const;  // dense MatrixShape only
  Matrix dense() const;          // materializes any MatrixShape

 private:
  Shape shape_ = Shape::VectorShape;
  bool rank_one_ = false;
  Vector vec_;     // vector payload, or left factor when rank-1
  Vector right_;   // right factor when rank-1
  Matrix matrix_;  // dense payload
};

// Cosine over the representation's flattening; shape and dimension must
// match; a zero-norm operand yields 0. Rank-1 operands never materialize.
double cosine(const SentenceRepresentation& a,
              const SentenceRepresentation& b);

// Verb matrix as the sum of subject ⊗ object over the verb's corpus
// argument pairs. Throws on an empty list or mixed dimensions.
VerbRepresentation build_relational_verb(
    const std::vector<std::pair<Vector, Vector>>& subject_object_pairs);

VerbRepresentation build_kronecker_verb(Vector verb_vector);

struct SequenceResult {
  SentenceRepresentation rep;
  std::size_t oov = 0;   // tokens that resolved to nothing
  std::size_t used = 0;  // tokens that contributed
};

// Fold of add / pointwise_mult over the resolvable token vectors; OOV
// tokens are skipped and an all-OOV sequence gives the zero vector.
// VerbOnly returns the vector of tokens[verb_index] (zero when OOV).
SequenceResult compose_sequence(CompositionMethod method,
                                const SemanticSpace& space,
                                const std::vector<std::string>& tokens,
                                const LookupOptions& lookup_opts = {},
                                std::optional<std::size_t> verb_index = {});

// The SVO formulas over an explicit verb representation: Relational
// V̄ ⊙ (s ⊗ o); Kronecker (v⊙s) ⊗ (v⊙o); CopyObject s ⊙ (V̄ × o);
// CopySubject o ⊙ (V̄ᵀ × s); FrobeniusAdd/Mult/Outer combine the two copy
// results with +, ⊙, ⊗.
SentenceRepresentation compose_svo(CompositionMethod method,
                                   const VerbRepresentation& verb,
                                   const Vector& subject,
                                   const Vector& object);

// Vector-verb overload for the methods that need no matrix: VerbOnly,
// Addition, Multiplication, and Kronecker (via its factorization).
SentenceRepresentation compose_svo(CompositionMethod method,
                                   const Vector& verb_vector,
                                   const Vector& subject,
                                   const Vector& object);

struct Triple {
  std::string verb;
  std::string subject;
  std::string object;
  std::uint64_t count = 1;
};

// UTF-8 lines `verb<TAB>subject<TAB>object<TAB>count`, count >= 1 meaning
// the pair joins the relational sum count times. Errors name line numbers.
std::vector<Triple> read_triples(std::istream& in);
std::vector<Triple> read_triples_file(const std::string& path);

struct RelationalLookupResult {
  std::optional<VerbRepresentation> verb;
  std::size_t triples_used = 0;
  std::size_t triples_skipped = 0;  // argument missing from the space
};

// Relational matrix for one verb from its triples; absent when the verb
// has no triple with both arguments resolvable.
RelationalLookupResult relational_from_triples(
    const std::vector<Triple>& triples, const std::string& verb,
    const SemanticSpace& space, const LookupOptions& lookup_opts = {});

}  // namespace compsem
