#include "compsem/composition.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "compsem/errors.hpp"

namespace compsem {

const std::vector<std::string>& composition_method_names() {
  static const std::vector<std::string> names{
      "VerbOnly",    "Addition",     "Multiplication", "Relational",
      "Kronecker",   "CopySubject",  "CopyObject",     "FrobeniusAdd",
      "FrobeniusMult", "FrobeniusOuter"};
  return names;
}

std::string_view method_name(CompositionMethod m) {
  return composition_method_names()[static_cast<std::size_t>(m)];
}

CompositionMethod parse_method(std::string_view name) {
  const auto& names = composition_method_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<CompositionMethod>(i);
  }
  std::string valid;
  for (const auto& n : names) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw std::invalid_argument("unknown composition method '" +
                              std::string(name) + "'; valid methods: " +
                              valid);
}

bool is_svo_only(CompositionMethod m) {
  switch (m) {
    case CompositionMethod::Relational:
    case CompositionMethod::Kronecker:
    case CompositionMethod::CopySubject:
    case CompositionMethod::CopyObject:
    case CompositionMethod::FrobeniusAdd:
    case CompositionMethod::FrobeniusMult:
    case CompositionMethod::FrobeniusOuter:
      return true;
    default:
      return false;
  }
}

bool is_sequence_method(CompositionMethod m) { return !is_svo_only(m); }

Matrix VerbRepresentation::dense() const {
  return kind == Kind::RelationalMatrix ? matrix
                                        : outer(verb_vector, verb_vector);
}

SentenceRepresentation SentenceRepresentation::from_vector(Vector v) {
  SentenceRepresentation r;
  r.shape_ = Shape::VectorShape;
  r.vec_ = std::move(v);
  return r;
}

SentenceRepresentation SentenceRepresentation::from_matrix(Matrix m) {
  SentenceRepresentation r;
  r.shape_ = Shape::MatrixShape;
  r.matrix_ = std::move(m);
  return r;
}

SentenceRepresentation SentenceRepresentation::from_outer(Vector a,
                                                          Vector b) {
  SentenceRepresentation r;
  r.shape_ = Shape::MatrixShape;
  r.rank_one_ = true;
  r.vec_ = std::move(a);
  r.right_ = std::move(b);
  return r;
}

const Vector& SentenceRepresentation::vec() const {
  if (shape_ != Shape::VectorShape)
    throw std::invalid_argument("representation is not a vector");
  return vec_;
}

const Vector& SentenceRepresentation::left_factor() const {
  if (!rank_one_)
    throw std::invalid_argument("representation is not rank-one");
  return vec_;
}

const Vector& SentenceRepresentation::right_factor() const {
  if (!rank_one_)
    throw std::invalid_argument("representation is not rank-one");
  return right_;
}

const Matrix& SentenceRepresentation::matrix() const {
  if (shape_ != Shape::MatrixShape || rank_one_)
    throw std::invalid_argument("representation is not a dense matrix");
  return matrix_;
}

Matrix SentenceRepresentation::dense() const {
  if (shape_ != Shape::MatrixShape)
    throw std::invalid_argument("representation is not a matrix");
  return rank_one_ ? outer(vec_, right_) : matrix_;
}

double cosine(const SentenceRepresentation& a,
              const SentenceRepresentation& b) {
  using Shape = SentenceRepresentation::Shape;
  if (a.shape() != b.shape())
    throw std::invalid_argument("cosine: representation shape mismatch");
  if (a.shape() == Shape::VectorShape) return cosine(a.vec(), b.vec());

  if (a.is_rank_one() && b.is_rank_one()) {
    const double num = dot(a.left_factor(), b.left_factor()) *
                       dot(a.right_factor(), b.right_factor());
    const double na = norm(a.left_factor()) * norm(a.right_factor());
    const double nb = norm(b.left_factor()) * norm(b.right_factor());
    if (na == 0.0 || nb == 0.0) return 0.0;
    return num / (na * nb);
  }
  if (a.is_rank_one() != b.is_rank_one()) {
    const auto& r1 = a.is_rank_one() ? a : b;
    const auto& dense = a.is_rank_one() ? b : a;
    const Matrix& m = dense.matrix();
    // <u ⊗ v, M>_F = u^T M v
    const double num =
        dot(r1.left_factor(), matvec(m, r1.right_factor()));
    const double n1 = norm(r1.left_factor()) * norm(r1.right_factor());
    double frob = 0.0;
    for (const double x : m.values()) frob += x * x;
    const double n2 = std::sqrt(frob);
    if (n1 == 0.0 || n2 == 0.0) return 0.0;
    return num / (n1 * n2);
  }
  return cosine(a.matrix(), b.matrix());
}

VerbRepresentation build_relational_verb(
    const std::vector<std::pair<Vector, Vector>>& subject_object_pairs) {
  if (subject_object_pairs.empty()) {
    throw std::invalid_argument(
        "build_relational_verb: no argument pairs (verb unseen)");
  }
  const std::size_t dim = subject_object_pairs.front().first.size();
  VerbRepresentation rep;
  rep.kind = VerbRepresentation::Kind::RelationalMatrix;
  rep.matrix = Matrix(dim, dim);
  for (const auto& [sbj, obj] : subject_object_pairs) {
    if (sbj.size() != dim || obj.size() != dim) {
      throw std::invalid_argument(
          "build_relational_verb: mixed dimensions in argument pairs");
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        rep.matrix(i, j) += sbj[i] * obj[j];
  }
  return rep;
}

VerbRepresentation build_kronecker_verb(Vector verb_vector) {
  VerbRepresentation rep;
  rep.kind = VerbRepresentation::Kind::KroneckerRank1;
  rep.verb_vector = std::move(verb_vector);
  return rep;
}

SequenceResult compose_sequence(CompositionMethod method,
                                const SemanticSpace& space,
                                const std::vector<std::string>& tokens,
                                const LookupOptions& lookup_opts,
                                std::optional<std::size_t> verb_index) {
  if (!is_sequence_method(method)) {
    throw std::invalid_argument(
        std::string("compose_sequence: ") + std::string(method_name(method)) +
        " requires an SVO triple");
  }
  if (tokens.empty())
    throw std::invalid_argument("compose_sequence: no tokens");

  SequenceResult out;
  if (method == CompositionMethod::VerbOnly) {
    if (!verb_index.has_value())
      throw std::invalid_argument(
          "compose_sequence: VerbOnly needs a designated verb token");
    if (*verb_index >= tokens.size())
      throw std::invalid_argument(
          "compose_sequence: verb index out of range");
    const Vector* v = lookup(space, tokens[*verb_index], lookup_opts);
    if (v == nullptr) {
      out.oov = 1;
      out.rep = SentenceRepresentation::from_vector(Vector(space.dim(), 0.0));
    } else {
      out.used = 1;
      out.rep = SentenceRepresentation::from_vector(*v);
    }
    return out;
  }

  Vector acc;
  for (const std::string& token : tokens) {
    const Vector* v = lookup(space, token, lookup_opts);
    if (v == nullptr) {
      ++out.oov;
      continue;
    }
    ++out.used;
    if (acc.empty()) {
      acc = *v;
    } else if (method == CompositionMethod::Addition) {
      acc = add(acc, *v);
    } else {
      acc = pointwise_mult(acc, *v);
    }
  }
  if (acc.empty()) acc.assign(space.dim(), 0.0);
  out.rep = SentenceRepresentation::from_vector(std::move(acc));
  return out;
}

namespace {

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string("compose_svo: ") + what +
                                " dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

Vector copy_object(const Matrix& verb, const Vector& subject,
                   const Vector& object) {
  return pointwise_mult(subject, matvec(verb, object));
}

Vector copy_subject(const Matrix& verb, const Vector& subject,
                    const Vector& object) {
  return pointwise_mult(object, matvec(verb, subject, true));
}

}  // namespace

SentenceRepresentation compose_svo(CompositionMethod method,
                                   const VerbRepresentation& verb,
                                   const Vector& subject,
                                   const Vector& object) {
  require_dim(subject.size(), object.size(), "subject/object");
  require_dim(verb.dim(), subject.size(), "verb/argument");

  if (method == CompositionMethod::Kronecker) {
    if (verb.kind != VerbRepresentation::Kind::KroneckerRank1) {
      throw std::invalid_argument(
          "compose_svo: Kronecker needs a rank-1 verb representation");
    }
    return SentenceRepresentation::from_outer(
        pointwise_mult(verb.verb_vector, subject),
        pointwise_mult(verb.verb_vector, object));
  }
  if (!is_svo_only(method)) {
    throw std::invalid_argument(
        std::string("compose_svo: ") + std::string(method_name(method)) +
        " takes the verb vector form");
  }
  if (verb.kind != VerbRepresentation::Kind::RelationalMatrix) {
    throw std::invalid_argument(
        std::string("compose_svo: ") + std::string(method_name(method)) +
        " needs a relational verb matrix");
  }
  const Matrix& m = verb.matrix;
  switch (method) {
    case CompositionMethod::Relational:
      return SentenceRepresentation::from_matrix(
          hadamard(m, outer(subject, object)));
    case CompositionMethod::CopyObject:
      return SentenceRepresentation::from_vector(
          copy_object(m, subject, object));
    case CompositionMethod::CopySubject:
      return SentenceRepresentation::from_vector(
          copy_subject(m, subject, object));
    case CompositionMethod::FrobeniusAdd:
      return SentenceRepresentation::from_vector(
          add(copy_object(m, subject, object),
              copy_subject(m, subject, object)));
    case CompositionMethod::FrobeniusMult:
      return SentenceRepresentation::from_vector(
          pointwise_mult(copy_object(m, subject, object),
                         copy_subject(m, subject, object)));
    case CompositionMethod::FrobeniusOuter:
      return SentenceRepresentation::from_outer(
          copy_object(m, subject, object),
          copy_subject(m, subject, object));
    default:
      throw std::invalid_argument("compose_svo: unreachable method");
  }
}

SentenceRepresentation compose_svo(CompositionMethod method,
                                   const Vector& verb_vector,
                                   const Vector& subject,
                                   const Vector& object) {
  require_dim(subject.size(), object.size(), "subject/object");
  require_dim(verb_vector.size(), subject.size(), "verb/argument");
  switch (method) {
    case CompositionMethod::VerbOnly:
      return SentenceRepresentation::from_vector(verb_vector);
    case CompositionMethod::Addition:
      return SentenceRepresentation::from_vector(
          add(add(subject, verb_vector), object));
    case CompositionMethod::Multiplication:
      return SentenceRepresentation::from_vector(
          pointwise_mult(pointwise_mult(subject, verb_vector), object));
    case CompositionMethod::Kronecker:
      return SentenceRepresentation::from_outer(
          pointwise_mult(verb_vector, subject),
          pointwise_mult(verb_vector, object));
    default:
      throw std::invalid_argument(
          std::string("compose_svo: ") + std::string(method_name(method)) +
          " needs a relational verb matrix");
  }
}

std::vector<Triple> read_triples(std::istream& in) {
  std::vector<Triple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Triple t;
    std::size_t start = 0;
    std::string* fields[3] = {&t.verb, &t.subject, &t.object};
    for (std::string* field : fields) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos)
        throw DataError("triples line " + std::to_string(line_no) +
                        ": expected verb<TAB>subject<TAB>object<TAB>count");
      *field = line.substr(start, tab - start);
      if (field->empty())
        throw DataError("triples line " + std::to_string(line_no) +
                        ": empty field");
      start = tab + 1;
    }
    const char* begin = line.data() + start;
    const char* end = line.data() + line.size();
    const auto res = std::from_chars(begin, end, t.count);
    if (res.ec != std::errc() || res.ptr != end || t.count < 1)
      throw DataError("triples line " + std::to_string(line_no) +
                      ": count must be a positive integer");
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Triple> read_triples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open triples file: " + path);
  return read_triples(in);
}

RelationalLookupResult relational_from_triples(
    const std::vector<Triple>& triples, const std::string& verb,
    const SemanticSpace& space, const LookupOptions& lookup_opts) {
  RelationalLookupResult out;
  Matrix acc;
  for (const Triple& t : triples) {
    if (t.verb != verb) continue;
    const Vector* sbj = lookup(space, t.subject, lookup_opts);
    const Vector* obj = lookup(space, t.object, lookup_opts);
    if (sbj == nullptr || obj == nullptr) {
      ++out.triples_skipped;
      continue;
    }
    if (acc.rows() == 0) acc = Matrix(space.dim(), space.dim());
    const double weight = static_cast<double>(t.count);
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const double si = (*sbj)[i] * weight;
      for (std::size_t j = 0; j < space.dim(); ++j)
        acc(i, j) += si * (*obj)[j];
    }
    ++out.triples_used;
  }
  if (out.triples_used > 0) {
    VerbRepresentation rep;
    rep.kind = VerbRepresentation::Kind::RelationalMatrix;
    rep.matrix = std::move(acc);
    out.verb = std::move(rep);
  }
  return out;
}

}  // namespace compsem
