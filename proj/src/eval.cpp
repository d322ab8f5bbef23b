#include "compsem/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "compsem/errors.hpp"
#include "compsem/parallel.hpp"
#include "compsem/rng.hpp"

namespace compsem {

namespace {

std::string sanitize_id(std::string id) {
  for (char& c : id)
    if (c == ' ' || c == '\t') c = '_';
  return id;
}

std::string join_id(std::initializer_list<const std::string*> parts) {
  std::string id;
  for (const std::string* part : parts) {
    if (!id.empty()) id += ':';
    id += *part;
  }
  return sanitize_id(id);
}

bool needs_relational_matrix(CompositionMethod method) {
  switch (method) {
    case CompositionMethod::Relational:
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

// Relational matrices for every requested verb, accumulated from the triple
// file in row order, resolving argument words through the space; verbs whose
// triples all miss stay absent.
class RelationalVerbTable {
 public:
  RelationalVerbTable(const std::vector<Triple>& triples,
                      const std::vector<std::string>& verbs,
                      const SemanticSpace& space, const LookupOptions& lookup_opts) {
    std::unordered_map<std::string, std::vector<const Triple*>> by_verb;
    for (const Triple& t : triples) by_verb[t.verb].push_back(&t);
    for (const std::string& verb : verbs) {
      if (reps_.count(verb) != 0) continue;
      const auto it = by_verb.find(verb);
      if (it == by_verb.end()) {
        reps_.emplace(verb, std::nullopt);
        continue;
      }
      Matrix acc(space.dim(), space.dim());
      bool any = false;
      for (const Triple* t : it->second) {
        const Vector* sbj = lookup(space, t->subject, lookup_opts);
        const Vector* obj = lookup(space, t->object, lookup_opts);
        if (sbj == nullptr || obj == nullptr) continue;
        const double weight = static_cast<double>(t->count);
        for (std::size_t i = 0; i < space.dim(); ++i) {
          const double si = (*sbj)[i] * weight;
          for (std::size_t j = 0; j < space.dim(); ++j)
            acc(i, j) += si * (*obj)[j];
        }
        any = true;
      }
      if (!any) {
        reps_.emplace(verb, std::nullopt);
        continue;
      }
      VerbRepresentation rep;
      rep.kind = VerbRepresentation::Kind::RelationalMatrix;
      rep.matrix = std::move(acc);
      reps_.emplace(verb, std::move(rep));
    }
  }

  const VerbRepresentation* find(const std::string& verb) const {
    const auto it = reps_.find(verb);
    if (it == reps_.end() || !it->second.has_value()) return nullptr;
    return &*it->second;
  }

 private:
  std::unordered_map<std::string, std::optional<VerbRepresentation>> reps_;
};

// Composes one subject-verb-object sentence; absent when any needed piece
// (word vector or verb matrix) is unresolvable.
std::optional<SentenceRepresentation> compose_svo_maybe(
    CompositionMethod method, const std::string& verb,
    const std::string& subject, const std::string& object,
    const SemanticSpace& space, const LookupOptions& lookup_opts,
    const RelationalVerbTable& verbs) {
  const Vector* s = lookup(space, subject, lookup_opts);
  const Vector* o = lookup(space, object, lookup_opts);
  if (s == nullptr || o == nullptr) return std::nullopt;
  if (needs_relational_matrix(method)) {
    const VerbRepresentation* rep = verbs.find(verb);
    if (rep == nullptr) return std::nullopt;
    return compose_svo(method, *rep, *s, *o);
  }
  const Vector* v = lookup(space, verb, lookup_opts);
  if (v == nullptr) return std::nullopt;
  return compose_svo(method, *v, *s, *o);
}

double squared_distance(const Vector& a, const Vector& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

struct BinaryCounts {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::uint64_t total() const { return tp + fp + tn + fn; }
  double accuracy() const {
    return total() == 0
               ? 0.0
               : static_cast<double>(tp + tn) / static_cast<double>(total());
  }
};

double f_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom == 0.0 ? 0.0 : 2.0 * precision * recall / denom;
}

}  // namespace

EvaluationReport eval_disambiguation(const std::vector<DisambigItem>& items,
                                     const SemanticSpace& space,
                                     CompositionMethod method,
                                     const std::vector<Triple>& triples,
                                     const EvalOptions& opts) {
  if (items.empty()) throw DataError("disambiguation: no items");

  // Unique (verb, subject, object, landmark) entries in first-appearance
  // order, averaging the judgements of duplicates.
  struct Entry {
    const DisambigItem* key;
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::string, std::size_t> entry_index;
  for (const DisambigItem& item : items) {
    const std::string key = item.verb + '\t' + item.subject + '\t' +
                            item.object + '\t' + item.landmark;
    const auto [it, inserted] = entry_index.emplace(key, entries.size());
    if (inserted) entries.push_back({&item, 0.0, 0});
    Entry& entry = entries[it->second];
    entry.sum += item.judgement;
    entry.n += 1;
  }

  std::vector<std::string> matrix_verbs;
  if (needs_relational_matrix(method)) {
    for (const Entry& e : entries) {
      matrix_verbs.push_back(e.key->verb);
      matrix_verbs.push_back(e.key->landmark);
    }
  }
  const RelationalVerbTable verb_table(triples, matrix_verbs, space,
                                       opts.lookup);

  std::vector<std::optional<double>> scores(entries.size());
  parallel_shards(
      entries.size(), opts.workers,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const DisambigItem& e = *entries[i].key;
          if (method == CompositionMethod::VerbOnly) {
            const Vector* v = lookup(space, e.verb, opts.lookup);
            const Vector* l = lookup(space, e.landmark, opts.lookup);
            if (v != nullptr && l != nullptr) scores[i] = cosine(*v, *l);
            continue;
          }
          const auto sentence = compose_svo_maybe(
              method, e.verb, e.subject, e.object, space, opts.lookup,
              verb_table);
          const auto landmark = compose_svo_maybe(
              method, e.landmark, e.subject, e.object, space, opts.lookup,
              verb_table);
          if (sentence.has_value() && landmark.has_value())
            scores[i] = cosine(*sentence, *landmark);
        }
      });

  EvaluationReport report;
  report.task = "disambiguation";
  report.method = std::string(method_name(method));
  report.space_id = opts.space_id;

  std::vector<double> humans, models;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!scores[i].has_value()) {
      ++report.excluded;
      continue;
    }
    const DisambigItem& e = *entries[i].key;
    const double human =
        entries[i].sum / static_cast<double>(entries[i].n);
    humans.push_back(human);
    models.push_back(*scores[i]);
    report.correlation_items.push_back(
        {join_id({&e.verb, &e.subject, &e.object, &e.landmark}), human,
         *scores[i]});
  }
  report.evaluated = humans.size();
  if (report.evaluated < 2)
    throw DataError(
        "disambiguation: fewer than 2 unique entries survive exclusion (" +
        std::to_string(report.evaluated) + " left, " +
        std::to_string(report.excluded) + " excluded)");

  report.metrics.emplace_back("rho", spearman(humans, models));
  return report;
}

EvaluationReport eval_sentence_similarity(
    const std::vector<SentencePairItem>& items, const SemanticSpace& space,
    CompositionMethod method, const std::vector<Triple>& triples,
    const EvalOptions& opts) {
  if (items.empty()) throw DataError("sentence similarity: no items");

  struct Entry {
    const SentencePairItem* key;
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::string, std::size_t> entry_index;
  for (const SentencePairItem& item : items) {
    const std::string key = item.sbj1 + '\t' + item.verb1 + '\t' + item.obj1 +
                            '\t' + item.sbj2 + '\t' + item.verb2 + '\t' +
                            item.obj2;
    const auto [it, inserted] = entry_index.emplace(key, entries.size());
    if (inserted) entries.push_back({&item, 0.0, 0});
    Entry& entry = entries[it->second];
    entry.sum += item.judgement;
    entry.n += 1;
  }

  std::vector<std::string> matrix_verbs;
  if (needs_relational_matrix(method)) {
    for (const Entry& e : entries) {
      matrix_verbs.push_back(e.key->verb1);
      matrix_verbs.push_back(e.key->verb2);
    }
  }
  const RelationalVerbTable verb_table(triples, matrix_verbs, space,
                                       opts.lookup);

  std::vector<std::optional<double>> scores(entries.size());
  parallel_shards(
      entries.size(), opts.workers,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const SentencePairItem& e = *entries[i].key;
          if (method == CompositionMethod::VerbOnly) {
            const Vector* v1 = lookup(space, e.verb1, opts.lookup);
            const Vector* v2 = lookup(space, e.verb2, opts.lookup);
            if (v1 != nullptr && v2 != nullptr) scores[i] = cosine(*v1, *v2);
            continue;
          }
          const auto first = compose_svo_maybe(method, e.verb1, e.sbj1,
                                               e.obj1, space, opts.lookup,
                                               verb_table);
          const auto second = compose_svo_maybe(method, e.verb2, e.sbj2,
                                                e.obj2, space, opts.lookup,
                                                verb_table);
          if (first.has_value() && second.has_value())
            scores[i] = cosine(*first, *second);
        }
      });

  EvaluationReport report;
  report.task = "sentence-similarity";
  report.method = std::string(method_name(method));
  report.space_id = opts.space_id;

  std::vector<double> humans, models;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!scores[i].has_value()) {
      ++report.excluded;
      continue;
    }
    const SentencePairItem& e = *entries[i].key;
    const double human =
        entries[i].sum / static_cast<double>(entries[i].n);
    humans.push_back(human);
    models.push_back(*scores[i]);
    report.correlation_items.push_back(
        {join_id({&e.sbj1, &e.verb1, &e.obj1, &e.sbj2, &e.verb2, &e.obj2}),
         human, *scores[i]});
  }
  report.evaluated = humans.size();
  if (report.evaluated < 2)
    throw DataError(
        "sentence similarity: fewer than 2 unique entries survive exclusion "
        "(" +
        std::to_string(report.evaluated) + " left, " +
        std::to_string(report.excluded) + " excluded)");

  report.metrics.emplace_back("rho", spearman(humans, models));
  return report;
}

EvaluationReport eval_paraphrase(const std::vector<ParaphrasePair>& train,
                                 const std::vector<ParaphrasePair>& test,
                                 const SemanticSpace& space,
                                 CompositionMethod method,
                                 const EvalOptions& opts) {
  if (method != CompositionMethod::Addition &&
      method != CompositionMethod::Multiplication)
    throw std::invalid_argument(
        std::string("paraphrase: method must be Addition or Multiplication, "
                    "got ") +
        std::string(method_name(method)));
  if (train.empty()) throw DataError("paraphrase: empty training set");
  if (test.empty()) throw DataError("paraphrase: empty test set");

  const std::size_t dev_size = std::min<std::size_t>(2000, train.size());

  const auto pair_cosine = [&](const ParaphrasePair& pair) {
    const auto first =
        compose_sequence(method, space, pair.sentence1, opts.lookup);
    const auto second =
        compose_sequence(method, space, pair.sentence2, opts.lookup);
    return cosine(first.rep, second.rep);
  };

  std::vector<double> dev_cosine(dev_size);
  std::vector<double> test_cosine(test.size());
  parallel_shards(dev_size, opts.workers,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i)
                      dev_cosine[i] = pair_cosine(train[i]);
                  });
  parallel_shards(test.size(), opts.workers,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i)
                      test_cosine[i] = pair_cosine(test[i]);
                  });

  // Threshold grid 0.00..1.00 step 0.01, selected by dev accuracy; the
  // ascending scan with a strict improvement test keeps the lowest
  // tied threshold.
  double best_threshold = 0.0;
  double best_accuracy = -1.0;
  for (int step = 0; step <= 100; ++step) {
    const double threshold = static_cast<double>(step) / 100.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < dev_size; ++i) {
      const bool predicted = dev_cosine[i] >= threshold;
      if (predicted == train[i].label) ++correct;
    }
    const double accuracy =
        static_cast<double>(correct) / static_cast<double>(dev_size);
    if (accuracy > best_accuracy) {
      best_accuracy = accuracy;
      best_threshold = threshold;
    }
  }

  EvaluationReport report;
  report.task = "paraphrase";
  report.method = std::string(method_name(method));
  report.space_id = opts.space_id;
  report.evaluated = test.size();

  BinaryCounts counts;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const bool predicted = test_cosine[i] >= best_threshold;
    const bool actual = test[i].label;
    if (predicted && actual) ++counts.tp;
    if (predicted && !actual) ++counts.fp;
    if (!predicted && actual) ++counts.fn;
    if (!predicted && !actual) ++counts.tn;
    report.classification_items.push_back(
        {std::to_string(i), predicted == actual ? 1 : 0});
  }
  const double precision =
      counts.tp + counts.fp == 0
          ? 0.0
          : static_cast<double>(counts.tp) /
                static_cast<double>(counts.tp + counts.fp);
  const double recall = counts.tp + counts.fn == 0
                            ? 0.0
                            : static_cast<double>(counts.tp) /
                                  static_cast<double>(counts.tp + counts.fn);

  report.metrics.emplace_back("threshold", best_threshold);
  report.metrics.emplace_back("dev_accuracy", best_accuracy);
  report.metrics.emplace_back("dev_pairs", static_cast<double>(dev_size));
  if (train.size() < 2000)
    report.metrics.emplace_back("dev_uses_all_train", 1.0);
  report.metrics.emplace_back("accuracy", counts.accuracy());
  report.metrics.emplace_back("precision", precision);
  report.metrics.emplace_back("recall", recall);
  report.metrics.emplace_back("fscore", f_score(precision, recall));
  return report;
}

std::vector<std::size_t> nearest_neighbours(const std::vector<Vector>& points,
                                            const Vector& query,
                                            std::size_t k) {
  k = std::min(k, points.size());
  std::vector<std::pair<double, std::size_t>> best;
  best.reserve(k + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::pair<double, std::size_t> candidate{
        squared_distance(points[i], query), i};
    if (best.size() == k && !(candidate < best.back())) continue;
    best.insert(std::upper_bound(best.begin(), best.end(), candidate),
                candidate);
    if (best.size() > k) best.pop_back();
  }
  std::vector<std::size_t> indices;
  indices.reserve(best.size());
  for (const auto& [distance, index] : best) indices.push_back(index);
  return indices;
}

EvaluationReport eval_dialogue_acts(const std::vector<Utterance>& train,
                                    const std::vector<Utterance>& test,
                                    const SemanticSpace& space,
                                    CompositionMethod method, std::size_t k,
                                    std::size_t svd_dim,
                                    const EvalOptions& opts) {
  if (train.empty()) throw DataError("dialogue acts: empty training set");
  if (test.empty()) throw DataError("dialogue acts: empty test set");
  if (k < 1) throw std::invalid_argument("dialogue acts: k must be at least 1");
  if (svd_dim < 1)
    throw std::invalid_argument(
        "dialogue acts: svd dimension must be at least 1");

  const auto compose_utterance =
      [&](const Utterance& u) -> std::optional<Vector> {
    if (u.tokens.empty()) return std::nullopt;
    return compose_sequence(method, space, u.tokens, opts.lookup).rep.vec();
  };

  // Composed vectors; utterances with no usable tokens are excluded.
  std::vector<std::optional<Vector>> train_raw(train.size());
  std::vector<std::optional<Vector>> test_raw(test.size());
  parallel_shards(train.size(), opts.workers,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i)
                      train_raw[i] = compose_utterance(train[i]);
                  });
  parallel_shards(test.size(), opts.workers,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i)
                      test_raw[i] = compose_utterance(test[i]);
                  });

  std::vector<const Utterance*> train_used;
  std::vector<Vector> train_vectors;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (!train_raw[i].has_value()) continue;
    train_used.push_back(&train[i]);
    train_vectors.push_back(std::move(*train_raw[i]));
  }
  if (train_used.empty())
    throw DataError("dialogue acts: every training utterance is empty");
  if (svd_dim > std::min(train_used.size(), space.dim()))
    throw std::invalid_argument(
        "dialogue acts: svd dimension " + std::to_string(svd_dim) +
        " exceeds min(training size " + std::to_string(train_used.size()) +
        ", space dimension " + std::to_string(space.dim()) + ")");

  // SVD basis fitted on training vectors only; both sides are projected with
  // the same right-singular basis.
  Matrix train_matrix(train_used.size(), space.dim());
  for (std::size_t i = 0; i < train_vectors.size(); ++i)
    for (std::size_t j = 0; j < space.dim(); ++j)
      train_matrix(i, j) = train_vectors[i][j];
  const SvdResult svd = truncated_svd(train_matrix, svd_dim);
  const auto project = [&](const Vector& v) { return matvec(svd.vt, v); };

  std::vector<Vector> train_proj(train_vectors.size());
  parallel_shards(train_vectors.size(), opts.workers,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i)
                      train_proj[i] = project(train_vectors[i]);
                  });

  // Classify each usable test utterance by its k nearest training vectors.
  struct Outcome {
    bool scored = false;
    std::string predicted;
  };
  std::vector<Outcome> outcomes(test.size());
  parallel_shards(
      test.size(), opts.workers,
      [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          if (!test_raw[i].has_value()) continue;
          const Vector query = project(*test_raw[i]);
          const auto neighbours = nearest_neighbours(train_proj, query, k);

          // Tallies keyed in nearest-first order of first appearance; the
          // first tally reaching the maximum vote is therefore the class of
          // the nearest neighbour among tied classes.
          std::vector<std::pair<const std::string*, int>> tallies;
          for (const std::size_t n : neighbours) {
            const std::string& tag = train_used[n]->act_tag;
            bool found = false;
            for (auto& [existing, votes] : tallies) {
              if (*existing == tag) {
                ++votes;
                found = true;
                break;
              }
            }
            if (!found) tallies.emplace_back(&tag, 1);
          }
          int best_votes = 0;
          for (const auto& [tag, votes] : tallies)
            best_votes = std::max(best_votes, votes);
          for (const auto& [tag, votes] : tallies) {
            if (votes == best_votes) {
              outcomes[i] = {true, *tag};
              break;
            }
          }
        }
      });

  EvaluationReport report;
  report.task = "dialogue-acts";
  report.method = std::string(method_name(method));
  report.space_id = opts.space_id;

  // Accuracy plus per-class F-scores averaged over the union of gold and
  // predicted tag classes.
  struct ClassCounts {
    std::uint64_t tp = 0, fp = 0, fn = 0;
  };
  std::vector<std::string> class_order;
  std::unordered_map<std::string, ClassCounts> per_class;
  const auto touch_class = [&](const std::string& tag) -> ClassCounts& {
    const auto [it, inserted] = per_class.emplace(tag, ClassCounts{});
    if (inserted) class_order.push_back(tag);
    return it->second;
  };

  std::uint64_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (!outcomes[i].scored) {
      ++report.excluded;
      continue;
    }
    ++report.evaluated;
    const std::string& gold = test[i].act_tag;
    const std::string& predicted = outcomes[i].predicted;
    const bool hit = predicted == gold;
    if (hit) {
      ++correct;
      ++touch_class(gold).tp;
    } else {
      ++touch_class(gold).fn;
      ++touch_class(predicted).fp;
    }
    report.classification_items.push_back(
        {sanitize_id(test[i].dialogue_id + ':' + test[i].turn_id),
         hit ? 1 : 0});
  }
  if (report.evaluated == 0)
    throw DataError("dialogue acts: every test utterance is empty");

  double f_sum = 0.0;
  for (const std::string& tag : class_order) {
    const ClassCounts& c = per_class.at(tag);
    const double precision =
        c.tp + c.fp == 0 ? 0.0
                         : static_cast<double>(c.tp) /
                               static_cast<double>(c.tp + c.fp);
    const double recall = c.tp + c.fn == 0
                              ? 0.0
                              : static_cast<double>(c.tp) /
                                    static_cast<double>(c.tp + c.fn);
    f_sum += f_score(precision, recall);
  }

  report.metrics.emplace_back(
      "accuracy",
      static_cast<double>(correct) / static_cast<double>(report.evaluated));
  report.metrics.emplace_back(
      "fscore", f_sum / static_cast<double>(class_order.size()));
  report.metrics.emplace_back("k", static_cast<double>(k));
  report.metrics.emplace_back("svd_dim", static_cast<double>(svd_dim));
  report.metrics.emplace_back("train_size",
                              static_cast<double>(train_used.size()));
  return report;
}

ChiSquareResult chi_square_accuracy_test(std::uint64_t correct_a,
                                         std::uint64_t n_a,
                                         std::uint64_t correct_b,
                                         std::uint64_t n_b) {
  if (n_a < 1 || n_b < 1)
    throw std::invalid_argument(
        "chi-square accuracy test: both sample sizes must be at least 1");
  return chi_square_2x2(correct_a, n_a, correct_b, n_b);
}

CorrelationDifference correlation_difference_test(
    const std::vector<double>& human, const std::vector<double>& model_a,
    const std::vector<double>& model_b, std::size_t iterations,
    std::uint64_t seed) {
  if (human.size() != model_a.size() || human.size() != model_b.size())
    throw std::invalid_argument(
        "correlation difference test: input lengths differ");
  if (human.size() < 10)
    throw std::invalid_argument(
        "correlation difference test: need at least 10 items");
  if (iterations < 1)
    throw std::invalid_argument(
        "correlation difference test: need at least 1 iteration");

  CorrelationDifference out;
  out.rho_a = spearman(human, model_a);
  out.rho_b = spearman(human, model_b);

  const std::size_t n = human.size();
  std::mt19937_64 rng(seed);
  std::vector<double> h(n), a(n), b(n);
  std::uint64_t valid = 0, non_positive = 0, non_negative = 0;
  double delta_sum = 0.0;
  for (std::size_t iter = 0; iter < iterations; ++iter) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto idx = std::min(
          n - 1, static_cast<std::size_t>(uniform01(rng) *
                                          static_cast<double>(n)));
      h[j] = human[idx];
      a[j] = model_a[idx];
      b[j] = model_b[idx];
    }
    double rho_a = 0.0, rho_b = 0.0;
    try {
      rho_a = spearman(h, a);
      rho_b = spearman(h, b);
    } catch (const NumericError&) {
      continue;  // degenerate resample: correlation undefined
    }
    ++valid;
    const double delta = rho_a - rho_b;
    delta_sum += delta;
    if (delta <= 0.0) ++non_positive;
    if (delta >= 0.0) ++non_negative;
  }
  if (valid == 0)
    throw NumericError(
        "correlation difference test: no resample produced defined "
        "correlations");

  out.mean_delta = delta_sum / static_cast<double>(valid);
  const double p_low = static_cast<double>(non_positive + 1) /
                       static_cast<double>(valid + 1);
  const double p_high = static_cast<double>(non_negative + 1) /
                        static_cast<double>(valid + 1);
  out.p_value = std::min(1.0, 2.0 * std::min(p_low, p_high));
  return out;
}

}  // namespace compsem
