#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "compsem/composition.hpp"
#include "compsem/datasets.hpp"
#include "compsem/report.hpp"
#include "compsem/space.hpp"
#include "compsem/stats.hpp"

namespace compsem {

struct EvalOptions {
  LookupOptions lookup;
  std::size_t workers = 1;  // item-level parallelism; outputs never change
  std::string space_id = "space";
};

// Scores each unique (verb, subject, object, landmark) entry: human score is
// the mean of its annotator judgements, model score the cosine between the
// composed verb sentence and the composed landmark sentence (VerbOnly
// compares the two verb vectors directly). Items with unresolvable words are
// excluded and counted. Reports Spearman rho; throws DataError when fewer
// than two unique entries survive.
EvaluationReport eval_disambiguation(const std::vector<DisambigItem>& items,
                                     const SemanticSpace& space,
                                     CompositionMethod method,
                                     const std::vector<Triple>& triples,
                                     const EvalOptions& opts = {});

// Same scheme over pairs of SVO sentences: judgements of identical pairs are
// averaged, the model score is the cosine of the two composed
// representations.
EvaluationReport eval_sentence_similarity(
    const std::vector<SentencePairItem>& items, const SemanticSpace& space,
    CompositionMethod method, const std::vector<Triple>& triples,
    const EvalOptions& opts = {});

// Tunes a cosine threshold on the first min(2000, train size) training pairs
// by accuracy (ties to the lowest threshold, grid 0.00..1.00 step 0.01),
// then classifies the test set: cosine >= threshold means paraphrase.
// Reports threshold, dev accuracy, test accuracy and F = 2PR/(P+R).
EvaluationReport eval_paraphrase(const std::vector<ParaphrasePair>& train,
                                 const std::vector<ParaphrasePair>& test,
                                 const SemanticSpace& space,
                                 CompositionMethod method,
                                 const EvalOptions& opts = {});

// Composes utterance vectors, projects them with an SVD basis fitted on the
// training side only, and classifies each test utterance by majority vote of
// its k nearest training neighbours in Euclidean distance (vote ties go to
// the class of the nearest tied-class neighbour). Reports accuracy and the
// F-score averaged over tag classes.
EvaluationReport eval_dialogue_acts(const std::vector<Utterance>& train,
                                    const std::vector<Utterance>& test,
                                    const SemanticSpace& space,
                                    CompositionMethod method,
                                    std::size_t k = 5,
                                    std::size_t svd_dim = 50,
                                    const EvalOptions& opts = {});

// Pearson chi-square on the 2x2 correct/incorrect table of two systems,
// one degree of freedom, no continuity correction. Degenerate margins give
// p = 1.0 by convention.
ChiSquareResult chi_square_accuracy_test(std::uint64_t correct_a,
                                         std::uint64_t n_a,
                                         std::uint64_t correct_b,
                                         std::uint64_t n_b);

struct CorrelationDifference {
  double rho_a = 0.0;       // full-sample Spearman of model a
  double rho_b = 0.0;       // full-sample Spearman of model b
  double mean_delta = 0.0;  // bootstrap mean of rho_a* - rho_b*
  double p_value = 1.0;     // two-sided tail of the delta distribution
};

// Paired bootstrap over items: resamples indices with replacement,
// recomputes both correlations against the human scores, and reports the
// two-sided tail probability of the rho difference. Deterministic given the
// seed. Resamples where either correlation is undefined are discarded.
CorrelationDifference correlation_difference_test(
    const std::vector<double>& human, const std::vector<double>& model_a,
    const std::vector<double>& model_b, std::size_t iterations,
    std::uint64_t seed);

// Exhaustive k-nearest-neighbour lookup by (squared distance, index) order;
// exposed so classification can be property-checked against simple oracles.
std::vector<std::size_t> nearest_neighbours(const std::vector<Vector>& points,
                                            const Vector& query,
                                            std::size_t k);

}  // namespace compsem
