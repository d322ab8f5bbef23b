#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "compsem/linalg.hpp"
#include "compsem/rng.hpp"
#include "compsem/space.hpp"
#include "compsem/token_stream.hpp"

namespace compsem {

// Skip-gram-with-negative-sampling trainer, sized for desk-scale corpora.
// Deterministic when workers == 1; workers > 1 enables lock-free shared
// updates that trade reproducibility for speed.
struct SgnsConfig {
  std::size_t dim = 50;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;  // decays linearly to 1e-4 of the initial rate
  double noise_power = 0.75;     // noise draws follow unigram^noise_power
  double subsample = 0.0;        // 0 disables frequent-word subsampling
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  bool lemmatized = false;  // train on lemmas instead of surface forms

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// Draws word indices with probability proportional to count^power.
class NegativeSampler {
 public:
  NegativeSampler(const std::vector<std::uint64_t>& counts, double power);
  std::size_t sample(std::mt19937_64& rng) const;

 private:
  std::vector<double> cumulative_;
};

// Loss and gradients for one observed (target, context) pair against a list
// of noise words. Gradients for the context table are accumulated per word
// index (a word drawn twice contributes twice to one entry).
struct PairLoss {
  double loss = 0.0;
  Vector target_gradient;
  std::vector<std::pair<std::size_t, Vector>> context_gradients;
};

// Two vector tables over a shared vocabulary. The vocabulary is ordered by
// descending count, ties broken lexicographically; target vectors start at
// small seeded uniform values and context vectors at zero.
class SgnsModel {
 public:
  SgnsModel(const TokenStream& stream, const SgnsConfig& config);

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total_count() const { return total_count_; }
  std::optional<std::size_t> index_of(const std::string& word) const;

  const Vector& target_vector(std::size_t i) const { return target_[i]; }
  Vector& target_vector(std::size_t i) { return target_[i]; }
  const Vector& context_vector(std::size_t i) const { return context_[i]; }
  Vector& context_vector(std::size_t i) { return context_[i]; }

  // The exported table: target vectors, tagged as neurally trained.
  SemanticSpace export_space() const;

 private:
  std::size_t dim_ = 0;
  bool lemmatized_ = false;
  std::vector<std::string> vocab_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_count_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Vector> target_;
  std::vector<Vector> context_;
};

// Loss −ln σ(v_c·v_t) − Σ ln σ(−v_{c'}·v_t) and its gradients. Throws
// std::invalid_argument when any word is missing from the vocabulary.
PairLoss pair_loss(const SgnsModel& model, const std::string& target,
                   const std::string& context,
                   const std::vector<std::string>& negatives);

// Index-addressed variant used by the training loop.
PairLoss pair_loss_at(const SgnsModel& model, std::size_t target,
                      std::size_t context,
                      const std::vector<std::size_t>& negatives);

// k independent draws from the model's unigram^noise_power distribution.
std::vector<std::string> sample_negatives(const SgnsModel& model,
                                          double noise_power, std::size_t k,
                                          std::mt19937_64& rng);

struct TrainResult {
  SemanticSpace space;
  std::vector<double> epoch_mean_loss;  // one entry per epoch
};

// Runs SGD over every in-window (target, context) pair of the stream for the
// configured number of epochs. Throws DataError on an empty stream.
TrainResult train_sgns(const TokenStream& stream, const SgnsConfig& config);

}  // namespace compsem
