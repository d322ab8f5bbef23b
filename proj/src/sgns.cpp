#include "compsem/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "compsem/errors.hpp"
#include "compsem/parallel.hpp"

namespace compsem {

namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// ln(1 + e^x) without overflow for large |x|.
double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

void axpy(double a, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

void SgnsConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("sgns: dim must be at least 1");
  if (window < 1)
    throw std::invalid_argument("sgns: window must be at least 1");
  if (negatives < 1)
    throw std::invalid_argument("sgns: negatives must be at least 1");
  if (epochs < 1)
    throw std::invalid_argument("sgns: epochs must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw std::invalid_argument("sgns: learning rate must be positive");
  if (!std::isfinite(noise_power))
    throw std::invalid_argument("sgns: noise power must be finite");
  if (subsample < 0.0 || !std::isfinite(subsample))
    throw std::invalid_argument("sgns: subsample must be non-negative");
  if (workers < 1)
    throw std::invalid_argument("sgns: workers must be at least 1");
}

NegativeSampler::NegativeSampler(const std::vector<std::uint64_t>& counts,
                                 double power) {
  if (counts.empty())
    throw std::invalid_argument("sgns: sampler needs a non-empty vocabulary");
  cumulative_.reserve(counts.size());
  double running = 0.0;
  for (const std::uint64_t c : counts) {
    running += std::pow(static_cast<double>(c), power);
    cumulative_.push_back(running);
  }
  if (!(running > 0.0) || !std::isfinite(running))
    throw std::invalid_argument("sgns: noise weights must sum to a positive value");
}

std::size_t NegativeSampler::sample(std::mt19937_64& rng) const {
  const double u = uniform01(rng) * cumulative_.back();
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const std::size_t idx =
      static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(idx, cumulative_.size() - 1);
}

SgnsModel::SgnsModel(const TokenStream& stream, const SgnsConfig& config) {
  config.validate();
  dim_ = config.dim;
  lemmatized_ = config.lemmatized;

  std::unordered_map<std::string, std::uint64_t> tally;
  for (const Sentence& sentence : stream.sentences)
    for (const Token& token : sentence) ++tally[word_of(token, lemmatized_)];
  if (tally.empty()) throw DataError("sgns: empty token stream");

  vocab_.reserve(tally.size());
  for (const auto& [word, count] : tally) vocab_.push_back(word);
  std::sort(vocab_.begin(), vocab_.end(),
            [&](const std::string& a, const std::string& b) {
              const std::uint64_t ca = tally.at(a);
              const std::uint64_t cb = tally.at(b);
              if (ca != cb) return ca > cb;
              return a < b;
            });

  counts_.reserve(vocab_.size());
  index_.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    const std::uint64_t c = tally.at(vocab_[i]);
    counts_.push_back(c);
    total_count_ += c;
    index_.emplace(vocab_[i], i);
  }

  std::mt19937_64 rng(config.seed);
  target_.assign(vocab_.size(), Vector(dim_, 0.0));
  context_.assign(vocab_.size(), Vector(dim_, 0.0));
  const double scale = 1.0 / static_cast<double>(dim_);
  for (Vector& row : target_)
    for (double& x : row) x = (uniform01(rng) - 0.5) * scale;
}

std::optional<std::size_t> SgnsModel::index_of(const std::string& word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SemanticSpace SgnsModel::export_space() const {
  SemanticSpace space(dim_, Provenance::Neural, lemmatized_);
  for (std::size_t i = 0; i < vocab_.size(); ++i)
    space.add(vocab_[i], target_[i]);
  return space;
}

PairLoss pair_loss_at(const SgnsModel& model, std::size_t target,
                      std::size_t context,
                      const std::vector<std::size_t>& negatives) {
  const std::size_t vocab_size = model.vocab().size();
  if (target >= vocab_size || context >= vocab_size)
    throw std::invalid_argument("sgns: word index out of range");
  for (const std::size_t n : negatives)
    if (n >= vocab_size)
      throw std::invalid_argument("sgns: word index out of range");

  const Vector& vt = model.target_vector(target);
  PairLoss out;
  out.target_gradient.assign(vt.size(), 0.0);

  const auto grad_slot = [&out, &vt](std::size_t idx) -> Vector& {
    for (auto& [existing, grad] : out.context_gradients)
      if (existing == idx) return grad;
    out.context_gradients.emplace_back(idx, Vector(vt.size(), 0.0));
    return out.context_gradients.back().second;
  };

  const Vector& vc = model.context_vector(context);
  const double x = dot(vc, vt);
  out.loss = softplus(-x);
  const double g_pos = sigmoid(x) - 1.0;
  axpy(g_pos, vc, out.target_gradient);
  axpy(g_pos, vt, grad_slot(context));

  for (const std::size_t n : negatives) {
    const Vector& vn = model.context_vector(n);
    const double y = dot(vn, vt);
    out.loss += softplus(y);
    const double g_neg = sigmoid(y);
    axpy(g_neg, vn, out.target_gradient);
    axpy(g_neg, vt, grad_slot(n));
  }
  return out;
}

PairLoss pair_loss(const SgnsModel& model, const std::string& target,
                   const std::string& context,
                   const std::vector<std::string>& negatives) {
  const auto resolve = [&model](const std::string& word) {
    const auto idx = model.index_of(word);
    if (!idx.has_value())
      throw std::invalid_argument("sgns: unknown word '" + word + "'");
    return *idx;
  };
  std::vector<std::size_t> neg_indices;
  neg_indices.reserve(negatives.size());
  for (const std::string& n : negatives) neg_indices.push_back(resolve(n));
  return pair_loss_at(model, resolve(target), resolve(context), neg_indices);
}

std::vector<std::string> sample_negatives(const SgnsModel& model,
                                          double noise_power, std::size_t k,
                                          std::mt19937_64& rng) {
  const NegativeSampler sampler(model.counts(), noise_power);
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    out.push_back(model.vocab()[sampler.sample(rng)]);
  return out;
}

TrainResult train_sgns(const TokenStream& stream, const SgnsConfig& config) {
  config.validate();
  if (stream.empty()) throw DataError("sgns: empty token stream");

  SgnsModel model(stream, config);
  const NegativeSampler sampler(model.counts(), config.noise_power);

  // Sentences resolved to vocabulary indices once, up front.
  std::vector<std::vector<std::size_t>> sentences;
  sentences.reserve(stream.sentences.size());
  for (const Sentence& sentence : stream.sentences) {
    if (sentence.empty()) continue;
    std::vector<std::size_t> resolved;
    resolved.reserve(sentence.size());
    for (const Token& token : sentence)
      resolved.push_back(*model.index_of(word_of(token, config.lemmatized)));
    sentences.push_back(std::move(resolved));
  }

  const double lr0 = config.learning_rate;
  const double lr_floor = lr0 * 1e-4;
  const double total_steps = static_cast<double>(config.epochs) *
                             static_cast<double>(model.total_count());
  const auto rate_at = [&](std::uint64_t step) {
    const double frac = static_cast<double>(step) / total_steps;
    return std::max(lr_floor, lr0 * (1.0 - frac));
  };
  const double total_tokens = static_cast<double>(model.total_count());

  // Trains every in-window pair of one sentence. `next_step` advances the
  // global rate schedule and hands back the step index just consumed.
  const auto process_sentence = [&](const std::vector<std::size_t>& sentence,
                                    std::mt19937_64& rng, auto&& next_step,
                                    double& loss_sum,
                                    std::uint64_t& pair_count) {
    struct Kept {
      std::size_t word;
      std::uint64_t step;
    };
    std::vector<Kept> kept;
    kept.reserve(sentence.size());
    for (const std::size_t word : sentence) {
      const std::uint64_t step = next_step();
      if (config.subsample > 0.0) {
        const double z =
            static_cast<double>(model.counts()[word]) / total_tokens;
        const double keep =
            (std::sqrt(z / config.subsample) + 1.0) * (config.subsample / z);
        if (keep < uniform01(rng)) continue;
      }
      kept.push_back({word, step});
    }

    std::vector<std::size_t> negatives(config.negatives);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const double lr = rate_at(kept[i].step);
      const std::size_t lo = i >= config.window ? i - config.window : 0;
      const std::size_t hi =
          std::min(kept.size() - 1, i + config.window);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j == i) continue;
        for (std::size_t& n : negatives) n = sampler.sample(rng);
        const PairLoss pl =
            pair_loss_at(model, kept[i].word, kept[j].word, negatives);
        axpy(-lr, pl.target_gradient, model.target_vector(kept[i].word));
        for (const auto& [idx, grad] : pl.context_gradients)
          axpy(-lr, grad, model.context_vector(idx));
        loss_sum += pl.loss;
        ++pair_count;
      }
    }
  };

  TrainResult out;
  out.epoch_mean_loss.reserve(config.epochs);

  if (config.workers <= 1) {
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uint64_t processed = 0;
    const auto next_step = [&processed] { return processed++; };
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
      double loss_sum = 0.0;
      std::uint64_t pairs = 0;
      for (const auto& sentence : sentences)
        process_sentence(sentence, rng, next_step, loss_sum, pairs);
      out.epoch_mean_loss.push_back(pairs == 0 ? 0.0 : loss_sum / pairs);
    }
  } else {
    // Lock-free shared updates: fast, reproducible only in aggregate.
    std::atomic<std::uint64_t> processed{0};
    const auto next_step = [&processed] {
      return processed.fetch_add(1, std::memory_order_relaxed);
    };
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
      std::vector<double> shard_loss(config.workers, 0.0);
      std::vector<std::uint64_t> shard_pairs(config.workers, 0);
      parallel_shards(
          sentences.size(), config.workers,
          [&](std::size_t shard, std::size_t begin, std::size_t end) {
            std::mt19937_64 rng(config.seed ^
                                (0x9e3779b97f4a7c15ULL *
                                 (epoch * config.workers + shard + 1)));
            for (std::size_t s = begin; s < end; ++s)
              process_sentence(sentences[s], rng, next_step,
                               shard_loss[shard], shard_pairs[shard]);
          });
      double loss_sum = 0.0;
      std::uint64_t pairs = 0;
      for (std::size_t shard = 0; shard < config.workers; ++shard) {
        loss_sum += shard_loss[shard];
        pairs += shard_pairs[shard];
      }
      out.epoch_mean_loss.push_back(pairs == 0 ? 0.0 : loss_sum / pairs);
    }
  }

  out.space = model.export_space();
  return out;
}

}  // namespace compsem
