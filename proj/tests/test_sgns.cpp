#include "compsem/sgns.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "compsem/errors.hpp"
#include "oracles.hpp"

using namespace compsem;

namespace {

TokenStream make_stream(const std::vector<std::vector<std::string>>& text) {
  TokenStream stream;
  for (const auto& words : text) {
    Sentence sentence;
    for (const auto& w : words) sentence.push_back(Token{w, "", Pos::Other});
    stream.sentences.push_back(std::move(sentence));
  }
  return stream;
}

SgnsConfig small_config(std::size_t dim = 4) {
  SgnsConfig config;
  config.dim = dim;
  config.window = 2;
  config.negatives = 3;
  config.epochs = 2;
  config.seed = 7;
  return config;
}

// Central finite differences of the pair loss with respect to one vector,
// run through the public loss route only.
Vector fd_gradient(SgnsModel& model, Vector& parameter,
                   const std::string& target, const std::string& context,
                   const std::vector<std::string>& negatives, double h) {
  Vector grad(parameter.size(), 0.0);
  for (std::size_t d = 0; d < parameter.size(); ++d) {
    const double saved = parameter[d];
    parameter[d] = saved + h;
    const double up = pair_loss(model, target, context, negatives).loss;
    parameter[d] = saved - h;
    const double down = pair_loss(model, target, context, negatives).loss;
    parameter[d] = saved;
    grad[d] = (up - down) / (2.0 * h);
  }
  return grad;
}

double relative_error(const Vector& a, const Vector& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
  return std::sqrt(diff) / scale;
}

}  // namespace

TEST_CASE("sgns config validation rejects out-of-range fields") {
  SgnsConfig ok = small_config();
  CHECK_NOTHROW(ok.validate());

  SgnsConfig bad = ok;
  bad.dim = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.window = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.negatives = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.epochs = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.learning_rate = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.learning_rate = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.subsample = -1e-5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.workers = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sgns vocabulary orders by count then lexicographically") {
  const auto stream = make_stream({{"pear", "apple", "apple", "fig"},
                                   {"fig", "apple", "pear", "kiwi"}});
  const SgnsModel model(stream, small_config());
  CHECK(model.vocab() ==
        std::vector<std::string>{"apple", "fig", "pear", "kiwi"});
  CHECK(model.counts() == std::vector<std::uint64_t>{3, 2, 2, 1});
  CHECK(model.total_count() == 8);
  CHECK(model.index_of("fig") == std::size_t{1});
  CHECK_FALSE(model.index_of("mango").has_value());

  const SemanticSpace space = model.export_space();
  CHECK(space.provenance() == Provenance::Neural);
  CHECK(space.size() == 4);
  CHECK(space.dim() == 4);
  CHECK(space.words().front() == "apple");
}

TEST_CASE("sgns context vectors start at zero and targets near zero") {
  const auto stream = make_stream({{"a", "b", "a"}});
  const SgnsModel model(stream, small_config());
  for (std::size_t i = 0; i < model.vocab().size(); ++i) {
    CHECK(model.context_vector(i) == Vector(4, 0.0));
    for (const double x : model.target_vector(i)) {
      CHECK(x >= -0.5 / 4.0);
      CHECK(x < 0.5 / 4.0);
    }
  }
}

TEST_CASE("pair loss on all-zero vectors is (k+1) ln 2") {
  const auto stream = make_stream({{"a", "b", "c", "d"}});
  SgnsModel model(stream, small_config());
  for (std::size_t i = 0; i < model.vocab().size(); ++i)
    model.target_vector(i).assign(model.dim(), 0.0);

  const auto result = pair_loss(model, "a", "b", {"c", "d", "c"});
  CHECK(oracles::close(result.loss, 4.0 * std::log(2.0), 1e-14));

  const auto more = pair_loss(model, "a", "b", {"c", "d", "c", "d", "a"});
  CHECK(oracles::close(more.loss, 6.0 * std::log(2.0), 1e-14));
}

TEST_CASE("pair loss saturates once the observed dot product is large") {
  const auto stream = make_stream({{"a", "b", "c", "d"}});
  SgnsModel model(stream, small_config());
  for (std::size_t i = 0; i < model.vocab().size(); ++i)
    model.target_vector(i).assign(model.dim(), 0.0);
  model.target_vector(*model.index_of("a")) = {20.0, 0.0, 0.0, 0.0};
  model.context_vector(*model.index_of("b")) = {1.0, 0.0, 0.0, 0.0};

  // Observed term vanishes; the three zero-vector noise terms remain.
  const auto result = pair_loss(model, "a", "b", {"c", "d", "c"});
  CHECK(oracles::close(result.loss, 3.0 * std::log(2.0), 1e-8));
}

TEST_CASE("pair loss rejects words outside the vocabulary") {
  const auto stream = make_stream({{"a", "b", "c"}});
  const SgnsModel model(stream, small_config());
  CHECK_THROWS_AS(pair_loss(model, "zzz", "b", {"c"}), std::invalid_argument);
  CHECK_THROWS_AS(pair_loss(model, "a", "zzz", {"c"}), std::invalid_argument);
  CHECK_THROWS_AS(pair_loss(model, "a", "b", {"zzz"}), std::invalid_argument);
}

TEST_CASE("pair loss stays non-negative at random points") {
  const auto stream = make_stream({{"a", "b", "c", "d", "e"}});
  SgnsModel model(stream, small_config());
  oracles::TestRng rng(0x105505ULL);
  for (int iter = 0; iter < 200; ++iter) {
    for (std::size_t i = 0; i < model.vocab().size(); ++i) {
      for (double& x : model.target_vector(i)) x = 3.0 * rng.symmetric();
      for (double& x : model.context_vector(i)) x = 3.0 * rng.symmetric();
    }
    const auto result = pair_loss(model, "a", "b", {"c", "d", "e"});
    CHECK(result.loss >= 0.0);
  }
}

TEST_CASE("analytic gradients match central finite differences") {
  const auto stream = make_stream({{"a", "b", "c", "d", "e", "f"}});
  SgnsModel model(stream, small_config());
  oracles::TestRng rng(0x93adULL);
  constexpr double kStep = 1e-5;
  constexpr double kTol = 1e-5;

  const std::vector<std::vector<std::string>> negative_sets{
      {"c", "d", "e"},  // distinct noise words
      {"c", "c", "d"},  // repeated noise word accumulates
      {"b", "c", "d"},  // noise word equal to the observed context
  };

  for (int iter = 0; iter < 100; ++iter) {
    for (std::size_t i = 0; i < model.vocab().size(); ++i) {
      for (double& x : model.target_vector(i)) x = rng.symmetric();
      for (double& x : model.context_vector(i)) x = rng.symmetric();
    }
    const auto& negatives =
        negative_sets[static_cast<std::size_t>(iter) % negative_sets.size()];
    const auto analytic = pair_loss(model, "a", "b", negatives);

    const Vector fd_target = fd_gradient(
        model, model.target_vector(*model.index_of("a")), "a", "b",
        negatives, kStep);
    CHECK(relative_error(analytic.target_gradient, fd_target) < kTol);

    for (const auto& [index, grad] : analytic.context_gradients) {
      const Vector fd_ctx = fd_gradient(model, model.context_vector(index),
                                        "a", "b", negatives, kStep);
      CHECK(relative_error(grad, fd_ctx) < kTol);
    }
  }
}

TEST_CASE("a single-word vocabulary is the only possible noise draw") {
  const auto stream = make_stream({{"solo", "solo", "solo"}});
  const SgnsModel model(stream, small_config());
  std::mt19937_64 rng(11);
  const auto draws = sample_negatives(model, 0.75, 6, rng);
  CHECK(draws == std::vector<std::string>(6, "solo"));
}

TEST_CASE("uniform counts stay uniform under the 0.75 power") {
  std::vector<std::uint64_t> counts(5, 40);
  const NegativeSampler sampler(counts, 0.75);
  std::mt19937_64 rng(99);
  constexpr int kDraws = 100000;
  std::vector<int> seen(counts.size(), 0);
  for (int i = 0; i < kDraws; ++i) ++seen[sampler.sample(rng)];

  const double p = 1.0 / static_cast<double>(counts.size());
  const double mean = kDraws * p;
  const double sigma = std::sqrt(kDraws * p * (1.0 - p));
  for (const int observed : seen) {
    CHECK(std::abs(observed - mean) <= 3.0 * sigma);
  }
}

TEST_CASE("a 9:1 count ratio at power one yields 0.9 draw frequency") {
  const NegativeSampler sampler({9, 1}, 1.0);
  std::mt19937_64 rng(123);
  constexpr int kDraws = 100000;
  int first = 0;
  for (int i = 0; i < kDraws; ++i)
    if (sampler.sample(rng) == 0) ++first;

  const double mean = kDraws * 0.9;
  const double sigma = std::sqrt(kDraws * 0.9 * 0.1);
  CHECK(std::abs(first - mean) <= 3.0 * sigma);
}

TEST_CASE("sampler rejects an empty vocabulary") {
  CHECK_THROWS_AS(NegativeSampler({}, 0.75), std::invalid_argument);
}

TEST_CASE("training twice with one seed reproduces the space bit for bit") {
  const auto stream = make_stream({
      {"red", "green", "blue", "red"},
      {"green", "blue", "red", "green"},
      {"blue", "red", "green", "blue"},
  });
  SgnsConfig config = small_config();
  config.epochs = 3;

  const TrainResult first = train_sgns(stream, config);
  const TrainResult second = train_sgns(stream, config);
  REQUIRE(first.space.size() == second.space.size());
  for (std::size_t i = 0; i < first.space.size(); ++i) {
    CHECK(first.space.words()[i] == second.space.words()[i]);
    CHECK(first.space.vector_at(i) == second.space.vector_at(i));
  }
  CHECK(first.epoch_mean_loss == second.epoch_mean_loss);

  SgnsConfig reseeded = config;
  reseeded.seed = config.seed + 1;
  const TrainResult third = train_sgns(stream, reseeded);
  bool any_difference = false;
  for (std::size_t i = 0; i < first.space.size(); ++i)
    if (first.space.vector_at(i) != third.space.vector_at(i))
      any_difference = true;
  CHECK(any_difference);
}

TEST_CASE("training rejects an empty stream") {
  CHECK_THROWS_AS(train_sgns(TokenStream{}, small_config()), DataError);
  try {
    train_sgns(TokenStream{}, small_config());
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("empty") != std::string::npos);
  }
}

TEST_CASE("two disjoint word clusters separate in the trained space") {
  // Interchangeable words in disjoint contexts: sentences draw from one
  // cluster only, so within-cluster words share contexts and cross-cluster
  // words never meet.
  const std::vector<std::string> cluster_a{"ant", "bee", "fly", "moth"};
  const std::vector<std::string> cluster_b{"oak", "elm", "ash", "fir"};
  oracles::TestRng rng(0x2c1ULL);
  std::vector<std::vector<std::string>> text;
  for (int s = 0; s < 160; ++s) {
    const auto& cluster = (s % 2 == 0) ? cluster_a : cluster_b;
    std::vector<std::string> sentence;
    for (int w = 0; w < 6; ++w)
      sentence.push_back(cluster[rng.next() % cluster.size()]);
    text.push_back(std::move(sentence));
  }

  SgnsConfig config;
  config.dim = 8;
  config.window = 3;
  config.negatives = 4;
  config.epochs = 12;
  config.learning_rate = 0.05;
  config.seed = 17;
  const TrainResult result = train_sgns(make_stream(text), config);

  const auto mean_cosine = [&](const std::vector<std::string>& left,
                               const std::vector<std::string>& right,
                               bool same_side) {
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (std::size_t j = same_side ? i + 1 : 0; j < right.size(); ++j) {
        sum += cosine(*result.space.find(left[i]),
                      *result.space.find(right[j]));
        ++n;
      }
    }
    return sum / n;
  };

  const double within = (mean_cosine(cluster_a, cluster_a, true) +
                         mean_cosine(cluster_b, cluster_b, true)) /
                        2.0;
  const double cross = mean_cosine(cluster_a, cluster_b, false);
  CHECK(within > cross);
}

TEST_CASE("epoch losses do not end above where they started") {
  const auto stream = make_stream({
      {"sun", "moon", "star", "sun", "moon"},
      {"star", "sun", "moon", "star"},
      {"moon", "star", "sun", "moon", "star", "sun"},
  });
  SgnsConfig config = small_config();
  config.epochs = 8;
  config.learning_rate = 0.05;
  const TrainResult result = train_sgns(stream, config);
  REQUIRE(result.epoch_mean_loss.size() == 8);
  CHECK(result.epoch_mean_loss.back() <= result.epoch_mean_loss.front());
  for (const double loss : result.epoch_mean_loss) CHECK(loss >= 0.0);
}

TEST_CASE("parallel training produces a usable space of the same shape") {
  const auto stream = make_stream({
      {"red", "green", "blue", "red"},
      {"green", "blue", "red", "green"},
      {"blue", "red", "green", "blue"},
      {"red", "blue", "green", "red"},
  });
  SgnsConfig config = small_config();
  config.workers = 3;
  const TrainResult result = train_sgns(stream, config);
  CHECK(result.space.size() == 3);
  CHECK(result.space.dim() == config.dim);
  CHECK(result.epoch_mean_loss.size() == config.epochs);
  for (const double loss : result.epoch_mean_loss) CHECK(loss >= 0.0);
}

TEST_CASE("lemmatized training collapses inflected forms") {
  TokenStream stream;
  Sentence s;
  s.push_back(Token{"dogs", "dog", Pos::Noun});
  s.push_back(Token{"ran", "run", Pos::Verb});
  s.push_back(Token{"dog", "dog", Pos::Noun});
  stream.sentences.push_back(s);

  SgnsConfig config = small_config();
  config.lemmatized = true;
  const SgnsModel model(stream, config);
  CHECK(model.vocab() == std::vector<std::string>{"dog", "run"});
  CHECK(model.counts() == std::vector<std::uint64_t>{2, 1});
  CHECK(model.export_space().lemmatized());
}
