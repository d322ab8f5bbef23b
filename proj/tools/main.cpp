// Command-line surface: builds count spaces, trains embeddings, imports
// word2vec files, runs the evaluation tasks, and compares two result
// reports. Exit codes: 0 success, 1 usage, 2 data/format error, 3 numerical
// failure.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "compsem/composition.hpp"
#include "compsem/datasets.hpp"
#include "compsem/embedding_io.hpp"
#include "compsem/errors.hpp"
#include "compsem/eval.hpp"
#include "compsem/report.hpp"
#include "compsem/sgns.hpp"
#include "compsem/space.hpp"
#include "compsem/space_builder.hpp"
#include "compsem/token_stream.hpp"

namespace {

using namespace compsem;

struct BuildSpaceArgs {
  std::string corpus;
  std::string output;
  std::string weighting = "ppmi";
  std::size_t window = 5;
  std::size_t basis_size = 2000;
  std::vector<std::string> basis_pos;
  std::string stopwords;
  std::size_t skip_top = 0;
  std::size_t svd_dim = 0;  // 0 keeps the full weighted space
  bool normalize = false;
  bool lemmatized = false;
  std::size_t workers = 1;
};

struct TrainSgnsArgs {
  std::string corpus;
  std::string output;
  SgnsConfig config;
};

struct ImportArgs {
  std::string input;
  std::string output;
  std::string input_format = "word2vec-binary";
};

struct EvalArgs {
  std::string task;
  std::string space_path;
  std::string space_format = "text";
  std::string method;
  std::string data;
  std::string triples;
  std::string train;
  std::string test;
  std::string train_ids;
  std::string test_ids;
  std::string lemma_map;
  std::string output;
  bool case_fold = false;
  std::size_t k = 5;
  std::size_t svd_dim = 50;
  std::size_t workers = 1;
};

struct CompareArgs {
  std::string report_a;
  std::string report_b;
  std::size_t iterations = 10000;
  std::uint64_t seed = 1;
};

SpaceFormat parse_space_format(const std::string& name) {
  if (name == "text") return SpaceFormat::Text;
  if (name == "word2vec-binary") return SpaceFormat::Word2vecBinary;
  throw std::invalid_argument("unknown space format '" + name + "'");
}

std::unordered_set<std::string> read_word_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stop-word file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.insert(line);
  }
  return words;
}

int run_build_space(const BuildSpaceArgs& args) {
  const TokenStream stream = read_token_stream_file(args.corpus);
  if (stream.empty())
    throw DataError("build-space: empty stream (no tokens in " + args.corpus +
                    ")");

  BasisSpec spec;
  spec.size = args.basis_size;
  spec.skip_top = args.skip_top;
  for (const std::string& tag : args.basis_pos)
    spec.pos_filter.insert(parse_pos(tag));
  if (!args.stopwords.empty()) spec.stop_words = read_word_set(args.stopwords);

  const std::vector<std::string> contexts =
      select_basis(stream, spec, args.lemmatized);
  const std::vector<std::string> targets =
      all_words_by_frequency(stream, args.lemmatized);
  const CooccurrenceMatrix counts = count_cooccurrences(
      stream, targets, contexts, args.window, args.lemmatized, args.workers);

  SemanticSpace space =
      args.weighting == "lmi" ? weight_lmi(counts) : weight_ppmi(counts);
  if (args.svd_dim > 0)
    space = project_space(space, args.svd_dim, args.normalize);

  write_text_file(space, args.output);
  std::cout << "vocab " << space.words().size() << "\n"
            << "dim " << space.dim() << "\n"
            << "recipe weighting=" << args.weighting
            << " window=" << args.window << " basis=" << contexts.size()
            << " skip-top=" << args.skip_top << " svd="
            << (args.svd_dim > 0 ? std::to_string(args.svd_dim)
                                 : std::string("none"))
            << " normalize=" << (args.normalize ? "yes" : "no")
            << " lemmatized=" << (args.lemmatized ? "yes" : "no") << "\n"
            << "space written: " << args.output << "\n";
  return 0;
}

int run_train_sgns(const TrainSgnsArgs& args) {
  const TokenStream stream = read_token_stream_file(args.corpus);
  if (stream.empty())
    throw DataError("train-sgns: empty stream (no tokens in " + args.corpus +
                    ")");

  const TrainResult result = train_sgns(stream, args.config);
  write_text_file(result.space, args.output);
  std::cout << "vocab " << result.space.words().size() << "\n"
            << "dim " << result.space.dim() << "\n"
            << "epochs " << result.epoch_mean_loss.size() << "\n";
  if (!result.epoch_mean_loss.empty())
    std::cout << "final_epoch_loss "
              << format_metric(result.epoch_mean_loss.back()) << "\n";
  std::cout << "space written: " << args.output << "\n";
  return 0;
}

int run_import(const ImportArgs& args) {
  const SemanticSpace space =
      read_space_file(args.input, parse_space_format(args.input_format));
  write_text_file(space, args.output);
  std::cout << "vocab " << space.words().size() << "\n"
            << "dim " << space.dim() << "\n"
            << "space written: " << args.output << "\n";
  return 0;
}

// Usage errors (missing task-required flags) surface as CLI validation
// failures so they exit 1 like any other bad invocation.
[[noreturn]] void require_flag(const std::string& what) {
  throw CLI::ValidationError("eval", what);
}

int run_eval(const EvalArgs& args) {
  const CompositionMethod method = parse_method(args.method);

  EvalOptions opts;
  opts.workers = args.workers;
  opts.space_id = args.space_path;
  LemmaMap lemma_map;
  if (!args.lemma_map.empty()) {
    lemma_map = read_lemma_map_file(args.lemma_map);
    opts.lookup.lemma_map = &lemma_map;
  }
  opts.lookup.case_fold = args.case_fold;

  const bool needs_triples = is_svo_only(method) &&
                             method != CompositionMethod::Kronecker;
  const bool svo_task =
      args.task == "disambiguation" || args.task == "sentence-similarity";
  if (svo_task && args.data.empty())
    require_flag("--data is required for task " + args.task);
  if (svo_task && needs_triples && args.triples.empty())
    require_flag("--triples is required for method " + args.method);
  if (args.task == "paraphrase" && (args.train.empty() || args.test.empty()))
    require_flag("--train and --test are required for task paraphrase");
  if (args.task == "dialogue-acts" &&
      (args.data.empty() || args.train_ids.empty() || args.test_ids.empty()))
    require_flag(
        "--data, --train-ids and --test-ids are required for task "
        "dialogue-acts");

  const SemanticSpace space =
      read_space_file(args.space_path, parse_space_format(args.space_format));

  std::vector<Triple> triples;
  if (!args.triples.empty()) triples = read_triples_file(args.triples);

  EvaluationReport report;
  if (args.task == "disambiguation") {
    report = eval_disambiguation(read_disambig_file(args.data), space, method,
                                 triples, opts);
  } else if (args.task == "sentence-similarity") {
    report = eval_sentence_similarity(read_sentence_pairs_file(args.data),
                                      space, method, triples, opts);
  } else if (args.task == "paraphrase") {
    report = eval_paraphrase(read_paraphrase_file(args.train),
                             read_paraphrase_file(args.test), space, method,
                             opts);
  } else {
    const std::vector<Utterance> utterances =
        assemble_utterances(read_dialogue_csv_file(args.data));
    const std::vector<Utterance> train =
        filter_by_dialogue(utterances, read_id_list_file(args.train_ids));
    const std::vector<Utterance> test =
        filter_by_dialogue(utterances, read_id_list_file(args.test_ids));
    report = eval_dialogue_acts(train, test, space, method, args.k,
                                args.svd_dim, opts);
  }

  if (!args.output.empty()) {
    write_report_file(report, args.output);
    std::cout << "report written: " << args.output << "\n";
  }
  std::cout << render_table(report);
  return 0;
}

void print_verdict(double p) {
  std::cout << "p " << format_metric(p) << "\n"
            << (p < 0.05 ? "significant (p < 0.05)"
                         : "not significant (p >= 0.05)")
            << "\n";
}

int run_compare(const CompareArgs& args) {
  const EvaluationReport a = parse_report_file(args.report_a);
  const EvaluationReport b = parse_report_file(args.report_b);
  if (a.task != b.task)
    throw DataError("compare: reports are for different tasks: '" + a.task +
                    "' vs '" + b.task + "'");
  if (a.is_correlation_task() != b.is_correlation_task())
    throw DataError(
        "compare: one report carries correlation items, the other "
        "classification outcomes");

  std::cout << "task " << a.task << "\n"
            << "method_a " << a.method << "\n"
            << "method_b " << b.method << "\n";

  if (a.is_correlation_task()) {
    std::unordered_map<std::string, double> b_model;
    for (const auto& item : b.correlation_items)
      b_model.emplace(item.id, item.model);
    std::vector<double> human;
    std::vector<double> model_a;
    std::vector<double> model_b;
    for (const auto& item : a.correlation_items) {
      const auto it = b_model.find(item.id);
      if (it == b_model.end()) continue;
      human.push_back(item.human);
      model_a.push_back(item.model);
      model_b.push_back(it->second);
    }
    if (human.empty())
      throw DataError("compare: the reports share no item ids");

    const CorrelationDifference result = correlation_difference_test(
        human, model_a, model_b, args.iterations, args.seed);
    std::cout << "comparison bootstrap-spearman\n"
              << "items " << human.size() << "\n"
              << "rho_a " << format_metric(result.rho_a) << "\n"
              << "rho_b " << format_metric(result.rho_b) << "\n"
              << "mean_delta " << format_metric(result.mean_delta) << "\n";
    print_verdict(result.p_value);
    return 0;
  }

  if (a.classification_items.empty() || b.classification_items.empty())
    throw DataError("compare: a report carries no per-item outcomes");
  std::uint64_t correct_a = 0;
  std::uint64_t correct_b = 0;
  for (const auto& item : a.classification_items) correct_a += item.correct;
  for (const auto& item : b.classification_items) correct_b += item.correct;
  const std::uint64_t n_a = a.classification_items.size();
  const std::uint64_t n_b = b.classification_items.size();

  const ChiSquareResult result =
      chi_square_accuracy_test(correct_a, n_a, correct_b, n_b);
  std::cout << "comparison chi-square-accuracy\n"
            << "correct_a " << correct_a << "\n"
            << "n_a " << n_a << "\n"
            << "correct_b " << correct_b << "\n"
            << "n_b " << n_b << "\n"
            << "statistic " << format_metric(result.statistic) << "\n";
  print_verdict(result.p_value);
  return 0;
}

// Flat `key = value` config lines; '#' starts a comment, keys mirror the
// subcommand's long option names, and explicit flags override the file.
std::vector<std::pair<std::string, std::string>> read_config_pairs(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  const auto trim = [](std::string s) {
    const std::size_t first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return std::string();
    const std::size_t last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(line_no) +
                      ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw DataError("config line " + std::to_string(line_no) +
                      ": empty key");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

// Splices `--key=value` arguments from a --config file right after the
// subcommand name so explicit command-line flags take precedence.
std::vector<std::string> inject_config(int argc, char** argv,
                                       const CLI::App& app) {
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() < 2) return args;
  const CLI::App* sub = nullptr;
  for (const CLI::App* candidate : app.get_subcommands(nullptr))
    if (candidate->get_name() == args[1]) sub = candidate;
  if (sub == nullptr) return args;

  std::string config_path;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config_pairs(config_path)) {
    if (sub->get_option_no_throw("--" + key) == nullptr)
      throw CLI::ValidationError(
          "--config", "unknown key '" + key + "' for " + sub->get_name());
    injected.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + 2, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compositional distributional semantics toolkit"};
  app.require_subcommand(1);

  // Applied to every option so a config-file value followed by an explicit
  // flag resolves to the flag.
  const auto last = [](CLI::Option* opt) { return opt->take_last(); };

  BuildSpaceArgs build;
  CLI::App* build_cmd = app.add_subcommand(
      "build-space", "count co-occurrences and weight them into a space");
  last(build_cmd->add_option("--corpus", build.corpus,
                             "token stream file (surface<TAB>lemma<TAB>pos)")
           ->required());
  last(build_cmd->add_option("--output", build.output, "space file to write")
           ->required());
  last(build_cmd
           ->add_option("--weighting", build.weighting,
                        "association weighting")
           ->check(CLI::IsMember({"ppmi", "lmi"})));
  last(build_cmd->add_option("--window", build.window,
                             "co-occurrence window size"));
  last(build_cmd->add_option("--basis-size", build.basis_size,
                             "number of context dimensions"));
  last(build_cmd
           ->add_option("--basis-pos", build.basis_pos,
                        "restrict context words to these POS tags")
           ->delimiter(',')
           ->check(CLI::IsMember({"NOUN", "VERB", "ADJ", "ADV"})));
  last(build_cmd->add_option("--stopwords", build.stopwords,
                             "file of words to exclude from the basis"));
  last(build_cmd->add_option("--skip-top", build.skip_top,
                             "skip this many most-frequent basis candidates"));
  last(build_cmd->add_option("--svd-dim", build.svd_dim,
                             "reduce to this many dimensions (0 = keep all)"));
  last(build_cmd->add_flag("--normalize", build.normalize,
                           "L2-normalize rows before the SVD"));
  last(build_cmd->add_flag("--lemmatized", build.lemmatized,
                           "count lemmas instead of surface forms"));
  last(build_cmd->add_option("--workers", build.workers, "counting threads")
           ->check(CLI::PositiveNumber));

  TrainSgnsArgs train;
  CLI::App* train_cmd = app.add_subcommand(
      "train-sgns", "train skip-gram negative-sampling embeddings");
  last(train_cmd->add_option("--corpus", train.corpus, "token stream file")
           ->required());
  last(train_cmd->add_option("--output", train.output, "space file to write")
           ->required());
  last(train_cmd->add_option("--dim", train.config.dim, "embedding width"));
  last(train_cmd->add_option("--window", train.config.window,
                             "context window size"));
  last(train_cmd->add_option("--negatives", train.config.negatives,
                             "noise samples per observed pair"));
  last(train_cmd->add_option("--epochs", train.config.epochs,
                             "passes over the corpus"));
  last(train_cmd->add_option("--learning-rate", train.config.learning_rate,
                             "initial learning rate"));
  last(train_cmd->add_option("--noise-power", train.config.noise_power,
                             "unigram distribution exponent"));
  last(train_cmd->add_option("--subsample", train.config.subsample,
                             "frequent-word subsampling threshold (0 = off)"));
  last(train_cmd->add_flag("--lemmatized", train.config.lemmatized,
                           "train on lemmas instead of surface forms"));
  last(train_cmd->add_option("--seed", train.config.seed, "RNG seed"));
  last(train_cmd
           ->add_option("--workers", train.config.workers,
                        "training threads (>1 is non-deterministic)")
           ->check(CLI::PositiveNumber));

  ImportArgs import_args;
  CLI::App* import_cmd = app.add_subcommand(
      "import-embeddings", "convert an embedding file to the text format");
  last(import_cmd->add_option("--input", import_args.input, "embedding file")
           ->required());
  last(import_cmd
           ->add_option("--output", import_args.output, "space file to write")
           ->required());
  last(import_cmd
           ->add_option("--input-format", import_args.input_format,
                        "input encoding")
           ->check(CLI::IsMember({"word2vec-binary", "text"})));

  EvalArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "run one evaluation task and report");
  last(eval_cmd->add_option("--task", eval_args.task, "evaluation task")
           ->required()
           ->check(CLI::IsMember({"disambiguation", "sentence-similarity",
                                  "paraphrase", "dialogue-acts"})));
  last(eval_cmd->add_option("--space", eval_args.space_path, "space file")
           ->required());
  last(eval_cmd
           ->add_option("--space-format", eval_args.space_format,
                        "space file encoding")
           ->check(CLI::IsMember({"text", "word2vec-binary"})));
  last(eval_cmd->add_option("--method", eval_args.method,
                            "composition method")
           ->required()
           ->check(CLI::IsMember(composition_method_names())));
  last(eval_cmd->add_option("--data", eval_args.data,
                            "dataset file (disambiguation, "
                            "sentence-similarity, dialogue-acts CSV)"));
  last(eval_cmd->add_option("--triples", eval_args.triples,
                            "verb argument triples for matrix methods"));
  last(eval_cmd->add_option("--train", eval_args.train,
                            "paraphrase training pairs"));
  last(eval_cmd->add_option("--test", eval_args.test,
                            "paraphrase test pairs"));
  last(eval_cmd->add_option("--train-ids", eval_args.train_ids,
                            "dialogue ids forming the training split"));
  last(eval_cmd->add_option("--test-ids", eval_args.test_ids,
                            "dialogue ids forming the test split"));
  last(eval_cmd->add_option("--lemma-map", eval_args.lemma_map,
                            "surface<TAB>lemma fallback map"));
  last(eval_cmd->add_flag("--case-fold", eval_args.case_fold,
                          "lowercase lookups that miss"));
  last(eval_cmd->add_option("--k", eval_args.k,
                            "neighbours for dialogue-act voting"));
  last(eval_cmd->add_option("--svd-dim", eval_args.svd_dim,
                            "projection size for dialogue-act vectors"));
  last(eval_cmd->add_option("--output", eval_args.output,
                            "write the machine-readable report here"));
  last(eval_cmd->add_option("--workers", eval_args.workers,
                            "scoring threads (outputs are identical)")
           ->check(CLI::PositiveNumber));

  CompareArgs compare;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "significance test between two eval reports");
  last(compare_cmd
           ->add_option("report_a", compare.report_a, "first report file")
           ->required());
  last(compare_cmd
           ->add_option("report_b", compare.report_b, "second report file")
           ->required());
  last(compare_cmd->add_option("--iterations", compare.iterations,
                               "bootstrap resamples")
           ->check(CLI::PositiveNumber));
  last(compare_cmd->add_option("--seed", compare.seed, "bootstrap RNG seed"));

  // Every subcommand accepts a config file whose keys mirror its options.
  std::string config_path;
  for (CLI::App* sub :
       {build_cmd, train_cmd, import_cmd, eval_cmd, compare_cmd})
    last(sub->add_option("--config", config_path,
                         "flat key = value option file"));

  try {
    const std::vector<std::string> args = inject_config(argc, argv, app);
    std::vector<const char*> argv2;
    argv2.reserve(args.size());
    for (const std::string& arg : args) argv2.push_back(arg.c_str());
    app.parse(static_cast<int>(argv2.size()), argv2.data());

    if (app.got_subcommand(build_cmd)) return run_build_space(build);
    if (app.got_subcommand(train_cmd)) return run_train_sgns(train);
    if (app.got_subcommand(import_cmd)) return run_import(import_args);
    if (app.got_subcommand(eval_cmd)) return run_eval(eval_args);
    return run_compare(compare);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
