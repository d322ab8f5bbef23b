#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace compsem {

// Everything one evaluation run reports: identity, counts, metric values,
// and the per-item outcomes that significance testing consumes later.
struct EvaluationReport {
  std::string task;    // disambiguation | sentence-similarity | paraphrase |
                       // dialogue-acts
  std::string method;  // composition method name
  std::string space_id;

  std::size_t evaluated = 0;  // items scored
  std::size_t excluded = 0;   // items dropped for unresolvable words

  // Ordered metric lines (rho, accuracy, fscore, chosen hyperparameters...).
  std::vector<std::pair<std::string, double>> metrics;

  // Per-item records for correlation tasks: human mean and model score.
  struct CorrelationItem {
    std::string id;
    double human = 0.0;
    double model = 0.0;
  };
  std::vector<CorrelationItem> correlation_items;

  // Per-item records for classification tasks: 1 when predicted correctly.
  struct ClassificationItem {
    std::string id;
    int correct = 0;
  };
  std::vector<ClassificationItem> classification_items;

  bool is_correlation_task() const { return !correlation_items.empty(); }

  const double* metric(const std::string& name) const;
};

// Round-trippable decimal with a guaranteed decimal point (1 -> "1.0") so
// metric values always read as reals.
std::string format_metric(double x);

// Plain `key value` lines: task/method/space/evaluated/excluded, one line per
// metric (values always carry a decimal point so `rho 1.0` greps exactly),
// then `item <id> <human> <model>` or `outcome <id> <0|1>` per scored item.
std::string serialize_report(const EvaluationReport& report);
void write_report_file(const EvaluationReport& report,
                       const std::string& path);

// Inverse of serialize_report; throws DataError with the line number on any
// malformed line.
EvaluationReport parse_report(std::istream& in);
EvaluationReport parse_report_file(const std::string& path);

// Aligned two-column table for terminal reading.
std::string render_table(const EvaluationReport& report);

}  // namespace compsem
