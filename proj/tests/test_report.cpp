#include "compsem/report.hpp"

#include <doctest.h>

#include <sstream>
#include <string>

#include "compsem/errors.hpp"

using namespace compsem;

namespace {

EvaluationReport sample_correlation_report() {
  EvaluationReport report;
  report.task = "disambiguation";
  report.method = "CopyObject";
  report.space_id = "spaces/my space.txt";
  report.evaluated = 3;
  report.excluded = 1;
  report.metrics = {{"rho", 1.0}, {"threshold", 0.25}};
  report.correlation_items = {
      {"draw:child:picture:sketch", 5.5, 0.912},
      {"run:team:plan:execute", 3.0, 0.5},
      {"boil:chef:water:heat", 1.0, -0.125},
  };
  return report;
}

std::string parse_error(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_report(in);
  } catch (const DataError& e) {
    return e.what();
  }
  FAIL("expected a DataError for: " << text);
  return {};
}

}  // namespace

TEST_CASE("whole-valued metrics serialize with a trailing decimal") {
  EvaluationReport report;
  report.task = "paraphrase";
  report.method = "Addition";
  report.space_id = "s";
  report.evaluated = 10;
  report.metrics = {{"rho", 1.0}, {"accuracy", 1.0}, {"k", 5.0},
                    {"fscore", 0.8125}};
  const std::string text = serialize_report(report);
  CHECK(text.find("rho 1.0\n") != std::string::npos);
  CHECK(text.find("accuracy 1.0\n") != std::string::npos);
  CHECK(text.find("k 5.0\n") != std::string::npos);
  CHECK(text.find("fscore 0.8125\n") != std::string::npos);
}

TEST_CASE("reports survive a serialize/parse round trip") {
  const EvaluationReport report = sample_correlation_report();
  std::istringstream in(serialize_report(report));
  const EvaluationReport back = parse_report(in);

  CHECK(back.task == report.task);
  CHECK(back.method == report.method);
  CHECK(back.space_id == report.space_id);  // keeps its internal space
  CHECK(back.evaluated == report.evaluated);
  CHECK(back.excluded == report.excluded);
  REQUIRE(back.metrics.size() == report.metrics.size());
  for (std::size_t i = 0; i < report.metrics.size(); ++i) {
    CHECK(back.metrics[i].first == report.metrics[i].first);
    CHECK(back.metrics[i].second == doctest::Approx(report.metrics[i].second)
                                        .epsilon(1e-12));
  }
  REQUIRE(back.correlation_items.size() == 3);
  CHECK(back.correlation_items[2].id == "boil:chef:water:heat");
  CHECK(back.correlation_items[2].human == doctest::Approx(1.0));
  CHECK(back.correlation_items[2].model == doctest::Approx(-0.125));
  CHECK(back.is_correlation_task());
}

TEST_CASE("classification outcomes round trip as 0/1 flags") {
  EvaluationReport report;
  report.task = "dialogue-acts";
  report.method = "Addition";
  report.space_id = "s";
  report.evaluated = 2;
  report.metrics = {{"accuracy", 0.5}};
  report.classification_items = {{"sw1:1", 1}, {"sw1:2", 0}};

  std::istringstream in(serialize_report(report));
  const EvaluationReport back = parse_report(in);
  REQUIRE(back.classification_items.size() == 2);
  CHECK(back.classification_items[0].id == "sw1:1");
  CHECK(back.classification_items[0].correct == 1);
  CHECK(back.classification_items[1].correct == 0);
  CHECK_FALSE(back.is_correlation_task());
}

TEST_CASE("report parsing points at broken lines") {
  CHECK(parse_error("task t\nmethod m\nspace s\nevaluated x\n")
            .find("line 4") != std::string::npos);
  CHECK(parse_error("task t\nitem only-two-fields 1.0\n").find("line 2") !=
        std::string::npos);
  CHECK(parse_error("task t\noutcome id 2\n").find("outcome") !=
        std::string::npos);
  CHECK(parse_error("task t\nrho abc\n").find("expected a number") !=
        std::string::npos);
  CHECK(parse_error("method m\nrho 1.0\n").find("task") !=
        std::string::npos);
}

TEST_CASE("the table view lists counts and metrics") {
  const std::string table = render_table(sample_correlation_report());
  CHECK(table.find("disambiguation") != std::string::npos);
  CHECK(table.find("CopyObject") != std::string::npos);
  CHECK(table.find("rho") != std::string::npos);
  CHECK(table.find("evaluated") != std::string::npos);
  CHECK(table.find("excluded") != std::string::npos);
}
