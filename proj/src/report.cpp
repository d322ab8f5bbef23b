#include "compsem/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "compsem/embedding_io.hpp"
#include "compsem/errors.hpp"

namespace compsem {

std::string format_metric(double x) {
  std::string s = format_double(x);
  if (s.find('.') == std::string::npos &&
      s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos &&
      s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

namespace {

double parse_real(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw DataError("report line " + std::to_string(line_no) +
                    ": expected a number, got '" + text + "'");
  return value;
}

std::size_t parse_count(const std::string& text, std::size_t line_no) {
  std::size_t value = 0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw DataError("report line " + std::to_string(line_no) +
                    ": expected a count, got '" + text + "'");
  return value;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(std::move(field));
  return fields;
}

}  // namespace

const double* EvaluationReport::metric(const std::string& name) const {
  for (const auto& [key, value] : metrics)
    if (key == name) return &value;
  return nullptr;
}

std::string serialize_report(const EvaluationReport& report) {
  std::ostringstream out;
  out << "task " << report.task << '\n';
  out << "method " << report.method << '\n';
  out << "space " << report.space_id << '\n';
  out << "evaluated " << report.evaluated << '\n';
  out << "excluded " << report.excluded << '\n';
  for (const auto& [key, value] : report.metrics)
    out << key << ' ' << format_metric(value) << '\n';
  for (const auto& item : report.correlation_items)
    out << "item " << item.id << ' ' << format_double(item.human) << ' '
        << format_double(item.model) << '\n';
  for (const auto& item : report.classification_items)
    out << "outcome " << item.id << ' ' << (item.correct ? 1 : 0) << '\n';
  return out.str();
}

void write_report_file(const EvaluationReport& report,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open report file for writing: " + path);
  out << serialize_report(report);
  if (!out) throw DataError("failed writing report file: " + path);
}

EvaluationReport parse_report(std::istream& in) {
  EvaluationReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    const std::string& key = fields[0];
    if (key == "task" || key == "method" || key == "space") {
      // The value is the whole remainder, so paths may contain spaces.
      const std::size_t cut = line.find(key) + key.size();
      std::size_t start = cut;
      while (start < line.size() && line[start] == ' ') ++start;
      if (start >= line.size())
        throw DataError("report line " + std::to_string(line_no) +
                        ": expected '" + key + " <value>'");
      const std::string value = line.substr(start);
      if (key == "task") report.task = value;
      if (key == "method") report.method = value;
      if (key == "space") report.space_id = value;
      continue;
    }
    if (key == "evaluated" || key == "excluded") {
      if (fields.size() != 2)
        throw DataError("report line " + std::to_string(line_no) +
                        ": expected '" + key + " <count>'");
      (key == "evaluated" ? report.evaluated : report.excluded) =
          parse_count(fields[1], line_no);
      continue;
    }
    if (key == "item") {
      if (fields.size() != 4)
        throw DataError("report line " + std::to_string(line_no) +
                        ": expected 'item <id> <human> <model>'");
      report.correlation_items.push_back({fields[1],
                                          parse_real(fields[2], line_no),
                                          parse_real(fields[3], line_no)});
      continue;
    }
    if (key == "outcome") {
      if (fields.size() != 3 || (fields[2] != "0" && fields[2] != "1"))
        throw DataError("report line " + std::to_string(line_no) +
                        ": expected 'outcome <id> <0|1>'");
      report.classification_items.push_back({fields[1], fields[2] == "1"});
      continue;
    }
    if (fields.size() != 2)
      throw DataError("report line " + std::to_string(line_no) +
                      ": expected 'key value'");
    report.metrics.emplace_back(key, parse_real(fields[1], line_no));
  }
  if (report.task.empty())
    throw DataError("report is missing its task line");
  return report;
}

EvaluationReport parse_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open report file: " + path);
  return parse_report(in);
}

std::string render_table(const EvaluationReport& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("task", report.task);
  rows.emplace_back("method", report.method);
  rows.emplace_back("space", report.space_id);
  rows.emplace_back("evaluated", std::to_string(report.evaluated));
  rows.emplace_back("excluded", std::to_string(report.excluded));
  for (const auto& [key, value] : report.metrics)
    rows.emplace_back(key, format_metric(value));

  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());

  std::ostringstream out;
  out << std::string(width, '-') << "  " << "------\n";
  for (const auto& [key, value] : rows) {
    out << key << std::string(width - key.size(), ' ') << "  " << value
        << '\n';
  }
  out << std::string(width, '-') << "  " << "------\n";
  return out.str();
}

}  // namespace compsem
