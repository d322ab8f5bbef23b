#include "compsem/datasets.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "compsem/errors.hpp"

namespace compsem {

namespace {

std::string ascii_lower(std::string s) {
  for (char& c : s)
    c = static_cast<char>(
        std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Pulls the next line, tolerating CRLF endings. Returns false at EOF.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string> split_spaces(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string word;
  while (in >> word) words.push_back(std::move(word));
  return words;
}

double parse_judgement(const std::string& text, const char* what,
                       std::size_t line_no) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw DataError(std::string(what) + " line " + std::to_string(line_no) +
                    ": judgement is not a number: '" + text + "'");
  return value;
}

void require_non_empty(const std::string& field, const char* what,
                       std::size_t line_no) {
  if (field.empty())
    throw DataError(std::string(what) + " line " + std::to_string(line_no) +
                    ": empty field");
}

// Splits one single-line CSV row, honouring double-quoted fields with ""
// escapes. Throws on an unterminated quote.
std::vector<std::string> split_csv(const std::string& line,
                                   std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        continue;
      }
      current += c;
      ++i;
      continue;
    }
    if (c == '"' && current.empty()) {
      quoted = true;
      ++i;
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
      ++i;
      continue;
    }
    current += c;
    ++i;
  }
  if (quoted)
    throw DataError("dialogue csv line " + std::to_string(line_no) +
                    ": unterminated quote");
  fields.push_back(std::move(current));
  return fields;
}

template <typename T>
std::vector<T> read_with(const std::string& path,
                         std::vector<T> (*reader)(std::istream&),
                         const char* what) {
  std::ifstream in(path);
  if (!in)
    throw DataError(std::string("cannot open ") + what + " file: " + path);
  return reader(in);
}

}  // namespace

std::vector<DisambigItem> read_disambig(std::istream& in) {
  std::vector<DisambigItem> items;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 5)
      throw DataError(
          "disambiguation line " + std::to_string(line_no) +
          ": expected verb<TAB>subject<TAB>object<TAB>landmark<TAB>judgement");
    for (std::size_t i = 0; i < 4; ++i)
      require_non_empty(fields[i], "disambiguation", line_no);
    items.push_back({fields[0], fields[1], fields[2], fields[3],
                     parse_judgement(fields[4], "disambiguation", line_no)});
  }
  return items;
}

std::vector<DisambigItem> read_disambig_file(const std::string& path) {
  return read_with(path, read_disambig, "disambiguation");
}

std::vector<SentencePairItem> read_sentence_pairs(std::istream& in) {
  std::vector<SentencePairItem> items;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3)
      throw DataError("sentence pairs line " + std::to_string(line_no) +
                      ": expected sentence<TAB>sentence<TAB>judgement");
    const auto first = split_spaces(fields[0]);
    const auto second = split_spaces(fields[1]);
    if (first.size() != 3 || second.size() != 3)
      throw DataError("sentence pairs line " + std::to_string(line_no) +
                      ": each sentence needs exactly subject verb object");
    items.push_back({first[0], first[1], first[2], second[0], second[1],
                     second[2],
                     parse_judgement(fields[2], "sentence pairs", line_no)});
  }
  return items;
}

std::vector<SentencePairItem> read_sentence_pairs_file(
    const std::string& path) {
  return read_with(path, read_sentence_pairs, "sentence pairs");
}

std::vector<ParaphrasePair> read_paraphrase(std::istream& in) {
  std::vector<ParaphrasePair> pairs;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {  // schema mandates one header line
      header_seen = true;
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 5)
      throw DataError(
          "paraphrase line " + std::to_string(line_no) +
          ": expected label<TAB>id1<TAB>id2<TAB>sentence1<TAB>sentence2");
    if (fields[0] != "0" && fields[0] != "1")
      throw DataError("paraphrase line " + std::to_string(line_no) +
                      ": label must be 0 or 1, got '" + fields[0] + "'");
    ParaphrasePair pair;
    pair.label = fields[0] == "1";
    pair.sentence1 = split_spaces(fields[3]);
    pair.sentence2 = split_spaces(fields[4]);
    if (pair.sentence1.empty() || pair.sentence2.empty())
      throw DataError("paraphrase line " + std::to_string(line_no) +
                      ": empty sentence");
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<ParaphrasePair> read_paraphrase_file(const std::string& path) {
  return read_with(path, read_paraphrase, "paraphrase");
}

std::vector<RawUtteranceRecord> read_dialogue_csv(std::istream& in) {
  std::vector<RawUtteranceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line, line_no);
    if (fields.size() != 4)
      throw DataError("dialogue csv line " + std::to_string(line_no) +
                      ": expected dialogue_id,turn_id,act_tag,text");
    if (line_no == 1 && fields[0] == "dialogue_id") continue;
    require_non_empty(fields[0], "dialogue csv", line_no);
    require_non_empty(fields[2], "dialogue csv", line_no);
    records.push_back({fields[0], fields[1], fields[2], fields[3]});
  }
  return records;
}

std::vector<RawUtteranceRecord> read_dialogue_csv_file(
    const std::string& path) {
  return read_with(path, read_dialogue_csv, "dialogue csv");
}

std::unordered_set<std::string> read_id_list(std::istream& in) {
  std::unordered_set<std::string> ids;
  std::string line;
  while (next_line(in, line)) {
    if (!line.empty()) ids.insert(line);
  }
  return ids;
}

std::unordered_set<std::string> read_id_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open id list file: " + path);
  return read_id_list(in);
}

std::vector<std::string> preprocess_utterance(
    const std::vector<std::string>& segments, const PreprocessOptions& opts) {
  std::unordered_set<std::string> markers;
  for (const std::string& m : opts.disfluency_markers)
    markers.insert(ascii_lower(m));

  std::vector<std::string> tokens;
  for (const std::string& segment : segments) {
    for (std::string& word : split_spaces(segment)) {
      if (opts.drop_bracketed && word.size() >= 2) {
        const char first = word.front();
        const char last = word.back();
        const bool opens = first == '<' || first == '[' || first == '{';
        const bool closes = last == '>' || last == ']' || last == '}';
        if (opens && closes) continue;
      }
      std::string cleaned;
      cleaned.reserve(word.size());
      for (const char c : word)
        if (c != ',') cleaned += c;
      if (cleaned.empty()) continue;
      if (markers.count(ascii_lower(cleaned)) != 0) continue;
      tokens.push_back(std::move(cleaned));
    }
  }
  return tokens;
}

std::vector<Utterance> assemble_utterances(
    const std::vector<RawUtteranceRecord>& records,
    const PreprocessOptions& opts) {
  std::vector<std::vector<std::string>> segments;
  std::vector<Utterance> utterances;
  std::unordered_map<std::string, std::size_t> last_in_dialogue;

  for (const RawUtteranceRecord& record : records) {
    if (record.act_tag == "+") {
      const auto it = last_in_dialogue.find(record.dialogue_id);
      if (it == last_in_dialogue.end()) continue;  // orphan continuation
      segments[it->second].push_back(record.text);
      continue;
    }
    last_in_dialogue[record.dialogue_id] = utterances.size();
    segments.push_back({record.text});
    utterances.push_back(
        {{}, record.act_tag, record.dialogue_id, record.turn_id});
  }
  for (std::size_t i = 0; i < utterances.size(); ++i)
    utterances[i].tokens = preprocess_utterance(segments[i], opts);
  return utterances;
}

std::vector<Utterance> filter_by_dialogue(
    const std::vector<Utterance>& utterances,
    const std::unordered_set<std::string>& dialogue_ids) {
  std::vector<Utterance> kept;
  for (const Utterance& u : utterances)
    if (dialogue_ids.count(u.dialogue_id) != 0) kept.push_back(u);
  return kept;
}

}  // namespace compsem
