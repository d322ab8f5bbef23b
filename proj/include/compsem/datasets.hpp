#pragma once

#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

namespace compsem {

// One annotator judgement for an ambiguous verb with its arguments and a
// landmark verb naming one of its senses.
struct DisambigItem {
  std::string verb;
  std::string subject;
  std::string object;
  std::string landmark;
  double judgement = 0.0;
};

// One annotator judgement for a pair of subject-verb-object sentences.
struct SentencePairItem {
  std::string sbj1, verb1, obj1;
  std::string sbj2, verb2, obj2;
  double judgement = 0.0;
};

// A labelled candidate paraphrase pair, sentences kept as token lists.
struct ParaphrasePair {
  std::vector<std::string> sentence1;
  std::vector<std::string> sentence2;
  bool label = false;
};

// One row of a dialogue-act CSV before grouping and cleanup.
struct RawUtteranceRecord {
  std::string dialogue_id;
  std::string turn_id;
  std::string act_tag;
  std::string text;
};

// A cleaned utterance ready for composition and classification.
struct Utterance {
  std::vector<std::string> tokens;
  std::string act_tag;
  std::string dialogue_id;
  std::string turn_id;
};

// Loaders for the canonical dataset schemas. Every parse failure throws
// DataError carrying the offending line number.

// `verb<TAB>subject<TAB>object<TAB>landmark<TAB>judgement`, one row per
// annotator judgement, no header.
std::vector<DisambigItem> read_disambig(std::istream& in);
std::vector<DisambigItem> read_disambig_file(const std::string& path);

// `sbj1 verb1 obj1<TAB>sbj2 verb2 obj2<TAB>judgement`, no header.
std::vector<SentencePairItem> read_sentence_pairs(std::istream& in);
std::vector<SentencePairItem> read_sentence_pairs_file(const std::string& path);

// Header line, then `label<TAB>id1<TAB>id2<TAB>sentence1<TAB>sentence2`;
// label is 0 or 1 and sentences are whitespace-tokenized.
std::vector<ParaphrasePair> read_paraphrase(std::istream& in);
std::vector<ParaphrasePair> read_paraphrase_file(const std::string& path);

// `dialogue_id,turn_id,act_tag,text` with double-quote escaping for fields
// containing commas; a leading header row is skipped when present.
std::vector<RawUtteranceRecord> read_dialogue_csv(std::istream& in);
std::vector<RawUtteranceRecord> read_dialogue_csv_file(const std::string& path);

// One identifier per line; blank lines ignored.
std::unordered_set<std::string> read_id_list(std::istream& in);
std::unordered_set<std::string> read_id_list_file(const std::string& path);

struct PreprocessOptions {
  // Tokens dropped after ASCII case-folding and comma removal.
  std::vector<std::string> disfluency_markers{"uh", "um", "uh-huh"};
  // Drop tokens fully enclosed in <>, [] or {} (annotation markers).
  bool drop_bracketed = true;
};

// Concatenates the segments of one utterance in order, whitespace-tokenizes,
// strips comma characters, and drops disfluency-marker and bracketed tokens.
// An empty result is legitimate output, not an error.
std::vector<std::string> preprocess_utterance(
    const std::vector<std::string>& segments,
    const PreprocessOptions& opts = {});

// Groups raw records into utterances: a record whose act tag is "+" continues
// the previous utterance of the same dialogue (interrupted-utterance parts are
// concatenated in order); a continuation with no antecedent is dropped. Each
// utterance's text is cleaned with preprocess_utterance.
std::vector<Utterance> assemble_utterances(
    const std::vector<RawUtteranceRecord>& records,
    const PreprocessOptions& opts = {});

// Keeps the utterances whose dialogue id is in the given set.
std::vector<Utterance> filter_by_dialogue(
    const std::vector<Utterance>& utterances,
    const std::unordered_set<std::string>& dialogue_ids);

}  // namespace compsem
