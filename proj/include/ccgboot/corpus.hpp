#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ccgboot/category.hpp"
#include "ccgboot/lf.hpp"

namespace ccgboot::corpus {

struct DataPoint {
  std::size_t index = 0;
  std::vector<std::string> tokens;
  lf::Term lf;
  std::vector<std::string> tags;  // per token; empty when not supplied
};

struct Corpus {
  std::string name;
  std::vector<DataPoint> datapoints;

  std::size_t token_count() const;
  std::size_t size() const { return datapoints.size(); }
};

struct LoadOptions {
  // Drop tokens tagged "co" (communicators); datapoints left without tokens
  // are dropped and the rest renumbered.
  bool filter_co = false;
};

// Line-delimited JSON: {"tokens": [...], "lf": "...", "tags": [...]}.
// An optional integer "index" must be unique in the file; datapoints are
// numbered by position either way. Blank lines are ignored. Throws DataError
// naming the offending line.
Corpus read_corpus(std::istream& in, const LoadOptions& options = {}, const std::string& name = "");
Corpus load_corpus(const std::string& path, const LoadOptions& options = {});

// One canonical JSON line per datapoint.
std::string to_jsonl_line(const DataPoint& dp);
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::string& path, const Corpus& corpus);

struct LexicalEntry {
  lf::Term lf;
  ccg::Category category;
};

struct GoldLexicon {
  std::map<std::string, std::vector<LexicalEntry>> entries;
  // Entries that could not be parsed in lenient mode, as "word: text".
  std::vector<std::string> rejected;
};

// Lines "word:LF || CAT(,LF || CAT)*"; a line starting with ',' continues
// the previous word. Strict mode throws DataError on the first bad entry.
GoldLexicon read_gold_lexicon(std::istream& in, bool lenient = false);
GoldLexicon load_gold_lexicon(const std::string& path, bool lenient = false);

enum class WordOrder { SOV, SVO, VSO, OSV, OVS, VOS };

const std::vector<WordOrder>& all_word_orders();
std::string to_string(WordOrder order);
WordOrder parse_word_order(std::string_view text);

struct SynthSpec {
  WordOrder order = WordOrder::SVO;
  std::size_t sentences = 300;
  // Vocabulary of 20: 5 names, 5 nouns, 2 determiners, 4 transitive verbs,
  // 3 intransitive verbs and a copula.
  std::size_t vocab = 20;
  // Within-class word frequencies follow 1/(k+b)^a.
  double zipf_a = 1.0;
  double zipf_b = 1.0;
  double p_transitive = 0.5;
  double p_intransitive = 0.3;  // the rest are copular
  double p_name = 0.5;          // otherwise determiner + noun
  std::uint64_t seed = 7;
};

// Deterministic given the spec. No token repeats within a sentence.
Corpus synth_corpus(const SynthSpec& spec);

// Gold lexicon for the synthetic vocabulary under the spec's word order.
GoldLexicon synth_gold_lexicon(const SynthSpec& spec);

}  // namespace ccgboot::corpus
