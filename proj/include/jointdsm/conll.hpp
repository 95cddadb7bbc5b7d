// Streaming reader for CoNLL-X / CoNLL-U dependency corpora and the
// lemma-POS normalization used for all targets and features.
#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace jointdsm {

enum class CoarsePos { Noun, Verb, Adjective, Adverb, Preposition, Other };

enum class ConllFormat { ConllX, ConllU };
enum class Tagset { Upos, Ptb };

struct Token {
  int index = 0;  // 1-based position in the sentence
  std::string surface;
  std::string lemma;
  CoarsePos pos = CoarsePos::Other;
  int head = 0;  // 0 = root, otherwise 1-based token index
  std::string dep_label;
};

struct ParsedSentence {
  std::vector<Token> tokens;
  std::string source_id;
};

// Maps a tagset tag to a coarse POS. Unknown tags map to Other.
CoarsePos map_pos(std::string_view tag, Tagset scheme);

// Single letter used in normalized lemmas: n/v/j/r/i, or 0 for Other.
char pos_letter(CoarsePos pos);

// "<lowercased lemma>-<letter>", or nullopt for Other-POS tokens.
std::optional<std::string> normalize(const Token& t);

// Splits a normalized lemma on its final hyphen into (lemma, pos letter).
std::pair<std::string_view, char> split_normalized(std::string_view norm);

struct ReaderOptions {
  ConllFormat format = ConllFormat::ConllU;
  Tagset tagset = Tagset::Upos;
  bool strict = false;           // strict: throw MalformedBlock; lenient: skip
  std::ostream* warn = nullptr;  // lenient-mode skip reports go here
};

// Pulls one sentence at a time from a character stream. Holds only the
// current block in memory, so arbitrarily long streams work in constant
// space. Blocks are separated by blank lines; '#' comment rows, multiword
// ranges ("3-4") and empty nodes ("5.1") are skipped.
class ConllReader {
 public:
  ConllReader(std::istream& in, ReaderOptions opts,
              std::string source_prefix = "");

  // Fills `out` with the next well-formed sentence; false at end of stream.
  bool next(ParsedSentence& out);

  std::size_t sentences_read() const { return n_read_; }
  std::size_t blocks_skipped() const { return n_skipped_; }

 private:
  bool read_block(std::vector<std::string>& lines, std::size_t& first_line);
  bool parse_block(const std::vector<std::string>& lines,
                   std::size_t first_line, ParsedSentence& out);

  std::istream& in_;
  ReaderOptions opts_;
  std::string prefix_;
  std::size_t line_no_ = 0;
  std::size_t n_read_ = 0;
  std::size_t n_skipped_ = 0;
};

// Head references must form a forest rooted at 0: every non-root head is a
// valid in-sentence index, no self-loops, no cycles.
bool validate_heads(const ParsedSentence& s, std::string* why = nullptr);

}  // namespace jointdsm
