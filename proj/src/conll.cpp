#include "jointdsm/conll.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "jointdsm/errors.hpp"

namespace jointdsm {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Tab-separated when tabs are present, otherwise whitespace runs.
std::vector<std::string_view> split_columns(std::string_view line) {
  std::vector<std::string_view> cols;
  if (line.find('\t') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) cols.push_back(line.substr(start, i - start));
    }
  }
  return cols;
}

bool parse_int(std::string_view s, int& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

CoarsePos map_pos(std::string_view tag, Tagset scheme) {
  if (scheme == Tagset::Upos) {
    if (tag == "NOUN" || tag == "PROPN") return CoarsePos::Noun;
    if (tag == "VERB") return CoarsePos::Verb;
    if (tag == "ADJ") return CoarsePos::Adjective;
    if (tag == "ADV") return CoarsePos::Adverb;
    if (tag == "ADP") return CoarsePos::Preposition;
    return CoarsePos::Other;
  }
  // PTB
  if (tag.substr(0, 2) == "NN") return CoarsePos::Noun;
  if (tag.substr(0, 2) == "VB") return CoarsePos::Verb;
  if (tag.substr(0, 2) == "JJ") return CoarsePos::Adjective;
  if (tag.substr(0, 2) == "RB") return CoarsePos::Adverb;
  if (tag == "IN" || tag == "TO") return CoarsePos::Preposition;
  return CoarsePos::Other;
}

char pos_letter(CoarsePos pos) {
  switch (pos) {
    case CoarsePos::Noun: return 'n';
    case CoarsePos::Verb: return 'v';
    case CoarsePos::Adjective: return 'j';
    case CoarsePos::Adverb: return 'r';
    case CoarsePos::Preposition: return 'i';
    case CoarsePos::Other: return 0;
  }
  return 0;
}

std::optional<std::string> normalize(const Token& t) {
  char letter = pos_letter(t.pos);
  if (letter == 0 || t.lemma.empty()) return std::nullopt;
  std::string out = lowercase(t.lemma);
  out.push_back('-');
  out.push_back(letter);
  return out;
}

std::pair<std::string_view, char> split_normalized(std::string_view norm) {
  std::size_t hyphen = norm.rfind('-');
  if (hyphen == std::string_view::npos || hyphen + 2 != norm.size())
    return {norm, 0};
  return {norm.substr(0, hyphen), norm[hyphen + 1]};
}

ConllReader::ConllReader(std::istream& in, ReaderOptions opts,
                         std::string source_prefix)
    : in_(in), opts_(opts), prefix_(std::move(source_prefix)) {}

bool ConllReader::read_block(std::vector<std::string>& lines,
                             std::size_t& first_line) {
  lines.clear();
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!lines.empty()) return true;
      continue;  // leading blank lines
    }
    if (line[0] == '#') continue;
    if (lines.empty()) first_line = line_no_;
    lines.push_back(std::move(line));
  }
  return !lines.empty();
}

bool ConllReader::parse_block(const std::vector<std::string>& lines,
                              std::size_t first_line, ParsedSentence& out) {
  out.tokens.clear();
  out.source_id = prefix_ + ":" + std::to_string(first_line);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t row_line = first_line + i;  // approximate: comments shift it
    auto cols = split_columns(lines[i]);
    if (cols.empty()) continue;
    // Multiword ranges ("3-4") and empty nodes ("5.1") carry no tree edges.
    if (cols[0].find('-') != std::string_view::npos ||
        cols[0].find('.') != std::string_view::npos)
      continue;
    if (cols.size() < 8)
      throw MalformedBlock(row_line, "expected at least 8 columns, got " +
                                         std::to_string(cols.size()));
    Token t;
    if (!parse_int(cols[0], t.index) || t.index < 1)
      throw MalformedBlock(row_line, "bad token id '" + std::string(cols[0]) + "'");
    t.surface = std::string(cols[1]);
    t.lemma = std::string(cols[2]);
    if (t.lemma.empty() || t.lemma == "_") t.lemma = t.surface;
    if (t.lemma.empty())
      throw MalformedBlock(row_line, "empty lemma");
    // Column 3 holds CPOSTAG (CoNLL-X) or UPOS (CoNLL-U); column 4 POSTAG /
    // XPOS. The tagset picks which one feeds the coarse mapping.
    std::string_view tag = opts_.tagset == Tagset::Upos ? cols[3] : cols[4];
    t.pos = map_pos(tag, opts_.tagset);
    if (!parse_int(cols[6], t.head) || t.head < 0)
      throw MalformedBlock(row_line, "non-numeric HEAD '" + std::string(cols[6]) + "'");
    t.dep_label = std::string(cols[7]);
    out.tokens.push_back(std::move(t));
  }
  if (out.tokens.empty()) return false;
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    if (out.tokens[i].index != static_cast<int>(i) + 1)
      throw MalformedBlock(first_line + i, "token ids not contiguous");
  }
  std::string why;
  if (!validate_heads(out, &why)) throw MalformedBlock(first_line, why);
  return true;
}

bool ConllReader::next(ParsedSentence& out) {
  std::vector<std::string> lines;
  std::size_t first_line = 0;
  while (read_block(lines, first_line)) {
    try {
      if (!parse_block(lines, first_line, out)) continue;
      ++n_read_;
      return true;
    } catch (const MalformedBlock& e) {
      if (opts_.strict) throw;
      ++n_skipped_;
      if (opts_.warn)
        *opts_.warn << "skipping malformed block (" << prefix_ << "): "
                    << e.what() << "\n";
    }
  }
  return false;
}

bool validate_heads(const ParsedSentence& s, std::string* why) {
  const int n = static_cast<int>(s.tokens.size());
  for (const Token& t : s.tokens) {
    if (t.head < 0 || t.head > n) {
      if (why) *why = "head " + std::to_string(t.head) + " out of range";
      return false;
    }
    if (t.head == t.index) {
      if (why) *why = "token " + std::to_string(t.index) + " heads itself";
      return false;
    }
  }
  // Chase each head chain; more than n steps means a cycle.
  for (const Token& t : s.tokens) {
    int cur = t.index;
    int steps = 0;
    while (cur != 0) {
      cur = s.tokens[cur - 1].head;
      if (++steps > n) {
        if (why) *why = "head cycle involving token " + std::to_string(t.index);
        return false;
      }
    }
  }
  return true;
}

}  // namespace jointdsm
