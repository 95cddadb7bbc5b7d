// Sparse target x context count matrix with vocabularies, shard merging and
// frequency-based context selection.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jointdsm {

// Bijective string<->dense-id map; ids are contiguous from 0 in insertion
// order.
class Vocabulary {
 public:
  std::uint32_t intern(std::string_view text);
  std::optional<std::uint32_t> find(std::string_view text) const;
  const std::string& text(std::uint32_t id) const { return texts_[id]; }
  std::size_t size() const { return texts_.size(); }
  const std::vector<std::string>& texts() const { return texts_; }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> texts_;
};

struct CountCell {
  std::uint32_t target;
  std::uint32_t context;
  std::uint64_t count;
  bool operator==(const CountCell&) const = default;
};

struct CooccurrenceMatrix {
  Vocabulary targets;
  Vocabulary contexts;
  std::vector<CountCell> cells;  // sorted by (target, context), counts >= 1
  // Corpus token frequency per target text (not pair counts).
  std::unordered_map<std::string, std::uint64_t> target_totals;

  std::uint64_t total_pairs() const;
  std::uint64_t total_of(std::string_view target) const;
};

// Streaming accumulator for one shard: pair counts plus per-token target
// totals. Vocabularies grow in first-seen order.
class PairCounter {
 public:
  void add_pair(std::string_view target, std::string_view feature,
                std::uint64_t count = 1);
  void add_token_occurrence(std::string_view normalized_lemma);
  std::size_t pairs_seen() const { return pairs_seen_; }

  // Sorted, deduplicated matrix. The counter is left empty.
  CooccurrenceMatrix finalize();

 private:
  Vocabulary targets_;
  Vocabulary contexts_;
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint64_t> totals_;
  std::size_t pairs_seen_ = 0;
};

// Cell-wise sum with vocabulary union: a's ids first, then b's unseen
// entries. Totals are summed.
CooccurrenceMatrix merge(const CooccurrenceMatrix& a,
                         const CooccurrenceMatrix& b);

// Re-sorts both vocabularies lexicographically and remaps cells, so any
// shard/merge order produces identical bytes.
CooccurrenceMatrix canonicalize(const CooccurrenceMatrix& m);

// Keeps the n context columns with the largest raw-frequency column sums
// (ties: lexicographically smaller key wins). Rows are untouched.
CooccurrenceMatrix select_top_contexts(const CooccurrenceMatrix& m,
                                       std::size_t n);

}  // namespace jointdsm
