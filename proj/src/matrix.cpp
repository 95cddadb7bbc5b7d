#include "jointdsm/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "jointdsm/errors.hpp"

namespace jointdsm {

namespace {

std::uint64_t cell_key(std::uint32_t t, std::uint32_t c) {
  return (static_cast<std::uint64_t>(t) << 32) | c;
}

std::vector<CountCell> sorted_cells(
    const std::unordered_map<std::uint64_t, std::uint64_t>& counts) {
  std::vector<CountCell> cells;
  cells.reserve(counts.size());
  for (const auto& [key, count] : counts)
    cells.push_back({static_cast<std::uint32_t>(key >> 32),
                     static_cast<std::uint32_t>(key & 0xffffffffu), count});
  std::sort(cells.begin(), cells.end(),
            [](const CountCell& a, const CountCell& b) {
              return a.target != b.target ? a.target < b.target
                                          : a.context < b.context;
            });
  return cells;
}

// Permutation that sorts vocabulary ids by text; returns old->new map.
std::vector<std::uint32_t> lexicographic_remap(const Vocabulary& v,
                                               Vocabulary& out) {
  std::vector<std::uint32_t> order(v.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&v](std::uint32_t a, std::uint32_t b) {
    return v.text(a) < v.text(b);
  });
  std::vector<std::uint32_t> old_to_new(v.size());
  for (std::uint32_t pos = 0; pos < order.size(); ++pos) {
    old_to_new[order[pos]] = pos;
    out.intern(v.text(order[pos]));
  }
  return old_to_new;
}

}  // namespace

std::uint32_t Vocabulary::intern(std::string_view text) {
  auto it = ids_.find(std::string(text));
  if (it != ids_.end()) return it->second;
  std::uint32_t id = static_cast<std::uint32_t>(texts_.size());
  texts_.emplace_back(text);
  ids_.emplace(texts_.back(), id);
  return id;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view text) const {
  auto it = ids_.find(std::string(text));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t CooccurrenceMatrix::total_pairs() const {
  std::uint64_t n = 0;
  for (const CountCell& c : cells) n += c.count;
  return n;
}

std::uint64_t CooccurrenceMatrix::total_of(std::string_view target) const {
  auto it = target_totals.find(std::string(target));
  return it == target_totals.end() ? 0 : it->second;
}

void PairCounter::add_pair(std::string_view target, std::string_view feature,
                           std::uint64_t count) {
  std::uint32_t tid = targets_.intern(target);
  std::uint32_t cid = contexts_.intern(feature);
  counts_[cell_key(tid, cid)] += count;
  pairs_seen_ += count;
}

void PairCounter::add_token_occurrence(std::string_view normalized_lemma) {
  ++totals_[std::string(normalized_lemma)];
}

CooccurrenceMatrix PairCounter::finalize() {
  CooccurrenceMatrix m;
  m.targets = std::move(targets_);
  m.contexts = std::move(contexts_);
  m.cells = sorted_cells(counts_);
  // The full token-frequency map survives: a shard may see occurrences of
  // a word that only becomes a matrix target in another shard, and merge
  // must still sum to the whole-corpus totals.
  m.target_totals = std::move(totals_);
  targets_ = Vocabulary();
  contexts_ = Vocabulary();
  counts_.clear();
  totals_.clear();
  pairs_seen_ = 0;
  return m;
}

CooccurrenceMatrix merge(const CooccurrenceMatrix& a,
                         const CooccurrenceMatrix& b) {
  CooccurrenceMatrix out;
  for (const std::string& t : a.targets.texts()) out.targets.intern(t);
  for (const std::string& t : a.contexts.texts()) out.contexts.intern(t);

  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  counts.reserve(a.cells.size() + b.cells.size());
  for (const CountCell& c : a.cells)
    counts[cell_key(c.target, c.context)] += c.count;
  for (const CountCell& c : b.cells) {
    std::uint32_t tid = out.targets.intern(b.targets.text(c.target));
    std::uint32_t cid = out.contexts.intern(b.contexts.text(c.context));
    counts[cell_key(tid, cid)] += c.count;
  }
  out.cells = sorted_cells(counts);

  out.target_totals = a.target_totals;
  for (const auto& [text, total] : b.target_totals)
    out.target_totals[text] += total;
  return out;
}

CooccurrenceMatrix canonicalize(const CooccurrenceMatrix& m) {
  CooccurrenceMatrix out;
  auto tmap = lexicographic_remap(m.targets, out.targets);
  auto cmap = lexicographic_remap(m.contexts, out.contexts);
  out.cells.reserve(m.cells.size());
  for (const CountCell& c : m.cells)
    out.cells.push_back({tmap[c.target], cmap[c.context], c.count});
  std::sort(out.cells.begin(), out.cells.end(),
            [](const CountCell& a, const CountCell& b) {
              return a.target != b.target ? a.target < b.target
                                          : a.context < b.context;
            });
  out.target_totals = m.target_totals;
  return out;
}

CooccurrenceMatrix select_top_contexts(const CooccurrenceMatrix& m,
                                       std::size_t n) {
  std::vector<std::uint64_t> column_sums(m.contexts.size(), 0);
  for (const CountCell& c : m.cells) column_sums[c.context] += c.count;

  std::vector<std::uint32_t> order(m.contexts.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (column_sums[a] != column_sums[b])
                return column_sums[a] > column_sums[b];
              return m.contexts.text(a) < m.contexts.text(b);
            });
  std::size_t keep = std::min(n, order.size());

  // Kept columns stay in their original vocabulary order.
  std::vector<bool> kept(m.contexts.size(), false);
  for (std::size_t i = 0; i < keep; ++i) kept[order[i]] = true;

  CooccurrenceMatrix out;
  std::vector<std::uint32_t> cmap(m.contexts.size());
  for (std::uint32_t cid = 0; cid < m.contexts.size(); ++cid)
    if (kept[cid]) cmap[cid] = out.contexts.intern(m.contexts.text(cid));
  for (const std::string& t : m.targets.texts()) out.targets.intern(t);

  out.cells.reserve(m.cells.size());
  for (const CountCell& c : m.cells)
    if (kept[c.context]) out.cells.push_back({c.target, cmap[c.context], c.count});
  out.target_totals = m.target_totals;
  return out;
}

}  // namespace jointdsm
