#include "jointdsm/matrix.hpp"

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace jointdsm;

namespace {

bool same_matrix(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b) {
  if (a.targets.texts() != b.targets.texts()) return false;
  if (a.contexts.texts() != b.contexts.texts()) return false;
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    if (!(a.cells[i] == b.cells[i])) return false;
  return a.target_totals == b.target_totals;
}

std::vector<std::pair<std::string, std::string>> random_pairs(
    std::size_t n, std::mt19937_64& rng, int n_targets = 40,
    int n_contexts = 200) {
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    pairs.push_back({"t" + std::to_string(rng() % n_targets),
                     "c" + std::to_string(rng() % n_contexts)});
  return pairs;
}

CooccurrenceMatrix count_all(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  PairCounter counter;
  for (const auto& [t, c] : pairs) counter.add_pair(t, c);
  return counter.finalize();
}

}  // namespace

TEST_CASE("counting collapses duplicates") {
  PairCounter counter;
  counter.add_pair("a", "x");
  counter.add_pair("a", "x");
  counter.add_pair("b", "x");
  CooccurrenceMatrix m = counter.finalize();
  REQUIRE(m.cells.size() == 2);
  CHECK(m.cells[0].count == 2);
  CHECK(m.cells[1].count == 1);
  CHECK(m.total_pairs() == 3);
}

TEST_CASE("empty input gives an empty matrix") {
  PairCounter counter;
  CooccurrenceMatrix m = counter.finalize();
  CHECK(m.cells.empty());
  CHECK(m.targets.size() == 0);
}

TEST_CASE("token totals are corpus frequencies, not pair counts") {
  PairCounter counter;
  counter.add_token_occurrence("run-v");
  counter.add_token_occurrence("run-v");
  counter.add_token_occurrence("run-v");
  counter.add_token_occurrence("unrelated-n");
  counter.add_pair("run-v", "dog-n.subj");
  CooccurrenceMatrix m = counter.finalize();
  CHECK(m.total_of("run-v") == 3);
  CHECK(m.total_of("absent-v") == 0);
}

TEST_CASE("large random multiset matches a reference counter") {
  std::mt19937_64 rng(11);
  auto pairs = random_pairs(1000000, rng);
  CooccurrenceMatrix m = count_all(pairs);
  auto reference = oracles::count_with_map(pairs);
  REQUIRE(m.cells.size() == reference.size());
  std::uint64_t checked = 0;
  for (const CountCell& c : m.cells) {
    auto it = reference.find(
        {m.targets.text(c.target), m.contexts.text(c.context)});
    REQUIRE(it != reference.end());
    CHECK(it->second == c.count);
    ++checked;
  }
  CHECK(checked == reference.size());
}

TEST_CASE("merge with the empty matrix is the identity") {
  std::mt19937_64 rng(12);
  CooccurrenceMatrix m = count_all(random_pairs(5000, rng));
  CooccurrenceMatrix empty;
  CHECK(same_matrix(canonicalize(merge(m, empty)), canonicalize(m)));
  CHECK(same_matrix(canonicalize(merge(empty, m)), canonicalize(m)));
}

TEST_CASE("merge commutes after canonical re-sort") {
  std::mt19937_64 rng(13);
  CooccurrenceMatrix a = count_all(random_pairs(3000, rng, 30, 80));
  CooccurrenceMatrix b = count_all(random_pairs(3000, rng, 30, 80));
  CHECK(same_matrix(canonicalize(merge(a, b)), canonicalize(merge(b, a))));
}

TEST_CASE("sharded counting equals single-shard counting") {
  std::mt19937_64 rng(14);
  auto pairs = random_pairs(20000, rng);
  CooccurrenceMatrix whole = canonicalize(count_all(pairs));

  for (int trial = 0; trial < 4; ++trial) {
    int n_shards = 2 + static_cast<int>(rng() % 4);
    std::vector<std::vector<std::pair<std::string, std::string>>> shards(
        n_shards);
    for (const auto& p : pairs) shards[rng() % n_shards].push_back(p);

    std::vector<CooccurrenceMatrix> parts;
    for (const auto& shard : shards) parts.push_back(count_all(shard));
    std::shuffle(parts.begin(), parts.end(), rng);
    CooccurrenceMatrix merged;
    for (const auto& part : parts) merged = merge(merged, part);
    CHECK(same_matrix(canonicalize(merged), whole));
  }
}

TEST_CASE("top-context selection keeps the most frequent columns") {
  PairCounter counter;
  for (int i = 0; i < 5; ++i) counter.add_pair("t", "heavy");
  for (int i = 0; i < 3; ++i) counter.add_pair("t", "middle");
  counter.add_pair("t", "light");
  CooccurrenceMatrix m = counter.finalize();

  CooccurrenceMatrix top2 = select_top_contexts(m, 2);
  REQUIRE(top2.contexts.size() == 2);
  CHECK(top2.contexts.find("heavy").has_value());
  CHECK(top2.contexts.find("middle").has_value());
  CHECK_FALSE(top2.contexts.find("light").has_value());

  SUBCASE("n >= #contexts keeps everything") {
    CooccurrenceMatrix all = select_top_contexts(m, 10);
    CHECK(all.contexts.size() == 3);
    CHECK(all.cells.size() == m.cells.size());
  }
  SUBCASE("frequency ties break lexicographically") {
    PairCounter tie;
    tie.add_pair("t", "zebra");
    tie.add_pair("t", "apple");
    CooccurrenceMatrix tm = select_top_contexts(tie.finalize(), 1);
    CHECK(tm.contexts.find("apple").has_value());
  }
}

TEST_CASE("selection agrees with a full-sort oracle") {
  std::mt19937_64 rng(15);
  auto pairs = random_pairs(30000, rng, 50, 1000);
  CooccurrenceMatrix m = canonicalize(count_all(pairs));
  CooccurrenceMatrix top = select_top_contexts(m, 100);
  auto expected = oracles::full_sort_top_contexts(
      oracles::count_with_map(pairs), 100);
  REQUIRE(top.contexts.size() == expected.size());
  for (const std::string& key : expected)
    CHECK(top.contexts.find(key).has_value());
}

TEST_CASE("selection never changes rows or raises cell values") {
  std::mt19937_64 rng(16);
  CooccurrenceMatrix m = canonicalize(count_all(random_pairs(10000, rng)));
  CooccurrenceMatrix top = select_top_contexts(m, 37);
  CHECK(top.targets.texts() == m.targets.texts());
  CHECK(top.target_totals == m.target_totals);
  for (const CountCell& c : top.cells) {
    auto original_cid = m.contexts.find(top.contexts.text(c.context));
    REQUIRE(original_cid.has_value());
    bool found = false;
    for (const CountCell& o : m.cells)
      if (o.target == c.target && o.context == *original_cid) {
        CHECK(o.count == c.count);
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("canonicalize is idempotent") {
  std::mt19937_64 rng(17);
  CooccurrenceMatrix m = count_all(random_pairs(4000, rng));
  CooccurrenceMatrix c1 = canonicalize(m);
  CHECK(same_matrix(c1, canonicalize(c1)));
}
