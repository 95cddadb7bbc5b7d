// Verb-similarity evaluation: cosine over sparse or dense rows, benchmark
// loading with the corpus-frequency filter, Spearman correlation, and the
// Fisher r-to-z comparison of two correlations.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "jointdsm/svd.hpp"
#include "jointdsm/weighting.hpp"

namespace jointdsm {

// u.v / (|u||v|); 0 when either norm is 0. Throws DimensionMismatch.
double cosine(std::span<const double> u, std::span<const double> v);

// Cosine of two sorted sparse rows (same context space).
double cosine_sparse(std::span<const WeightCell> u,
                     std::span<const WeightCell> v);

// Fractional (average) ranks, 1-based; ties get the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> xs);

// Pearson correlation of fractional ranks. Throws DegenerateInput when a
// side is constant, DimensionMismatch on length mismatch or length < 2.
double spearman(std::span<const double> xs, std::span<const double> ys);

enum class DatasetFormat { VerbSim, SimLex };

struct ScoredPair {
  std::string word1;  // normalized ("<lemma>-v")
  std::string word2;
  double gold = 0.0;
};

struct SimilarityDataset {
  std::string name;
  std::vector<ScoredPair> pairs;
};

// verbsim: "word1 word2 score" lines. simlex: the published header + TSV,
// keeping rows whose POS column is "V". Words come back lowercased with a
// "-v" suffix. Throws ParseError / EmptyDataset.
SimilarityDataset load_dataset(const std::string& path, DatasetFormat format);
SimilarityDataset parse_dataset(std::istream& in, DatasetFormat format,
                                const std::string& name);

struct SkipEntry {
  std::string word1;
  std::string word2;
  std::string reason;
  bool excluded = true;  // false for surfaced-but-scored events (zero rows)
};

struct EvalResult {
  std::optional<double> rho;  // set only when n_covered >= 2
  std::size_t n_covered = 0;
  std::size_t n_total = 0;
  std::vector<SkipEntry> skipped;
};

using TargetTotals = std::unordered_map<std::string, std::uint64_t>;

// Pairs are skipped when either word is missing from the space or its
// corpus frequency is below min_freq; zero-norm rows score 0 and are
// surfaced in `skipped` with excluded=false.
EvalResult evaluate(const WeightedMatrix& space, const SimilarityDataset& ds,
                    const TargetTotals& totals, std::uint64_t min_freq = 100);
EvalResult evaluate(const EmbeddingMatrix& space, const SimilarityDataset& ds,
                    const TargetTotals& totals, std::uint64_t min_freq = 100);

struct ZTest {
  double z = 0.0;
  double p = 1.0;  // two-tailed
};

// z = (atanh r1 - atanh r2) / sqrt(1/(n1-3) + 1/(n2-3)), p from the
// standard normal via erfc. Throws DomainError for |r| >= 1 or n < 4.
ZTest fisher_r_to_z(double r1, std::size_t n1, double r2, std::size_t n2);

}  // namespace jointdsm
