// End-to-end experiment runner: ingest -> extract -> count -> select ->
// ppmi -> (svd) -> evaluate, with content-keyed caching of intermediates
// and a grid runner covering scheme x context-count x k combinations.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jointdsm/context.hpp"
#include "jointdsm/eval.hpp"
#include "jointdsm/io.hpp"

namespace jointdsm {

struct DatasetSpec {
  std::string name;
  std::string path;
  DatasetFormat format = DatasetFormat::VerbSim;
};

struct ExperimentConfig {
  SchemeKind scheme = SchemeKind::Joint;
  std::size_t n_contexts = 10000;
  std::optional<int> svd_k;  // absent: no reduction
  std::uint64_t seed = 42;

  std::vector<std::string> corpus_paths;
  std::vector<DatasetSpec> datasets;
  std::string labelmap_path;  // empty: built-in UD map
  ConllFormat format = ConllFormat::ConllU;
  Tagset tagset = Tagset::Upos;
  bool strict = false;
  std::string bow_target_letters = "v";
  std::uint64_t min_freq = 100;

  std::string cache_dir;  // empty: recompute everything
  std::ostream* log = nullptr;
};

// Streams all corpus files through the configured extractor; result is
// canonicalized (lexicographic vocabularies). Throws EmptyMatrixError when
// nothing was extracted.
CooccurrenceMatrix count_corpus(const ExperimentConfig& cfg);

struct DatasetResult {
  std::string dataset;
  EvalResult result;
};

// Full pipeline for one configuration. Errors carry the failing stage
// (PipelineError).
std::vector<DatasetResult> run_pipeline(const ExperimentConfig& cfg);

struct GridRow {
  SchemeKind scheme = SchemeKind::Joint;
  std::size_t n_contexts = 0;
  std::optional<int> k;
  std::string dataset;
  std::optional<double> rho;
  std::size_t covered = 0;
  std::size_t total = 0;
  std::string error;  // non-empty when the cell failed
};

struct GridReport {
  std::vector<GridRow> rows;

  std::string to_tsv() const;    // deterministic, fixed 6-decimal rho
  std::string to_table() const;  // aligned text for terminals
  static GridReport from_tsv(std::istream& in);
};

// Cartesian product in (scheme, n_contexts, k) order; per-cell failures are
// recorded and the remaining cells still run.
GridReport run_grid(const ExperimentConfig& base,
                    const std::vector<SchemeKind>& schemes,
                    const std::vector<std::size_t>& context_counts,
                    const std::vector<std::optional<int>>& k_values);

struct RowSelector {
  SchemeKind scheme = SchemeKind::Joint;
  std::size_t n_contexts = 0;
  std::optional<int> k;
};

// Fisher r-to-z between two report rows on one dataset. Throws
// InsufficientCoverage when either row has coverage < 4 (or failed), and
// Error when a selector matches no row.
ZTest compare_significance(const GridReport& report,
                           const RowSelector& baseline,
                           const RowSelector& candidate,
                           const std::string& dataset);

}  // namespace jointdsm
