#include "jointdsm/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jointdsm/errors.hpp"
#include "jointdsm/gzstream.hpp"

namespace jointdsm {

namespace {

namespace fs = std::filesystem;

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what(), error_exit_code(e));
  }
}

std::string file_fingerprint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

std::string corpus_fingerprint(const ExperimentConfig& cfg) {
  std::string desc;
  for (const std::string& p : cfg.corpus_paths)
    desc += p + ":" + file_fingerprint(p) + ";";
  return sha256_hex(desc);
}

std::string labelmap_fingerprint(const ExperimentConfig& cfg) {
  if (cfg.labelmap_path.empty()) return "builtin-ud";
  return file_fingerprint(cfg.labelmap_path);
}

std::string count_key(const ExperimentConfig& cfg) {
  std::string desc = "count|corpus=" + corpus_fingerprint(cfg) +
                     "|fmt=" + std::to_string(static_cast<int>(cfg.format)) +
                     "|tag=" + std::to_string(static_cast<int>(cfg.tagset)) +
                     "|strict=" + std::to_string(cfg.strict) +
                     "|scheme=" + scheme_name(cfg.scheme) +
                     "|labelmap=" + labelmap_fingerprint(cfg);
  if (cfg.scheme == SchemeKind::Bow) desc += "|bow=" + cfg.bow_target_letters;
  return sha256_hex(desc);
}

// On-disk cache of stage artifacts. The count artifact keeps a totals
// sidecar; later stages never change totals.
class StageCache {
 public:
  explicit StageCache(const std::string& dir) : dir_(dir) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }
  bool enabled() const { return !dir_.empty(); }

  std::string path_for(const std::string& stage_name, const std::string& key,
                       const char* ext) const {
    return (fs::path(dir_) / (stage_name + "-" + key.substr(0, 16) + ext))
        .string();
  }
  bool has(const std::string& path) const {
    return enabled() && fs::exists(path);
  }

 private:
  std::string dir_;
};

std::string format_rho(const std::optional<double>& rho) {
  if (!rho) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *rho);
  return buf;
}

std::string k_name(const std::optional<int>& k) {
  return k ? std::to_string(*k) : "none";
}

CooccurrenceMatrix counts_stage(const ExperimentConfig& cfg, StageCache& cache,
                                TargetTotals& totals, std::string& key) {
  return stage("count", [&] {
    key = count_key(cfg);
    std::string path = cache.path_for("count", key, ".jdsm");
    if (cache.has(path)) {
      totals = load_totals(totals_sidecar_path(path));
      CooccurrenceMatrix m = load_counts(path);
      m.target_totals = totals;
      return m;
    }
    CooccurrenceMatrix m = count_corpus(cfg);
    totals = m.target_totals;
    if (cache.enabled()) {
      save_counts(m, path);
      save_totals(totals, totals_sidecar_path(path));
    }
    return m;
  });
}

CooccurrenceMatrix select_stage(const ExperimentConfig& cfg,
                                StageCache& cache,
                                const CooccurrenceMatrix& counts,
                                const std::string& counts_key,
                                std::string& key) {
  return stage("select", [&] {
    key = sha256_hex("select|" + counts_key +
                     "|n=" + std::to_string(cfg.n_contexts));
    std::string path = cache.path_for("select", key, ".jdsm");
    if (cache.has(path)) return load_counts(path);
    CooccurrenceMatrix m = select_top_contexts(counts, cfg.n_contexts);
    if (cache.enabled()) save_counts(m, path);
    return m;
  });
}

WeightedMatrix ppmi_stage(StageCache& cache, const CooccurrenceMatrix& m,
                          const std::string& select_key, std::string& key) {
  return stage("ppmi", [&] {
    key = sha256_hex("ppmi|" + select_key);
    std::string path = cache.path_for("ppmi", key, ".jdsmw");
    if (cache.has(path)) return load_weighted(path);
    WeightedMatrix w = ppmi(m);
    if (cache.enabled()) save_weighted(w, path);
    return w;
  });
}

EmbeddingMatrix svd_stage(const ExperimentConfig& cfg, StageCache& cache,
                          const WeightedMatrix& w,
                          const std::string& ppmi_key, int k) {
  return stage("svd", [&] {
    std::string key =
        sha256_hex("svd|" + ppmi_key + "|k=" + std::to_string(k) +
                   "|seed=" + std::to_string(cfg.seed) + "|rrf-p10-q2");
    std::string path = cache.path_for("svd", key, ".jdsme");
    if (cache.has(path)) return load_embedding(path);
    EmbeddingMatrix e = truncated_svd(w, k, cfg.seed);
    e.meta.source_hash = ppmi_key;
    if (cache.enabled()) save_embedding(e, path);
    return e;
  });
}

std::vector<DatasetResult> evaluate_stage(
    const ExperimentConfig& cfg, const WeightedMatrix& weighted,
    const std::optional<EmbeddingMatrix>& embedding,
    const TargetTotals& totals) {
  return stage("evaluate", [&] {
    std::vector<DatasetResult> out;
    for (const DatasetSpec& spec : cfg.datasets) {
      SimilarityDataset ds = load_dataset(spec.path, spec.format);
      ds.name = spec.name;
      EvalResult r = embedding
                         ? evaluate(*embedding, ds, totals, cfg.min_freq)
                         : evaluate(weighted, ds, totals, cfg.min_freq);
      out.push_back({spec.name, std::move(r)});
    }
    return out;
  });
}

}  // namespace

CooccurrenceMatrix count_corpus(const ExperimentConfig& cfg) {
  LabelMap labels = cfg.labelmap_path.empty()
                        ? LabelMap::ud_default()
                        : LabelMap::from_file(cfg.labelmap_path);
  ExtractOptions xopts{cfg.scheme, cfg.bow_target_letters, &labels};

  PairCounter counter;
  for (const std::string& path : cfg.corpus_paths) {
    GzInputFile in(path);
    ConllReader reader(in, {cfg.format, cfg.tagset, cfg.strict, cfg.log},
                       path);
    ParsedSentence s;
    while (reader.next(s)) {
      for (const Token& t : s.tokens)
        if (auto norm = normalize(t)) counter.add_token_occurrence(*norm);
      for (const TargetFeature& tf : extract(s, xopts))
        counter.add_pair(tf.target, tf.feature);
    }
    if (cfg.log && reader.blocks_skipped() > 0)
      *cfg.log << path << ": skipped " << reader.blocks_skipped()
               << " malformed block(s)\n";
  }
  CooccurrenceMatrix m = canonicalize(counter.finalize());
  if (m.cells.empty())
    throw EmptyMatrixError("no pairs extracted from corpus");
  return m;
}

std::vector<DatasetResult> run_pipeline(const ExperimentConfig& cfg) {
  StageCache cache(cfg.cache_dir);
  TargetTotals totals;
  std::string ckey, skey, pkey;
  CooccurrenceMatrix counts = counts_stage(cfg, cache, totals, ckey);
  CooccurrenceMatrix selected =
      select_stage(cfg, cache, counts, ckey, skey);
  WeightedMatrix weighted = ppmi_stage(cache, selected, skey, pkey);
  std::optional<EmbeddingMatrix> embedding;
  if (cfg.svd_k)
    embedding = svd_stage(cfg, cache, weighted, pkey, *cfg.svd_k);
  return evaluate_stage(cfg, weighted, embedding, totals);
}

std::string GridReport::to_tsv() const {
  std::string out = "scheme\tn_contexts\tk\tdataset\trho\tcovered\ttotal\n";
  for (const GridRow& r : rows) {
    out += scheme_name(r.scheme) + "\t" + std::to_string(r.n_contexts) +
           "\t" + k_name(r.k) + "\t" + r.dataset + "\t";
    if (!r.error.empty()) {
      std::string msg = r.error;
      for (char& c : msg)
        if (c == '\t' || c == '\n') c = ' ';
      out += "ERROR(" + msg + ")";
    } else {
      out += format_rho(r.rho);
    }
    out += "\t" + std::to_string(r.covered) + "\t" +
           std::to_string(r.total) + "\n";
  }
  return out;
}

std::string GridReport::to_table() const {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"scheme", "n_contexts", "k", "dataset", "rho", "coverage"});
  for (const GridRow& r : rows) {
    std::string rho = r.error.empty() ? format_rho(r.rho) : "ERROR";
    cells.push_back({scheme_name(r.scheme), std::to_string(r.n_contexts),
                     k_name(r.k), r.dataset, rho,
                     std::to_string(r.covered) + "/" +
                         std::to_string(r.total)});
  }
  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i)
      widths[i] = std::max(widths[i], row[i].size());
  std::string out;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size())
        out += std::string(widths[i] - row[i].size() + 2, ' ');
    }
    out += "\n";
  }
  return out;
}

GridReport GridReport::from_tsv(std::istream& in) {
  GridReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.rfind("scheme\t", 0) == 0) continue;
    std::istringstream row(line);
    std::string scheme, n, k, dataset, rho, covered, total;
    if (!(std::getline(row, scheme, '\t') && std::getline(row, n, '\t') &&
          std::getline(row, k, '\t') && std::getline(row, dataset, '\t') &&
          std::getline(row, rho, '\t') && std::getline(row, covered, '\t') &&
          std::getline(row, total)))
      throw ParseError(line_no, "bad report row");
    GridRow r;
    auto sk = scheme_from_name(scheme);
    if (!sk) throw ParseError(line_no, "unknown scheme '" + scheme + "'");
    r.scheme = *sk;
    r.n_contexts = std::stoull(n);
    if (k != "none") r.k = std::stoi(k);
    r.dataset = dataset;
    if (rho.rfind("ERROR", 0) == 0)
      r.error = rho;
    else if (rho != "NA")
      r.rho = std::stod(rho);
    r.covered = std::stoull(covered);
    r.total = std::stoull(total);
    report.rows.push_back(std::move(r));
  }
  return report;
}

GridReport run_grid(const ExperimentConfig& base,
                    const std::vector<SchemeKind>& schemes,
                    const std::vector<std::size_t>& context_counts,
                    const std::vector<std::optional<int>>& k_values) {
  GridReport report;
  StageCache cache(base.cache_dir);

  auto record_error = [&report, &base](SchemeKind scheme, std::size_t n,
                                       const std::optional<int>& k,
                                       const std::string& what) {
    for (const DatasetSpec& spec : base.datasets) {
      GridRow r;
      r.scheme = scheme;
      r.n_contexts = n;
      r.k = k;
      r.dataset = spec.name;
      r.error = what;
      report.rows.push_back(std::move(r));
    }
  };

  for (SchemeKind scheme : schemes) {
    ExperimentConfig cfg = base;
    cfg.scheme = scheme;
    CooccurrenceMatrix counts;
    TargetTotals totals;
    std::string ckey;
    try {
      counts = counts_stage(cfg, cache, totals, ckey);
    } catch (const std::exception& e) {
      for (std::size_t n : context_counts)
        for (const auto& k : k_values) record_error(scheme, n, k, e.what());
      continue;
    }
    for (std::size_t n : context_counts) {
      cfg.n_contexts = n;
      WeightedMatrix weighted;
      std::string skey, pkey;
      try {
        CooccurrenceMatrix selected =
            select_stage(cfg, cache, counts, ckey, skey);
        weighted = ppmi_stage(cache, selected, skey, pkey);
      } catch (const std::exception& e) {
        for (const auto& k : k_values) record_error(scheme, n, k, e.what());
        continue;
      }
      for (const auto& k : k_values) {
        cfg.svd_k = k;
        try {
          std::optional<EmbeddingMatrix> embedding;
          if (k) embedding = svd_stage(cfg, cache, weighted, pkey, *k);
          for (const DatasetResult& dr :
               evaluate_stage(cfg, weighted, embedding, totals)) {
            GridRow r;
            r.scheme = scheme;
            r.n_contexts = n;
            r.k = k;
            r.dataset = dr.dataset;
            r.rho = dr.result.rho;
            r.covered = dr.result.n_covered;
            r.total = dr.result.n_total;
            report.rows.push_back(std::move(r));
          }
        } catch (const std::exception& e) {
          record_error(scheme, n, k, e.what());
        }
      }
    }
  }
  return report;
}

ZTest compare_significance(const GridReport& report,
                           const RowSelector& baseline,
                           const RowSelector& candidate,
                           const std::string& dataset) {
  auto find = [&](const RowSelector& sel) -> const GridRow& {
    for (const GridRow& r : report.rows)
      if (r.scheme == sel.scheme && r.n_contexts == sel.n_contexts &&
          r.k == sel.k && r.dataset == dataset)
        return r;
    throw Error("no report row for " + scheme_name(sel.scheme) + "/" +
                std::to_string(sel.n_contexts) + "/" + k_name(sel.k) +
                " on " + dataset);
  };
  const GridRow& a = find(baseline);
  const GridRow& b = find(candidate);
  for (const GridRow* r : {&a, &b}) {
    if (!r->error.empty() || !r->rho)
      throw InsufficientCoverage("row has no correlation: " +
                                 scheme_name(r->scheme));
    if (r->covered < 4)
      throw InsufficientCoverage("coverage " + std::to_string(r->covered) +
                                 " < 4");
  }
  return fisher_r_to_z(*b.rho, b.covered, *a.rho, a.covered);
}

}  // namespace jointdsm
