// jdsm: count-based distributional semantics over dependency-parsed text.
// Subcommands cover the pipeline stages plus a grid runner and a
// correlation-difference test.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "jointdsm/errors.hpp"
#include "jointdsm/gzstream.hpp"
#include "jointdsm/pipeline.hpp"

namespace {

using namespace jointdsm;

struct CorpusFlags {
  std::vector<std::string> corpus;
  std::string format = "conllu";
  std::string tagset = "upos";
  bool strict = false;
  std::string labelmap;
  std::string scheme = "joint";
  std::string bow_targets = "v";
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& f, bool with_scheme = true) {
  cmd->add_option("--corpus", f.corpus, "CoNLL file(s), plain or gzip")
      ->required();
  cmd->add_option("--format", f.format, "Corpus format")
      ->check(CLI::IsMember({"conllx", "conllu"}))
      ->capture_default_str();
  cmd->add_option("--tagset", f.tagset, "POS tagset of the corpus")
      ->check(CLI::IsMember({"upos", "ptb"}))
      ->capture_default_str();
  cmd->add_flag("--strict", f.strict, "Abort on malformed blocks");
  cmd->add_option("--labelmap", f.labelmap,
                  "Dependency label map file (default: built-in UD map)");
  if (with_scheme)
    cmd->add_option("--scheme", f.scheme, "Context scheme")
        ->check(CLI::IsMember({"bow", "single", "joint"}))
        ->capture_default_str();
  cmd->add_option("--bow-targets", f.bow_targets,
                  "Target POS letters for the bow scheme (subset of nvjr)")
      ->capture_default_str();
}

ExperimentConfig to_config(const CorpusFlags& f) {
  ExperimentConfig cfg;
  cfg.corpus_paths = f.corpus;
  cfg.format = f.format == "conllx" ? ConllFormat::ConllX : ConllFormat::ConllU;
  cfg.tagset = f.tagset == "ptb" ? Tagset::Ptb : Tagset::Upos;
  cfg.strict = f.strict;
  cfg.labelmap_path = f.labelmap;
  cfg.scheme = *scheme_from_name(f.scheme);
  cfg.bow_target_letters = f.bow_targets;
  cfg.log = &std::cerr;
  return cfg;
}

DatasetFormat dataset_format(const std::string& name) {
  if (name == "verbsim") return DatasetFormat::VerbSim;
  if (name == "simlex") return DatasetFormat::SimLex;
  throw Error("unknown dataset format '" + name + "'");
}

// "name=format:path"
DatasetSpec parse_dataset_spec(const std::string& arg) {
  std::size_t eq = arg.find('=');
  std::size_t colon = arg.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos)
    throw Error("dataset spec must be name=format:path, got '" + arg + "'");
  DatasetSpec spec;
  spec.name = arg.substr(0, eq);
  spec.format = dataset_format(arg.substr(eq + 1, colon - eq - 1));
  spec.path = arg.substr(colon + 1);
  return spec;
}

// "scheme,n,k" with k an integer or "none"
RowSelector parse_selector(const std::string& arg) {
  std::istringstream in(arg);
  std::string scheme, n, k;
  if (!(std::getline(in, scheme, ',') && std::getline(in, n, ',') &&
        std::getline(in, k)))
    throw Error("selector must be scheme,n_contexts,k ('" + arg + "')");
  RowSelector sel;
  auto sk = scheme_from_name(scheme);
  if (!sk) throw Error("unknown scheme '" + scheme + "'");
  sel.scheme = *sk;
  sel.n_contexts = std::stoull(n);
  if (k != "none") sel.k = std::stoi(k);
  return sel;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out.flush()) throw IoError("short write to " + path);
}

void propagate_totals(const std::string& in_path, const std::string& out_path) {
  std::string sidecar = totals_sidecar_path(in_path);
  if (std::filesystem::exists(sidecar))
    save_totals(load_totals(sidecar), totals_sidecar_path(out_path));
}

int cmd_extract(const CorpusFlags& flags, const std::string& out_path) {
  ExperimentConfig cfg = to_config(flags);
  CooccurrenceMatrix m = count_corpus(cfg);
  std::string out;
  for (const CountCell& c : m.cells)
    out += m.targets.text(c.target) + "\t" + m.contexts.text(c.context) +
           "\t" + std::to_string(c.count) + "\n";
  if (out_path.empty())
    std::cout << out;
  else
    write_text(out_path, out);
  return 0;
}

int cmd_build(const CorpusFlags& flags, const std::string& out_path) {
  ExperimentConfig cfg = to_config(flags);
  CooccurrenceMatrix m = count_corpus(cfg);
  save_counts(m, out_path);
  save_totals(m.target_totals, totals_sidecar_path(out_path));
  std::cerr << "wrote " << out_path << ": " << m.targets.size()
            << " targets x " << m.contexts.size() << " contexts, "
            << m.cells.size() << " cells\n";
  return 0;
}

int cmd_select(const std::string& in_path, std::size_t n,
               const std::string& out_path) {
  CooccurrenceMatrix m = select_top_contexts(load_counts(in_path), n);
  save_counts(m, out_path);
  propagate_totals(in_path, out_path);
  std::cerr << "kept " << m.contexts.size() << " contexts\n";
  return 0;
}

int cmd_weight(const std::string& in_path, const std::string& out_path) {
  WeightedMatrix w = ppmi(load_counts(in_path));
  save_weighted(w, out_path);
  propagate_totals(in_path, out_path);
  std::cerr << "wrote " << out_path << ": " << w.cells.size()
            << " positive cells\n";
  return 0;
}

int cmd_reduce(const std::string& in_path, int k, std::uint64_t seed,
               const std::string& out_path) {
  EmbeddingMatrix e = truncated_svd(load_weighted(in_path), k, seed);
  save_embedding(e, out_path);
  propagate_totals(in_path, out_path);
  std::cerr << "wrote " << out_path << ": " << e.targets.size() << " x "
            << e.k << "\n";
  return 0;
}

int cmd_eval(const std::string& space_path, const std::string& dataset_path,
             const std::string& fmt, std::uint64_t min_freq,
             std::string totals_path) {
  if (totals_path.empty()) totals_path = totals_sidecar_path(space_path);
  TargetTotals totals = load_totals(totals_path);
  SimilarityDataset ds = load_dataset(dataset_path, dataset_format(fmt));

  AnyMatrix space = load_any(space_path);
  EvalResult r = std::visit(
      [&](auto& m) -> EvalResult {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CooccurrenceMatrix>)
          throw MagicMismatch("eval expects a weighted or embedding space, "
                              "got raw counts: " + space_path);
        else
          return evaluate(m, ds, totals, min_freq);
      },
      space);

  std::string model =
      std::filesystem::path(space_path).filename().string();
  std::ostringstream line;
  line << model << "\t" << ds.name << "\t";
  if (r.rho)
    line << std::fixed << std::setprecision(6) << *r.rho;
  else
    line << "NA";
  line << "\t" << r.n_covered << "/" << r.n_total << "\n";
  std::cout << line.str();
  for (const SkipEntry& s : r.skipped)
    std::cerr << "# " << (s.excluded ? "skipped" : "note") << " " << s.word1
              << " / " << s.word2 << ": " << s.reason << "\n";
  return 0;
}

int cmd_grid(const CorpusFlags& flags,
             const std::vector<std::string>& dataset_args,
             const std::vector<std::string>& scheme_args,
             const std::vector<std::size_t>& contexts,
             const std::vector<std::string>& k_args, std::uint64_t seed,
             std::uint64_t min_freq, const std::string& cache_dir,
             const std::string& out_path) {
  ExperimentConfig base = to_config(flags);
  base.seed = seed;
  base.min_freq = min_freq;
  base.cache_dir = cache_dir;
  for (const std::string& d : dataset_args)
    base.datasets.push_back(parse_dataset_spec(d));

  std::vector<SchemeKind> schemes;
  for (const std::string& s : scheme_args) {
    auto k = scheme_from_name(s);
    if (!k) throw Error("unknown scheme '" + s + "'");
    schemes.push_back(*k);
  }
  std::vector<std::optional<int>> ks;
  for (const std::string& k : k_args)
    ks.push_back(k == "none" ? std::optional<int>{} : std::stoi(k));

  GridReport report = run_grid(base, schemes, contexts, ks);
  std::cout << report.to_table();
  if (!out_path.empty()) write_text(out_path, report.to_tsv());
  return 0;
}

int cmd_compare(const std::string& report_path, const std::string& dataset,
                const std::string& baseline, const std::string& candidate) {
  std::ifstream in(report_path);
  if (!in) throw IoError("cannot open " + report_path);
  GridReport report = GridReport::from_tsv(in);
  ZTest t = compare_significance(report, parse_selector(baseline),
                                 parse_selector(candidate), dataset);
  std::cout << "z\t" << format_double(t.z) << "\np_two_tailed\t"
            << format_double(t.p) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint-context distributional semantic models"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file; one [section] per subcommand. "
                 "Command-line flags override file values");

  CorpusFlags corpus_flags;
  std::string out_path, in_path, space_path, dataset_path, totals_path;
  std::string dataset_fmt = "verbsim", cache_dir, report_path, dataset_name;
  std::string baseline, candidate;
  std::size_t top_n = 10000;
  int svd_k = 200;
  std::uint64_t seed = 42, min_freq = 100;
  std::vector<std::string> dataset_args;
  std::vector<std::string> scheme_args = {"bow", "single", "joint"};
  std::vector<std::size_t> contexts = {10000, 50000, 100000};
  std::vector<std::string> k_args = {"none"};

  auto* extract = app.add_subcommand(
      "extract", "Dump (target, feature, count) pairs as TSV");
  add_corpus_flags(extract, corpus_flags);
  extract->add_option("-o,--out", out_path, "Output file (default: stdout)");

  auto* build = app.add_subcommand(
      "build", "Count a corpus into a JDSM1 matrix (+ .totals sidecar)");
  add_corpus_flags(build, corpus_flags);
  build->add_option("-o,--out", out_path, "Output matrix path")->required();

  auto* select =
      app.add_subcommand("select", "Keep the top-N contexts by frequency");
  select->add_option("-i,--in", in_path, "Input JDSM1 matrix")->required();
  select->add_option("-n,--top", top_n, "Context count to keep")
      ->capture_default_str();
  select->add_option("-o,--out", out_path, "Output matrix path")->required();

  auto* weight = app.add_subcommand("weight", "PPMI-weight a count matrix");
  weight->add_option("-i,--in", in_path, "Input JDSM1 matrix")->required();
  weight->add_option("-o,--out", out_path, "Output JDSM1W path")->required();

  auto* reduce = app.add_subcommand(
      "reduce", "Truncated SVD of a weighted matrix (rows become U*Sigma)");
  reduce->add_option("-i,--in", in_path, "Input JDSM1W matrix")->required();
  reduce->add_option("--k", svd_k, "Latent dimensions")->capture_default_str();
  reduce->add_option("--seed", seed, "Range-finder seed")
      ->capture_default_str();
  reduce->add_option("-o,--out", out_path, "Output JDSME1 path")->required();

  auto* eval = app.add_subcommand(
      "eval", "Spearman correlation of a space against a similarity dataset");
  eval->add_option("--space", space_path, "JDSM1W or JDSME1 file")->required();
  eval->add_option("--dataset", dataset_path, "Dataset file")->required();
  eval->add_option("--format", dataset_fmt, "Dataset format")
      ->check(CLI::IsMember({"verbsim", "simlex"}))
      ->capture_default_str();
  eval->add_option("--min-freq", min_freq,
                   "Corpus-frequency floor for dataset words")
      ->capture_default_str();
  eval->add_option("--totals", totals_path,
                   "Totals sidecar (default: <space>.totals)");

  auto* grid = app.add_subcommand(
      "grid", "Run the scheme x contexts x k experiment grid");
  add_corpus_flags(grid, corpus_flags, /*with_scheme=*/false);
  grid->add_option("--dataset", dataset_args,
                   "Dataset spec name=format:path (repeatable)")
      ->required();
  grid->add_option("--schemes", scheme_args, "Schemes to run")
      ->capture_default_str();
  grid->add_option("--contexts", contexts, "Context counts to run")
      ->capture_default_str();
  grid->add_option("--k", k_args, "SVD dimensions, 'none' for no reduction")
      ->capture_default_str();
  grid->add_option("--seed", seed, "SVD seed")->capture_default_str();
  grid->add_option("--min-freq", min_freq, "Frequency floor")
      ->capture_default_str();
  grid->add_option("--cache", cache_dir, "Cache directory for intermediates");
  grid->add_option("-o,--out", out_path, "Report TSV path");

  auto* compare = app.add_subcommand(
      "compare", "Fisher r-to-z between two grid report rows");
  compare->add_option("--report", report_path, "Report TSV from 'grid'")
      ->required();
  compare->add_option("--dataset", dataset_name, "Dataset column value")
      ->required();
  compare->add_option("--baseline", baseline, "Row selector scheme,n,k")
      ->required();
  compare->add_option("--candidate", candidate, "Row selector scheme,n,k")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (extract->parsed()) return cmd_extract(corpus_flags, out_path);
    if (build->parsed()) return cmd_build(corpus_flags, out_path);
    if (select->parsed()) return cmd_select(in_path, top_n, out_path);
    if (weight->parsed()) return cmd_weight(in_path, out_path);
    if (reduce->parsed()) return cmd_reduce(in_path, svd_k, seed, out_path);
    if (eval->parsed())
      return cmd_eval(space_path, dataset_path, dataset_fmt, min_freq,
                      totals_path);
    if (grid->parsed())
      return cmd_grid(corpus_flags, dataset_args, scheme_args, contexts,
                      k_args, seed, min_freq, cache_dir, out_path);
    if (compare->parsed())
      return cmd_compare(report_path, dataset_name, baseline, candidate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return jointdsm::error_exit_code(e);
  }
  return 1;
}
