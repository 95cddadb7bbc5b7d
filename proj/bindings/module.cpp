// Python bindings for the main pipeline operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jointdsm/errors.hpp"
#include "jointdsm/io.hpp"
#include "jointdsm/pipeline.hpp"

namespace py = pybind11;
using namespace jointdsm;

namespace {

ConllFormat format_of(const std::string& s) {
  if (s == "conllx") return ConllFormat::ConllX;
  if (s == "conllu") return ConllFormat::ConllU;
  throw Error("unknown corpus format '" + s + "'");
}

Tagset tagset_of(const std::string& s) {
  if (s == "upos") return Tagset::Upos;
  if (s == "ptb") return Tagset::Ptb;
  throw Error("unknown tagset '" + s + "'");
}

DatasetFormat dataset_format_of(const std::string& s) {
  if (s == "verbsim") return DatasetFormat::VerbSim;
  if (s == "simlex") return DatasetFormat::SimLex;
  throw Error("unknown dataset format '" + s + "'");
}

CooccurrenceMatrix py_count_corpus(const std::vector<std::string>& paths,
                                   const std::string& scheme,
                                   const std::string& format,
                                   const std::string& tagset, bool strict,
                                   const std::string& labelmap,
                                   const std::string& bow_targets) {
  ExperimentConfig cfg;
  cfg.corpus_paths = paths;
  auto sk = scheme_from_name(scheme);
  if (!sk) throw Error("unknown scheme '" + scheme + "'");
  cfg.scheme = *sk;
  cfg.format = format_of(format);
  cfg.tagset = tagset_of(tagset);
  cfg.strict = strict;
  cfg.labelmap_path = labelmap;
  cfg.bow_target_letters = bow_targets;
  return count_corpus(cfg);
}

py::dict eval_result_dict(const EvalResult& r) {
  py::dict out;
  out["rho"] = r.rho ? py::object(py::float_(*r.rho)) : py::none();
  out["covered"] = r.n_covered;
  out["total"] = r.n_total;
  py::list skipped;
  for (const SkipEntry& s : r.skipped)
    skipped.append(py::make_tuple(s.word1, s.word2, s.reason, s.excluded));
  out["skipped"] = skipped;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "count-based DSMs over dependency contexts";

  py::register_exception<Error>(m, "JdsmError");

  py::class_<CooccurrenceMatrix>(m, "CountMatrix")
      .def_property_readonly(
          "n_targets", [](const CooccurrenceMatrix& m_) { return m_.targets.size(); })
      .def_property_readonly(
          "n_contexts", [](const CooccurrenceMatrix& m_) { return m_.contexts.size(); })
      .def_property_readonly(
          "nnz", [](const CooccurrenceMatrix& m_) { return m_.cells.size(); })
      .def("targets",
           [](const CooccurrenceMatrix& m_) { return m_.targets.texts(); })
      .def("contexts",
           [](const CooccurrenceMatrix& m_) { return m_.contexts.texts(); })
      .def("cells",
           [](const CooccurrenceMatrix& m_) {
             py::list out;
             for (const CountCell& c : m_.cells)
               out.append(py::make_tuple(m_.targets.text(c.target),
                                         m_.contexts.text(c.context),
                                         c.count));
             return out;
           })
      .def("totals",
           [](const CooccurrenceMatrix& m_) { return m_.target_totals; })
      .def("total_pairs", &CooccurrenceMatrix::total_pairs);

  py::class_<WeightedMatrix>(m, "WeightedMatrix")
      .def_property_readonly(
          "n_targets", [](const WeightedMatrix& w) { return w.targets.size(); })
      .def_property_readonly(
          "n_contexts", [](const WeightedMatrix& w) { return w.contexts.size(); })
      .def_property_readonly(
          "nnz", [](const WeightedMatrix& w) { return w.cells.size(); })
      .def("targets",
           [](const WeightedMatrix& w) { return w.targets.texts(); })
      .def("contexts",
           [](const WeightedMatrix& w) { return w.contexts.texts(); })
      .def("cells", [](const WeightedMatrix& w) {
        py::list out;
        for (const WeightCell& c : w.cells)
          out.append(py::make_tuple(w.targets.text(c.target),
                                    w.contexts.text(c.context), c.weight));
        return out;
      });

  py::class_<EmbeddingMatrix>(m, "Embedding")
      .def_property_readonly("k",
                             [](const EmbeddingMatrix& e) { return e.k; })
      .def_property_readonly("rows",
                             [](const EmbeddingMatrix& e) { return e.rows; })
      .def("targets",
           [](const EmbeddingMatrix& e) { return e.targets.texts(); })
      .def("row", [](const EmbeddingMatrix& e, const std::string& word) {
        auto id = e.targets.find(word);
        if (!id) throw py::key_error(word);
        return Eigen::VectorXd(e.rows.row(*id));
      });

  m.def("count_corpus", &py_count_corpus, py::arg("corpus_paths"),
        py::arg("scheme") = "joint", py::arg("format") = "conllu",
        py::arg("tagset") = "upos", py::arg("strict") = false,
        py::arg("labelmap") = "", py::arg("bow_targets") = "v",
        "Stream CoNLL file(s) into a canonical count matrix");

  m.def("select_top", &select_top_contexts, py::arg("matrix"), py::arg("n"),
        "Keep the n most frequent context columns");

  m.def("ppmi", &ppmi, py::arg("matrix"),
        "Positive PMI weights (natural log), zero cells dropped");

  m.def("truncated_svd", &truncated_svd, py::arg("weighted"), py::arg("k"),
        py::arg("seed") = 42,
        "Rank-k embedding rows U*Sigma via seeded randomized SVD");

  m.def(
      "load_dataset",
      [](const std::string& path, const std::string& format) {
        SimilarityDataset ds = load_dataset(path, dataset_format_of(format));
        py::list out;
        for (const ScoredPair& p : ds.pairs)
          out.append(py::make_tuple(p.word1, p.word2, p.gold));
        return out;
      },
      py::arg("path"), py::arg("format") = "verbsim");

  m.def(
      "evaluate",
      [](const WeightedMatrix& space, const std::string& dataset_path,
         const std::string& format, const TargetTotals& totals,
         std::uint64_t min_freq) {
        return eval_result_dict(
            evaluate(space, load_dataset(dataset_path, dataset_format_of(format)),
                     totals, min_freq));
      },
      py::arg("space"), py::arg("dataset_path"),
      py::arg("format") = "verbsim", py::arg("totals"),
      py::arg("min_freq") = 100);

  m.def(
      "evaluate",
      [](const EmbeddingMatrix& space, const std::string& dataset_path,
         const std::string& format, const TargetTotals& totals,
         std::uint64_t min_freq) {
        return eval_result_dict(
            evaluate(space, load_dataset(dataset_path, dataset_format_of(format)),
                     totals, min_freq));
      },
      py::arg("space"), py::arg("dataset_path"),
      py::arg("format") = "verbsim", py::arg("totals"),
      py::arg("min_freq") = 100);

  m.def(
      "cosine",
      [](const std::vector<double>& u, const std::vector<double>& v) {
        return cosine(u, v);
      },
      py::arg("u"), py::arg("v"));

  m.def(
      "spearman",
      [](const std::vector<double>& xs, const std::vector<double>& ys) {
        return spearman(xs, ys);
      },
      py::arg("xs"), py::arg("ys"));

  m.def(
      "fisher_r_to_z",
      [](double r1, std::size_t n1, double r2, std::size_t n2) {
        ZTest t = fisher_r_to_z(r1, n1, r2, n2);
        return py::make_tuple(t.z, t.p);
      },
      py::arg("r1"), py::arg("n1"), py::arg("r2"), py::arg("n2"));

  m.def("save_counts", &save_counts, py::arg("matrix"), py::arg("path"));
  m.def("load_counts", &load_counts, py::arg("path"));
  m.def("save_weighted", &save_weighted, py::arg("matrix"), py::arg("path"));
  m.def("load_weighted", &load_weighted, py::arg("path"));
  m.def("save_embedding", &save_embedding, py::arg("embedding"),
        py::arg("path"));
  m.def("load_embedding", &load_embedding, py::arg("path"));
}
