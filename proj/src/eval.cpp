#include "jointdsm/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "jointdsm/errors.hpp"
#include "jointdsm/gzstream.hpp"

namespace jointdsm {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DegenerateInput("constant input: correlation undefined");
  return sxy / std::sqrt(sxx * syy);
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

void check_no_duplicates(const SimilarityDataset& ds) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const ScoredPair& p : ds.pairs) {
    auto key = p.word1 <= p.word2 ? std::make_pair(p.word1, p.word2)
                                  : std::make_pair(p.word2, p.word1);
    if (!seen.insert(key).second)
      throw ParseError(0, "duplicate pair " + p.word1 + " / " + p.word2 +
                              " in " + ds.name);
  }
}

// Shared coverage/scoring walk; `row_of` returns false when a word has no
// row in the space.
template <typename RowOf, typename CosineOf>
EvalResult evaluate_impl(const SimilarityDataset& ds,
                         const TargetTotals& totals, std::uint64_t min_freq,
                         RowOf&& row_of, CosineOf&& cosine_of) {
  EvalResult res;
  res.n_total = ds.pairs.size();
  std::vector<double> gold, model;
  for (const ScoredPair& p : ds.pairs) {
    bool missing = false;
    for (const std::string* w : {&p.word1, &p.word2}) {
      if (!row_of(*w)) {
        res.skipped.push_back({p.word1, p.word2, "missing: " + *w, true});
        missing = true;
        break;
      }
      auto it = totals.find(*w);
      std::uint64_t freq = it == totals.end() ? 0 : it->second;
      if (freq < min_freq) {
        res.skipped.push_back({p.word1, p.word2,
                               "below-min-freq(" + std::to_string(min_freq) +
                                   "): " + *w + "=" + std::to_string(freq),
                               true});
        missing = true;
        break;
      }
    }
    if (missing) continue;
    auto [score, zero_row] = cosine_of(p.word1, p.word2);
    if (zero_row)
      res.skipped.push_back(
          {p.word1, p.word2, "zero-vector row, cosine taken as 0", false});
    gold.push_back(p.gold);
    model.push_back(score);
    ++res.n_covered;
  }
  if (res.n_covered >= 2) res.rho = spearman(gold, model);
  return res;
}

}  // namespace

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw DimensionMismatch("cosine: " + std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()));
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double cosine_sparse(std::span<const WeightCell> u,
                     std::span<const WeightCell> v) {
  double dot = 0.0, nu = 0.0, nv = 0.0;
  std::size_t i = 0, j = 0;
  while (i < u.size() && j < v.size()) {
    if (u[i].context == v[j].context) {
      dot += u[i].weight * v[j].weight;
      ++i;
      ++j;
    } else if (u[i].context < v[j].context) {
      ++i;
    } else {
      ++j;
    }
  }
  for (const WeightCell& c : u) nu += c.weight * c.weight;
  for (const WeightCell& c : v) nv += c.weight * c.weight;
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::vector<double> fractional_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&xs](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw DimensionMismatch("spearman needs two equal-length lists (>= 2)");
  auto rx = fractional_ranks(xs);
  auto ry = fractional_ranks(ys);
  return pearson(rx, ry);
}

SimilarityDataset load_dataset(const std::string& path,
                               DatasetFormat format) {
  GzInputFile in(path);
  return parse_dataset(in, format,
                       std::filesystem::path(path).filename().string());
}

SimilarityDataset parse_dataset(std::istream& in, DatasetFormat format,
                                const std::string& name) {
  SimilarityDataset ds;
  ds.name = name;
  std::string line;
  std::size_t line_no = 0;

  if (format == DatasetFormat::VerbSim) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream row(line);
      std::string w1, w2, score;
      if (!(row >> w1)) continue;  // blank line
      if (!(row >> w2 >> score))
        throw ParseError(line_no, "expected 'word1 word2 score'");
      double gold;
      if (!parse_double(score, gold))
        throw ParseError(line_no, "bad score '" + score + "'");
      ds.pairs.push_back(
          {lowercase(w1) + "-v", lowercase(w2) + "-v", gold});
    }
  } else {
    bool header_seen = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (!header_seen) {
        header_seen = true;  // published file starts with a column header
        if (line.rfind("word1", 0) == 0) continue;
      }
      auto cols = split_tabs(line);
      if (cols.size() < 4)
        throw ParseError(line_no, "expected >= 4 tab-separated columns");
      if (cols[2] != "V") continue;
      double gold;
      if (!parse_double(cols[3], gold))
        throw ParseError(line_no, "bad score '" + cols[3] + "'");
      ds.pairs.push_back(
          {lowercase(cols[0]) + "-v", lowercase(cols[1]) + "-v", gold});
    }
  }

  if (ds.pairs.empty()) throw EmptyDataset("no pairs in " + ds.name);
  check_no_duplicates(ds);
  return ds;
}

EvalResult evaluate(const WeightedMatrix& space, const SimilarityDataset& ds,
                    const TargetTotals& totals, std::uint64_t min_freq) {
  const WeightedMatrix* m = &space;
  WeightedMatrix indexed;
  if (space.row_offsets.size() != space.targets.size() + 1) {
    indexed = space;
    indexed.build_row_index();
    m = &indexed;
  }
  auto row = [m](const std::string& w) -> std::span<const WeightCell> {
    auto id = m->targets.find(w);
    if (!id) return {};
    return {m->cells.data() + m->row_offsets[*id],
            m->row_offsets[*id + 1] - m->row_offsets[*id]};
  };
  return evaluate_impl(
      ds, totals, min_freq,
      [m](const std::string& w) { return m->targets.find(w).has_value(); },
      [&row](const std::string& a, const std::string& b) {
        auto ra = row(a), rb = row(b);
        bool zero = ra.empty() || rb.empty();
        return std::make_pair(zero ? 0.0 : cosine_sparse(ra, rb), zero);
      });
}

EvalResult evaluate(const EmbeddingMatrix& space, const SimilarityDataset& ds,
                    const TargetTotals& totals, std::uint64_t min_freq) {
  return evaluate_impl(
      ds, totals, min_freq,
      [&space](const std::string& w) {
        return space.targets.find(w).has_value();
      },
      [&space](const std::string& a, const std::string& b) {
        auto ia = space.targets.find(a);
        auto ib = space.targets.find(b);
        Eigen::VectorXd ra = space.rows.row(*ia);
        Eigen::VectorXd rb = space.rows.row(*ib);
        bool zero = ra.norm() == 0.0 || rb.norm() == 0.0;
        double score =
            zero ? 0.0
                 : cosine(std::span<const double>(ra.data(), ra.size()),
                          std::span<const double>(rb.data(), rb.size()));
        return std::make_pair(score, zero);
      });
}

ZTest fisher_r_to_z(double r1, std::size_t n1, double r2, std::size_t n2) {
  if (std::abs(r1) >= 1.0 || std::abs(r2) >= 1.0)
    throw DomainError("fisher_r_to_z needs |r| < 1");
  if (n1 < 4 || n2 < 4)
    throw DomainError("fisher_r_to_z needs n >= 4");
  double z1 = std::atanh(r1);
  double z2 = std::atanh(r2);
  double se = std::sqrt(1.0 / static_cast<double>(n1 - 3) +
                        1.0 / static_cast<double>(n2 - 3));
  ZTest out;
  out.z = (z1 - z2) / se;
  out.p = std::erfc(std::abs(out.z) / std::numbers::sqrt2);
  return out;
}

}  // namespace jointdsm
