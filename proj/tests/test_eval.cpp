#include "jointdsm/eval.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "jointdsm/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace jointdsm;

TEST_CASE("cosine basics") {
  std::vector<double> x = {0.3, -1.2, 4.0};
  CHECK(cosine(x, x) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> e1 = {1, 0}, e2 = {0, 1};
  CHECK(cosine(e1, e2) == 0.0);

  std::vector<double> u = {1, 2, 3}, v = {4, 5, 6};
  CHECK(cosine(u, v) ==
        doctest::Approx(32.0 / (std::sqrt(14.0) * std::sqrt(77.0)))
            .epsilon(1e-12));
  CHECK(cosine(u, v) == doctest::Approx(0.974631846).epsilon(1e-9));

  std::vector<double> zero = {0, 0, 0};
  CHECK(cosine(u, zero) == 0.0);
  std::vector<double> short_v = {1, 2};
  CHECK_THROWS_AS(cosine(u, short_v), DimensionMismatch);
}

TEST_CASE("cosine symmetry and scale invariance") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng() % 10;
    std::vector<double> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = gauss(rng);
      v[i] = gauss(rng);
    }
    double c = cosine(u, v);
    CHECK(c == cosine(v, u));
    CHECK(std::abs(c) <= 1.0 + 1e-12);
    double a = scale(rng), b = scale(rng);
    std::vector<double> ua(n), vb(n);
    for (std::size_t i = 0; i < n; ++i) {
      ua[i] = a * u[i];
      vb[i] = b * v[i];
    }
    CHECK(std::abs(cosine(ua, vb) - c) <= 1e-12);
  }
}

TEST_CASE("sparse cosine agrees with the dense formula") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 30);
    for (int j = 0; j < 30; ++j) {
      if (rng() % 2) d(0, j) = static_cast<double>(rng() % 7) + 0.5;
      if (rng() % 2) d(1, j) = static_cast<double>(rng() % 7) + 0.5;
    }
    WeightedMatrix w = testutil::weighted_from_dense(d);
    auto row = [&w](std::uint32_t r) {
      return std::span<const WeightCell>(
          w.cells.data() + w.row_offsets[r],
          w.row_offsets[r + 1] - w.row_offsets[r]);
    };
    double expected = oracles::dense_cosine(d.row(0), d.row(1));
    CHECK(std::abs(cosine_sparse(row(0), row(1)) - expected) <= 1e-12);
  }
}

TEST_CASE("spearman basics") {
  std::vector<double> asc = {1, 2, 3};
  CHECK(spearman(asc, asc) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> desc = {3, 2, 1};
  CHECK(spearman(asc, desc) == doctest::Approx(-1.0).epsilon(1e-12));

  std::vector<double> xs = {1, 2, 2, 4}, ys = {1, 3, 2, 4};
  CHECK(spearman(xs, ys) ==
        doctest::Approx(oracles::rank_spearman(xs, ys)).epsilon(1e-12));

  std::vector<double> constant = {5, 5, 5};
  CHECK_THROWS_AS(spearman(asc, constant), DegenerateInput);
  CHECK_THROWS_AS(spearman(constant, asc), DegenerateInput);
}

TEST_CASE("fractional ranks match the brute-force oracle") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + rng() % 40;
    std::vector<double> xs(n);
    for (double& x : xs) x = static_cast<double>(rng() % 8);  // many ties
    auto fast = fractional_ranks(xs);
    auto slow = oracles::brute_force_ranks(xs);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(fast[i] - slow[i]) <= 1e-12);
  }
}

TEST_CASE("spearman is invariant under strictly monotone maps") {
  std::mt19937_64 rng(44);
  std::normal_distribution<double> gauss;
  std::vector<std::function<double(double)>> maps = {
      [](double x) { return 3.0 * x + 7.0; },
      [](double x) { return std::exp(x); },
      [](double x) { return std::atan(x); },
      [](double x) { return x * x * x; },
  };
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 5 + rng() % 30;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = gauss(rng);
      ys[i] = gauss(rng);
    }
    double base = spearman(xs, ys);
    auto& fx = maps[rng() % maps.size()];
    auto& fy = maps[rng() % maps.size()];
    std::vector<double> mxs(n), mys(n);
    for (std::size_t i = 0; i < n; ++i) {
      mxs[i] = fx(xs[i]);
      mys[i] = fy(ys[i]);
    }
    CHECK(std::abs(spearman(mxs, mys) - base) <= 1e-12);
  }
}

TEST_CASE("verbsim dataset loading") {
  std::istringstream in(
      "Divide Split 7.5\n"
      "brag boast 8.1\n");
  SimilarityDataset ds = parse_dataset(in, DatasetFormat::VerbSim, "toy");
  REQUIRE(ds.pairs.size() == 2);
  CHECK(ds.pairs[0].word1 == "divide-v");
  CHECK(ds.pairs[0].word2 == "split-v");
  CHECK(ds.pairs[0].gold == 7.5);

  std::istringstream bad("divide split abc\n");
  CHECK_THROWS_AS(parse_dataset(bad, DatasetFormat::VerbSim, "toy"),
                  ParseError);
  std::istringstream dup("a b 1\nb a 2\n");
  CHECK_THROWS_AS(parse_dataset(dup, DatasetFormat::VerbSim, "toy"),
                  ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_dataset(empty, DatasetFormat::VerbSim, "toy"),
                  EmptyDataset);
}

TEST_CASE("simlex loading keeps only verb rows") {
  std::istringstream in(
      "word1\tword2\tPOS\tSimLex999\tconc(w1)\tconc(w2)\tconcQ\tAssoc(USF)\t"
      "SimAssoc333\tSD(SimLex)\n"
      "old\tnew\tA\t1.58\t2.7\t2.8\t2\t7.2\t1\t0.4\n"
      "Vanish\tDisappear\tV\t9.8\t1.4\t1.2\t1\t6.2\t1\t0.5\n"
      "book\tpaper\tN\t5.0\t4.0\t4.1\t4\t1.0\t0\t0.9\n"
      "take\tsteal\tV\t6.0\t2.0\t2.1\t2\t0.5\t0\t1.1\n");
  SimilarityDataset ds = parse_dataset(in, DatasetFormat::SimLex, "toy");
  REQUIRE(ds.pairs.size() == 2);
  CHECK(ds.pairs[0].word1 == "vanish-v");
  CHECK(ds.pairs[0].word2 == "disappear-v");
  CHECK(ds.pairs[0].gold == 9.8);
  CHECK(ds.pairs[1].word1 == "take-v");
}

TEST_CASE("bundled dataset renderings have the published pair counts") {
  SimilarityDataset verbsim = load_dataset(
      testutil::data_path("datasets/verbsim.txt"), DatasetFormat::VerbSim);
  CHECK(verbsim.pairs.size() == 130);
  SimilarityDataset simlex = load_dataset(
      testutil::data_path("datasets/simlex999.tsv"), DatasetFormat::SimLex);
  CHECK(simlex.pairs.size() == 222);
}

TEST_CASE("evaluate: coverage filter and skip reasons") {
  // "rare-v" is below the frequency floor, "odd-v" missing entirely,
  // "empty-v" has an all-zero row
  Eigen::MatrixXd d(4, 4);
  d << 1, 2, 0, 0,
       1, 2, 1, 0,
       0, 0, 0, 0,
       0, 1, 1, 1;
  WeightedMatrix plain = testutil::weighted_from_dense(d);
  WeightedMatrix space;
  space.targets.intern("walk-v");
  space.targets.intern("stroll-v");
  space.targets.intern("empty-v");
  space.targets.intern("rare-v");
  space.contexts = plain.contexts;
  space.cells = plain.cells;
  space.build_row_index();

  TargetTotals totals{{"walk-v", 500}, {"stroll-v", 500}, {"empty-v", 500},
                      {"rare-v", 3}};

  SimilarityDataset ds;
  ds.name = "toy";
  ds.pairs = {{"walk-v", "stroll-v", 9.0},
              {"walk-v", "rare-v", 5.0},
              {"walk-v", "odd-v", 4.0},
              {"walk-v", "empty-v", 2.0},
              {"stroll-v", "empty-v", 1.0}};

  EvalResult r = evaluate(space, ds, totals, 100);
  CHECK(r.n_total == 5);
  CHECK(r.n_covered == 3);  // zero-row pairs still score (as 0)
  REQUIRE(r.skipped.size() == 4);
  CHECK(r.skipped[0].reason.find("below-min-freq") != std::string::npos);
  CHECK(r.skipped[1].reason.find("missing") != std::string::npos);
  CHECK_FALSE(r.skipped[2].excluded);  // zero-vector note
  CHECK(r.rho.has_value());
}

TEST_CASE("evaluate: full exclusion leaves rho undefined") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Ones(2, 2);
  WeightedMatrix space;
  space.targets.intern("a-v");
  space.targets.intern("b-v");
  space.contexts.intern("c0");
  space.contexts.intern("c1");
  space.cells = testutil::weighted_from_dense(d).cells;
  space.build_row_index();
  TargetTotals totals{{"a-v", 1}, {"b-v", 1}};
  SimilarityDataset ds;
  ds.name = "toy";
  ds.pairs = {{"a-v", "b-v", 1.0}};
  EvalResult r = evaluate(space, ds, totals, 100);
  CHECK(r.n_covered == 0);
  CHECK_FALSE(r.rho.has_value());
}

TEST_CASE("evaluate: perfectly aligned space gives rho 1") {
  // embedding rows placed so cosine order equals gold order
  EmbeddingMatrix e;
  e.k = 2;
  e.rows.resize(4, 2);
  e.rows << 1.0, 0.0,
            1.0, 0.1,
            1.0, 0.5,
            1.0, 2.0;
  for (const char* w : {"a-v", "b-v", "c-v", "d-v"}) e.targets.intern(w);
  TargetTotals totals{{"a-v", 900}, {"b-v", 900}, {"c-v", 900}, {"d-v", 900}};
  SimilarityDataset ds;
  ds.name = "toy";
  ds.pairs = {{"a-v", "b-v", 9.0}, {"a-v", "c-v", 7.0}, {"a-v", "d-v", 2.0}};
  EvalResult r = evaluate(e, ds, totals, 100);
  REQUIRE(r.rho.has_value());
  CHECK(*r.rho == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evaluate is invariant under uniform space scaling") {
  std::mt19937_64 rng(45);
  Eigen::MatrixXd d = oracles::planted_sparse_matrix(12, 30, 8, 0.8, rng);
  WeightedMatrix w = testutil::weighted_from_dense(d);
  TargetTotals totals;
  SimilarityDataset ds;
  ds.name = "toy";
  for (const std::string& t : w.targets.texts()) totals[t] = 1000;
  for (int i = 0; i < 6; ++i)
    ds.pairs.push_back({"t" + std::to_string(i), "t" + std::to_string(i + 4),
                        static_cast<double>(rng() % 100)});
  EvalResult base = evaluate(w, ds, totals, 1);

  WeightedMatrix scaled = w;
  for (WeightCell& c : scaled.cells) c.weight *= 17.5;
  EvalResult after = evaluate(scaled, ds, totals, 1);
  REQUIRE(base.rho.has_value());
  REQUIRE(after.rho.has_value());
  CHECK(std::abs(*base.rho - *after.rho) <= 1e-12);
}

TEST_CASE("fisher r-to-z") {
  SUBCASE("equal correlations give z = 0, p = 1 exactly") {
    ZTest t = fisher_r_to_z(0.5, 30, 0.5, 300);
    CHECK(t.z == 0.0);
    CHECK(t.p == 1.0);
  }
  SUBCASE("hand-checked example at n = 107") {
    ZTest t = fisher_r_to_z(0.6, 107, 0.4, 107);
    double expected_z = (std::atanh(0.6) - std::atanh(0.4)) /
                        std::sqrt(2.0 / 104.0);
    CHECK(t.z == doctest::Approx(expected_z).epsilon(1e-12));
    CHECK(t.p == doctest::Approx(oracles::normal_two_tailed_quadrature(t.z))
                     .epsilon(1e-9));
  }
  SUBCASE("p agrees with the quadrature oracle across the range") {
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> r(-0.95, 0.95);
    for (int trial = 0; trial < 50; ++trial) {
      ZTest t = fisher_r_to_z(r(rng), 10 + rng() % 300, r(rng),
                              10 + rng() % 300);
      double oracle_p = oracles::normal_two_tailed_quadrature(t.z);
      CHECK(std::abs(t.p - oracle_p) <= 1e-8);
    }
  }
  SUBCASE("domain checks") {
    CHECK_THROWS_AS(fisher_r_to_z(1.0, 30, 0.5, 30), DomainError);
    CHECK_THROWS_AS(fisher_r_to_z(0.5, 3, 0.5, 30), DomainError);
  }
}
