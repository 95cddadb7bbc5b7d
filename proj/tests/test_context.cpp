#include "jointdsm/context.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

#include "jointdsm/errors.hpp"
#include "jointdsm/gzstream.hpp"
#include "test_util.hpp"

using namespace jointdsm;
using testutil::sentence_from;

namespace {

const LabelMap kUd = LabelMap::ud_default();

ParsedSentence golden() {
  GzInputFile in(testutil::data_path("golden_acknowledge.conllu"));
  ConllReader reader(in, {ConllFormat::ConllU, Tagset::Upos, true}, "golden");
  ParsedSentence s;
  REQUIRE(reader.next(s));
  return s;
}

const char* kBeganUd =
    "1\tThe\tthe\tDET\tDT\t_\t2\tdet\n"
    "2\toperation\toperation\tNOUN\tNN\t_\t3\tnsubj\n"
    "3\tbegan\tbegin\tVERB\tVBD\t_\t0\troot\n"
    "4\ton\ton\tADP\tIN\t_\t5\tcase\n"
    "5\tThursday\tThursday\tPROPN\tNNP\t_\t3\tobl\n"
    "6\t.\t.\tPUNCT\t.\t_\t3\tpunct\n";

const char* kBeganSd =
    "1\tThe\tthe\tDT\tDT\t_\t2\tdet\n"
    "2\toperation\toperation\tNN\tNN\t_\t3\tnsubj\n"
    "3\tbegan\tbegin\tVB\tVBD\t_\t0\troot\n"
    "4\ton\ton\tIN\tIN\t_\t3\tprep\n"
    "5\tThursday\tThursday\tNNP\tNNP\t_\t4\tpobj\n"
    "6\t.\t.\t.\t.\t_\t3\tpunct\n";

}  // namespace

TEST_CASE("joint context of the worked example sentence") {
  auto pairs = extract_joint(golden(), kUd);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].target == "acknowledge-v");
  CHECK(pairs[0].feature == "dictator-n.subj+____+failure-n.obj");
}

TEST_CASE("single dependencies of the worked example sentence") {
  auto pairs = extract_single_dep(golden(), kUd);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].target == "acknowledge-v");
  CHECK(pairs[0].feature == "dictator-n.subj");
  CHECK(pairs[1].feature == "failure-n.obj");
}

TEST_CASE("complement encoding, noun-headed (UD style)") {
  ParsedSentence s = sentence_from(kBeganUd);
  auto single = extract_single_dep(s, kUd);
  REQUIRE(single.size() == 2);
  CHECK(single[1].target == "begin-v");
  CHECK(single[1].feature == "on-i_thursday-n.comp");
  auto joint = extract_joint(s, kUd);
  REQUIRE(joint.size() == 1);
  CHECK(joint[0].feature == "operation-n.subj+____+on-i_thursday-n.comp");
}

TEST_CASE("complement encoding, preposition-headed (classic style)") {
  ParsedSentence s =
      sentence_from(kBeganSd, ConllFormat::ConllX, Tagset::Ptb);
  LabelMap sd = LabelMap::from_file(testutil::data_path("labelmaps/sd.labelmap"));
  auto joint = extract_joint(s, sd);
  REQUIRE(joint.size() == 1);
  CHECK(joint[0].target == "begin-v");
  CHECK(joint[0].feature == "operation-n.subj+____+on-i_thursday-n.comp");
}

TEST_CASE("three-argument joint context") {
  ParsedSentence s = sentence_from(
      "1\tThe\tthe\tDET\tDT\t_\t2\tdet\n"
      "2\trecruits\trecruit\tNOUN\tNNS\t_\t3\tnsubj\n"
      "3\tbegan\tbegin\tVERB\tVBD\t_\t0\troot\n"
      "4\ttheir\ttheir\tPRON\tPRP$\t_\t5\tnmod:poss\n"
      "5\ttraining\ttraining\tNOUN\tNN\t_\t3\tobj\n"
      "6\ton\ton\tADP\tIN\t_\t8\tcase\n"
      "7\tthe\tthe\tDET\tDT\t_\t8\tdet\n"
      "8\tstreet\tstreet\tNOUN\tNN\t_\t3\tobl\n"
      "9\t.\t.\tPUNCT\t.\t_\t3\tpunct\n");
  auto joint = extract_joint(s, kUd);
  REQUIRE(joint.size() == 1);
  CHECK(joint[0].feature ==
        "recruit-n.subj+____+training-n.obj+on-i_street-n.comp");
}

TEST_CASE("resolve_arguments on the worked example") {
  ParsedSentence s = golden();
  auto args = resolve_arguments(s, 4, kUd);  // "acknowledged"
  REQUIRE(args.size() == 2);
  CHECK(args[0].filler == "dictator-n");
  CHECK(args[0].rel == RelKind::Subj);
  CHECK(args[1].filler == "failure-n");
  CHECK(args[1].rel == RelKind::Obj);
}

TEST_CASE("clausal-only dependents resolve to nothing") {
  ParsedSentence s = sentence_from(
      "1\tHe\the\tPRON\tPRP\t_\t2\tnsubj\n"
      "2\tsaid\tsay\tVERB\tVBD\t_\t0\troot\n"
      "3\tthat\tthat\tSCONJ\tIN\t_\t5\tmark\n"
      "4\tshe\tshe\tPRON\tPRP\t_\t5\tnsubj\n"
      "5\tleft\tleave\tVERB\tVBD\t_\t2\tccomp\n");
  // "said": pronoun subject is not a content word, ccomp is unmapped.
  auto args = resolve_arguments(s, 1, kUd);
  CHECK(args.empty());
}

TEST_CASE("verb with a single argument emits no joint feature") {
  ParsedSentence s = sentence_from(
      "1\tdogs\tdog\tNOUN\tNNS\t_\t2\tnsubj\n"
      "2\tsleep\tsleep\tVERB\tVBP\t_\t0\troot\n");
  CHECK(extract_joint(s, kUd).empty());
  CHECK(extract_single_dep(s, kUd).size() == 1);
}

TEST_CASE("passive subject and subtype labels") {
  ParsedSentence s = sentence_from(
      "1\tfailures\tfailure\tNOUN\tNNS\t_\t3\tnsubj:pass\n"
      "2\twere\tbe\tAUX\tVBD\t_\t3\taux:pass\n"
      "3\tacknowledged\tacknowledge\tVERB\tVBN\t_\t0\troot\n"
      "4\ton\ton\tADP\tIN\t_\t5\tcase\n"
      "5\tMonday\tMonday\tPROPN\tNNP\t_\t3\tobl:tmod\n");
  auto joint = extract_joint(s, kUd);
  REQUIRE(joint.size() == 1);
  CHECK(joint[0].feature == "failure-n.subj+____+on-i_monday-n.comp");
}

TEST_CASE("multiple complements keep sentence order") {
  ParsedSentence s = sentence_from(
      "1\tshe\tshe\tPRON\tPRP\t_\t2\tnsubj\n"
      "2\tmoved\tmove\tVERB\tVBD\t_\t0\troot\n"
      "3\tfrom\tfrom\tADP\tIN\t_\t4\tcase\n"
      "4\tRome\tRome\tPROPN\tNNP\t_\t2\tobl\n"
      "5\tto\tto\tADP\tIN\t_\t6\tcase\n"
      "6\tParis\tParis\tPROPN\tNNP\t_\t2\tobl\n");
  auto joint = extract_joint(s, kUd);
  REQUIRE(joint.size() == 1);
  CHECK(joint[0].feature == "____+from-i_rome-n.comp+to-i_paris-n.comp");
}

TEST_CASE("bow window is +-2 raw positions") {
  // [the/other, dictator/n, acknowledged/v, his/other, failure/n]
  ParsedSentence s = sentence_from(
      "1\tthe\tthe\tDET\tDT\t_\t2\tdet\n"
      "2\tdictator\tdictator\tNOUN\tNN\t_\t3\tnsubj\n"
      "3\tacknowledged\tacknowledge\tVERB\tVBD\t_\t0\troot\n"
      "4\this\this\tPRON\tPRP$\t_\t5\tnmod:poss\n"
      "5\tfailure\tfailure\tNOUN\tNN\t_\t3\tobj\n");
  auto pairs = extract_bow(s, "v");
  std::set<std::string> features;
  for (const auto& p : pairs) {
    CHECK(p.target == "acknowledge-v");
    features.insert(p.feature);
  }
  CHECK(features == std::set<std::string>{"dictator-n", "failure-n"});

  SUBCASE("window counts all tokens, not just content words") {
    // distance 3 through two non-content tokens: not a neighbor
    ParsedSentence far = sentence_from(
        "1\tran\trun\tVERB\tVBD\t_\t0\troot\n"
        "2\tthe\tthe\tDET\tDT\t_\t4\tdet\n"
        "3\tvery\tvery\tADV\tRB\t_\t4\tadvmod\n"
        "4\tdog\tdog\tNOUN\tNN\t_\t1\tnsubj\n");
    auto far_pairs = extract_bow(far, "v");
    REQUIRE(far_pairs.size() == 1);
    CHECK(far_pairs[0].feature == "very-r");  // dog at distance 3 is out
  }
}

TEST_CASE("bow edge cases") {
  ParsedSentence one = sentence_from("1\trun\trun\tVERB\tVB\t_\t0\troot\n");
  CHECK(extract_bow(one, "nvjr").empty());

  ParsedSentence nouns = sentence_from(
      "1\tdog\tdog\tNOUN\tNN\t_\t2\tnsubj\n"
      "2\tcat\tcat\tNOUN\tNN\t_\t0\troot\n");
  CHECK(extract_bow(nouns, "v").empty());
  CHECK(extract_bow(nouns, "n").size() == 2);
}

TEST_CASE("label map parsing") {
  std::istringstream in(
      "# comment\n"
      "nsubj subj\n"
      "dobj obj\n"
      "prep comp-head\n"
      "pobj comp-noun\n"
      "punct ignore\n");
  LabelMap m = LabelMap::parse(in);
  CHECK(m.role("nsubj") == LabelRole::Subj);
  CHECK(m.role("dobj") == LabelRole::Obj);
  CHECK(m.role("nsubj:pass") == LabelRole::Subj);  // subtype fallback
  CHECK(m.role("unknown") == LabelRole::Ignore);

  std::istringstream bad("nsubj subject\n");
  CHECK_THROWS_AS(LabelMap::parse(bad), ParseError);
  std::istringstream truncated("nsubj\n");
  CHECK_THROWS_AS(LabelMap::parse(truncated), ParseError);
}

TEST_CASE("extraction properties over the mini corpus") {
  GzInputFile in(testutil::data_path("minicorpus.conllu"));
  ConllReader reader(in, {ConllFormat::ConllU, Tagset::Upos, true}, "mini");
  ParsedSentence s;
  std::size_t joint_seen = 0;
  while (reader.next(s)) {
    auto joint = extract_joint(s, kUd);
    auto single = extract_single_dep(s, kUd);

    // determinism: same sentence, byte-equal output
    auto joint2 = extract_joint(s, kUd);
    REQUIRE(joint.size() == joint2.size());
    for (std::size_t i = 0; i < joint.size(); ++i) {
      CHECK(joint[i].target == joint2[i].target);
      CHECK(joint[i].feature == joint2[i].feature);
    }

    std::size_t n_verbs = 0, n_args = 0;
    for (std::size_t i = 0; i < s.tokens.size(); ++i)
      if (s.tokens[i].pos == CoarsePos::Verb) {
        ++n_verbs;
        n_args += resolve_arguments(s, static_cast<int>(i), kUd).size();
      }
    CHECK(joint.size() <= n_verbs);
    CHECK(single.size() == n_args);

    std::multiset<std::string> single_keys;
    for (const auto& p : single) single_keys.insert(p.feature);

    for (const auto& p : joint) {
      ++joint_seen;
      // exactly one placeholder segment, and every other segment is a
      // single-dependency key of the same sentence
      std::size_t placeholders = 0;
      std::string segment;
      std::istringstream key(p.feature);
      while (std::getline(key, segment, '+')) {
        if (segment == "____") {
          ++placeholders;
          continue;
        }
        CHECK(single_keys.count(segment) > 0);
      }
      CHECK(placeholders == 1);
    }
  }
  CHECK(joint_seen > 500);  // the grammar produces plenty of multi-arg verbs
}
