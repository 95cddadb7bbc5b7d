// Turns parsed sentences into (target, context feature) pairs under one of
// three schemes: bag-of-words window, single labeled dependency, or the
// joint combination of a verb's arguments.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "jointdsm/conll.hpp"

namespace jointdsm {

enum class SchemeKind { Bow, SingleDep, Joint };

std::string scheme_name(SchemeKind k);
std::optional<SchemeKind> scheme_from_name(std::string_view name);

enum class RelKind { Subj, Obj, Comp };

// One resolved argument of a verb. `prep` is set iff rel == Comp; fillers
// are always content words (pos letter n/v/j/r).
struct DepArgument {
  std::string filler;  // normalized lemma, e.g. "dictator-n"
  RelKind rel = RelKind::Subj;
  std::string prep;    // lowercased preposition lemma for Comp
  int position = 0;    // filler token index, orders arguments within a group
};

// What a dependency label contributes to argument resolution. CompHead
// marks the preposition-bearing arc, CompNoun the nominal arc; the two
// compose in either orientation (preposition above the noun or the noun
// attached to the verb with a case marker below).
enum class LabelRole { Subj, Obj, CompHead, CompNoun, Ignore };

class LabelMap {
 public:
  // nsubj/nsubj:pass -> subj, obj/dobj -> obj, obl+case -> comp.
  static LabelMap ud_default();
  static LabelMap from_file(const std::string& path);
  static LabelMap parse(std::istream& in);

  // Exact label first, then the bare label with any ":subtype" stripped.
  LabelRole role(const std::string& label) const;

  void set(std::string label, LabelRole role);

 private:
  std::unordered_map<std::string, LabelRole> roles_;
};

struct TargetFeature {
  std::string target;
  std::string feature;
};

// Arguments of `verb_index` (0-based into s.tokens) in canonical order:
// subjects, then objects, then complements; sentence order within a group.
std::vector<DepArgument> resolve_arguments(const ParsedSentence& s,
                                           int verb_index,
                                           const LabelMap& labels);

// "<filler>.subj", "<filler>.obj" or "<prep>-i_<filler>.comp".
std::string serialize_argument(const DepArgument& a);

// Joint key for a canonical argument list: subject segments, the "____"
// placeholder, then object and complement segments, joined by '+'.
std::string joint_key(const std::vector<DepArgument>& args);

// Content words within +-2 raw token positions of each content-word target
// whose pos letter is in `target_letters` (e.g. "v", or "nvjr" for all).
std::vector<TargetFeature> extract_bow(const ParsedSentence& s,
                                       const std::string& target_letters);

// One pair per resolved argument of each verb.
std::vector<TargetFeature> extract_single_dep(const ParsedSentence& s,
                                              const LabelMap& labels);

// One pair per verb with at least two resolved arguments.
std::vector<TargetFeature> extract_joint(const ParsedSentence& s,
                                         const LabelMap& labels);

struct ExtractOptions {
  SchemeKind scheme = SchemeKind::Joint;
  std::string bow_target_letters = "v";
  const LabelMap* labels = nullptr;  // nullptr: UD defaults
};

std::vector<TargetFeature> extract(const ParsedSentence& s,
                                   const ExtractOptions& opts);

}  // namespace jointdsm
