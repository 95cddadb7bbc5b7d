#include "jointdsm/context.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "jointdsm/errors.hpp"

namespace jointdsm {

namespace {

bool is_content_letter(char c) {
  return c == 'n' || c == 'v' || c == 'j' || c == 'r';
}

std::optional<std::string> content_norm(const Token& t) {
  auto norm = normalize(t);
  if (!norm || !is_content_letter(norm->back())) return std::nullopt;
  return norm;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::vector<int>> children_index(const ParsedSentence& s) {
  std::vector<std::vector<int>> children(s.tokens.size());
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    int head = s.tokens[i].head;
    if (head > 0) children[head - 1].push_back(static_cast<int>(i));
  }
  return children;  // sentence order within each list
}

int group_rank(RelKind r) {
  switch (r) {
    case RelKind::Subj: return 0;
    case RelKind::Obj: return 1;
    case RelKind::Comp: return 2;
  }
  return 3;
}

}  // namespace

std::string scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::Bow: return "bow";
    case SchemeKind::SingleDep: return "single";
    case SchemeKind::Joint: return "joint";
  }
  return "?";
}

std::optional<SchemeKind> scheme_from_name(std::string_view name) {
  if (name == "bow") return SchemeKind::Bow;
  if (name == "single" || name == "single_dep") return SchemeKind::SingleDep;
  if (name == "joint") return SchemeKind::Joint;
  return std::nullopt;
}

LabelMap LabelMap::ud_default() {
  LabelMap m;
  m.set("nsubj", LabelRole::Subj);
  m.set("nsubj:pass", LabelRole::Subj);
  m.set("nsubjpass", LabelRole::Subj);
  m.set("obj", LabelRole::Obj);
  m.set("dobj", LabelRole::Obj);
  m.set("obl", LabelRole::CompNoun);
  m.set("case", LabelRole::CompHead);
  return m;
}

LabelMap LabelMap::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label map " + path);
  return parse(in);
}

LabelMap LabelMap::parse(std::istream& in) {
  LabelMap m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string label, role;
    if (!(row >> label) || label[0] == '#') continue;
    if (!(row >> role))
      throw ParseError(line_no, "label map line needs '<label> <role>'");
    if (role == "subj") m.set(label, LabelRole::Subj);
    else if (role == "obj") m.set(label, LabelRole::Obj);
    else if (role == "comp-head") m.set(label, LabelRole::CompHead);
    else if (role == "comp-noun") m.set(label, LabelRole::CompNoun);
    else if (role == "ignore") m.set(label, LabelRole::Ignore);
    else throw ParseError(line_no, "unknown role '" + role + "'");
  }
  return m;
}

void LabelMap::set(std::string label, LabelRole role) {
  roles_[std::move(label)] = role;
}

LabelRole LabelMap::role(const std::string& label) const {
  auto it = roles_.find(label);
  if (it != roles_.end()) return it->second;
  std::size_t colon = label.find(':');
  if (colon != std::string::npos) {
    it = roles_.find(label.substr(0, colon));
    if (it != roles_.end()) return it->second;
  }
  return LabelRole::Ignore;
}

std::vector<DepArgument> resolve_arguments(const ParsedSentence& s,
                                           int verb_index,
                                           const LabelMap& labels) {
  auto children = children_index(s);
  std::vector<DepArgument> args;

  for (int ci : children[verb_index]) {
    const Token& dep = s.tokens[ci];
    LabelRole role = labels.role(dep.dep_label);
    switch (role) {
      case LabelRole::Subj:
      case LabelRole::Obj: {
        auto filler = content_norm(dep);
        if (!filler) break;
        args.push_back({*filler,
                        role == LabelRole::Subj ? RelKind::Subj : RelKind::Obj,
                        "", dep.index});
        break;
      }
      case LabelRole::CompNoun: {
        // Noun attached to the verb, case-marking preposition below it.
        auto filler = content_norm(dep);
        if (!filler) break;
        for (int pi : children[ci]) {
          const Token& p = s.tokens[pi];
          if (p.pos == CoarsePos::Preposition &&
              labels.role(p.dep_label) == LabelRole::CompHead) {
            args.push_back({*filler, RelKind::Comp, lowercase(p.lemma),
                            dep.index});
            break;
          }
        }
        break;
      }
      case LabelRole::CompHead: {
        // Preposition attached to the verb, nominal filler below it.
        if (dep.pos != CoarsePos::Preposition) break;
        const Token* noun = nullptr;
        for (int ni : children[ci]) {
          if (labels.role(s.tokens[ni].dep_label) == LabelRole::CompNoun) {
            noun = &s.tokens[ni];
            break;
          }
        }
        if (!noun)
          for (int ni : children[ci])
            if (s.tokens[ni].pos == CoarsePos::Noun) {
              noun = &s.tokens[ni];
              break;
            }
        if (!noun) break;
        auto filler = content_norm(*noun);
        if (!filler) break;
        args.push_back({*filler, RelKind::Comp, lowercase(dep.lemma),
                        noun->index});
        break;
      }
      case LabelRole::Ignore:
        break;
    }
  }

  std::stable_sort(args.begin(), args.end(),
                   [](const DepArgument& a, const DepArgument& b) {
                     return group_rank(a.rel) < group_rank(b.rel);
                   });
  return args;
}

std::string serialize_argument(const DepArgument& a) {
  switch (a.rel) {
    case RelKind::Subj: return a.filler + ".subj";
    case RelKind::Obj: return a.filler + ".obj";
    case RelKind::Comp: return a.prep + "-i_" + a.filler + ".comp";
  }
  return "";
}

std::string joint_key(const std::vector<DepArgument>& args) {
  std::string key;
  bool placed = false;
  auto append = [&key](const std::string& seg) {
    if (!key.empty()) key.push_back('+');
    key += seg;
  };
  for (const DepArgument& a : args) {
    if (!placed && a.rel != RelKind::Subj) {
      append("____");
      placed = true;
    }
    append(serialize_argument(a));
  }
  if (!placed) append("____");
  return key;
}

std::vector<TargetFeature> extract_bow(const ParsedSentence& s,
                                       const std::string& target_letters) {
  const int n = static_cast<int>(s.tokens.size());
  std::vector<std::optional<std::string>> norm(n);
  for (int i = 0; i < n; ++i) norm[i] = content_norm(s.tokens[i]);

  std::vector<TargetFeature> out;
  for (int i = 0; i < n; ++i) {
    if (!norm[i]) continue;
    if (target_letters.find(norm[i]->back()) == std::string::npos) continue;
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) {
      if (j == i || !norm[j]) continue;
      out.push_back({*norm[i], *norm[j]});
    }
  }
  return out;
}

std::vector<TargetFeature> extract_single_dep(const ParsedSentence& s,
                                              const LabelMap& labels) {
  std::vector<TargetFeature> out;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (s.tokens[i].pos != CoarsePos::Verb) continue;
    auto target = normalize(s.tokens[i]);
    if (!target) continue;
    for (const DepArgument& a :
         resolve_arguments(s, static_cast<int>(i), labels))
      out.push_back({*target, serialize_argument(a)});
  }
  return out;
}

std::vector<TargetFeature> extract_joint(const ParsedSentence& s,
                                         const LabelMap& labels) {
  std::vector<TargetFeature> out;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (s.tokens[i].pos != CoarsePos::Verb) continue;
    auto target = normalize(s.tokens[i]);
    if (!target) continue;
    auto args = resolve_arguments(s, static_cast<int>(i), labels);
    // A lone argument carries no interrelation; it is already covered by
    // the single-dependency scheme.
    if (args.size() < 2) continue;
    out.push_back({*target, joint_key(args)});
  }
  return out;
}

std::vector<TargetFeature> extract(const ParsedSentence& s,
                                   const ExtractOptions& opts) {
  static const LabelMap kUd = LabelMap::ud_default();
  const LabelMap& labels = opts.labels ? *opts.labels : kUd;
  switch (opts.scheme) {
    case SchemeKind::Bow: return extract_bow(s, opts.bow_target_letters);
    case SchemeKind::SingleDep: return extract_single_dep(s, labels);
    case SchemeKind::Joint: return extract_joint(s, labels);
  }
  return {};
}

}  // namespace jointdsm
