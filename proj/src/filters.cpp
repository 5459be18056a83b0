#include "focus/filters.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace focus {

namespace {

constexpr GenderSet kHuman{GenderSet::kMasculine | GenderSet::kFeminine};
constexpr GenderSet kNeuterOnly{GenderSet::kNeuter};

Features atom_features(const Discourse &d, const Atom &a) {
  if (std::holds_alternative<Speaker>(a)) return {kHuman, Number::kSingular, 1, Life::kAnimate};
  if (std::holds_alternative<Hearer>(a)) return {kHuman, Number::kSingular, 2, Life::kAnimate};
  if (const auto *v = std::get_if<VpRef>(&a)) {
    (void)v;
    return {kNeuterOnly, Number::kSingular, 3, Life::kInanimate};
  }
  const NounPhrase &n = d.np(std::get<NpRef>(a));
  return {n.gender, n.number, n.person.value, n.life};
}

std::string atom_key(const Discourse &d, const Atom &a) {
  if (std::holds_alternative<Speaker>(a)) return "SPEAKER";
  if (std::holds_alternative<Hearer>(a)) return "HEARER";
  if (const auto *v = std::get_if<VpRef>(&a)) return "vp:" + d.vp(*v).id;
  return "np:" + d.np(std::get<NpRef>(a)).id;
}

}  // namespace

Features features_of(const Discourse &d, const SpecTarget &t) {
  if (!t.is_set()) return atom_features(d, t.atom());
  Features f{{}, Number::kPlural, 3, Life::kUnknown};
  bool all_animate = true, all_inanimate = true;
  for (const Atom &a : t.members()) {
    Features m = atom_features(d, a);
    f.gender = f.gender | m.gender;
    f.person = std::min(f.person, m.person);
    all_animate &= m.life == Life::kAnimate;
    all_inanimate &= m.life == Life::kInanimate;
  }
  f.life = all_animate ? Life::kAnimate : all_inanimate ? Life::kInanimate : Life::kUnknown;
  return f;
}

std::string target_key(const Discourse &d, const SpecTarget &t) {
  if (!t.is_set()) return atom_key(d, t.atom());
  std::vector<std::string> keys;
  for (const Atom &a : t.members()) keys.push_back(atom_key(d, a));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::string out = "set(";
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
  return out + ")";
}

std::string normalize_target_text(const std::string &text) {
  if (text.rfind("set(", 0) != 0 || text.back() != ')') return text;
  std::vector<std::string> keys;
  std::stringstream ss(text.substr(4, text.size() - 5));
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) keys.push_back(item);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::string out = "set(";
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
  return out + ")";
}

InferenceOracle::InferenceOracle(std::vector<OracleRecord> rejects) : rejects_(std::move(rejects)) {
  for (auto &r : rejects_) r.candidate = normalize_target_text(r.candidate);
}

InferenceOracle InferenceOracle::parse(std::istream &in) {
  std::vector<OracleRecord> records;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string discourse, pronoun, candidate, verdict, extra;
    if (!(fields >> discourse)) continue;
    if (!(fields >> pronoun >> candidate >> verdict) || (fields >> extra) || verdict != "reject")
      throw std::runtime_error("oracle line " + std::to_string(lineno) +
                               ": expected '<discourse> <pronoun> <candidate> reject'");
    records.push_back({discourse, pronoun, candidate});
  }
  return InferenceOracle(std::move(records));
}

InferenceOracle InferenceOracle::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open oracle file " + path);
  return parse(in);
}

bool InferenceOracle::accepts(const Discourse &d, NpRef pronoun, const SpecTarget &candidate) const {
  if (rejects_.empty()) return true;
  const std::string &pid = d.np(pronoun).id;
  std::string key;
  for (const OracleRecord &r : rejects_) {
    if (r.discourse != d.id || r.pronoun != pid) continue;
    if (key.empty()) key = target_key(d, candidate);
    if (r.candidate == key) return false;
  }
  return true;
}

std::string to_string(FilterReason r) {
  switch (r) {
    case FilterReason::kOk: return "ok";
    case FilterReason::kGender: return "gender";
    case FilterReason::kNumber: return "number";
    case FilterReason::kPerson: return "person";
    case FilterReason::kLifeForm: return "life_form";
    case FilterReason::kDisjoint: return "disjoint";
    case FilterReason::kInferenceVeto: return "inference_veto";
  }
  return "?";
}

FilterVerdict agree(const Discourse &d, NpRef pronoun, const SpecTarget &candidate) {
  const NounPhrase &p = d.np(pronoun);
  Features c = features_of(d, candidate);
  if (!p.gender.intersects(c.gender)) return {false, FilterReason::kGender};
  if (p.number != c.number) return {false, FilterReason::kNumber};
  if (p.person.value != c.person) return {false, FilterReason::kPerson};
  if (p.life != Life::kUnknown && c.life != Life::kUnknown && p.life != c.life)
    return {false, FilterReason::kLifeForm};
  return {};
}

bool disjoint(const Discourse &d, NpRef pronoun, NpRef candidate) {
  const NounPhrase &p = d.np(pronoun);
  const NounPhrase &c = d.np(candidate);
  if (pronoun == candidate || p.sentence != c.sentence) return false;
  if (p.is_reflexive() || p.is_possessive() || c.is_possessive()) return false;
  return true;
}

FilterVerdict acceptable_cospec(const Discourse &d, NpRef pronoun, const SpecTarget &candidate,
                                const SentenceBindings &bindings, const FilterConfig &cfg) {
  if (FilterVerdict v = agree(d, pronoun, candidate); !v.accepted) return v;
  for (const Atom &a : candidate.members()) {
    for (const SentenceBinding &b : bindings) {
      bool specifies = false;
      if (const auto *np = std::get_if<NpRef>(&a)) specifies = *np == b.np;
      if (!specifies && b.target) specifies = !b.target->is_set() && b.target->atom() == a;
      if (specifies && disjoint(d, pronoun, b.np)) return {false, FilterReason::kDisjoint};
    }
  }
  if (!cfg.inference_oracle.accepts(d, pronoun, candidate))
    return {false, FilterReason::kInferenceVeto};
  return {};
}

}  // namespace focus
