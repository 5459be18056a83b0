#ifndef FOCUS_FILTERS_HPP_
#define FOCUS_FILTERS_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "focus/discourse.hpp"

namespace focus {

// Agreement features of a co-specification target.
struct Features {
  GenderSet gender;
  Number number = Number::kSingular;
  int person = 3;
  Life life = Life::kUnknown;
};

Features features_of(const Discourse &d, const SpecTarget &t);

// Stable textual key of a target: np:<id>, vp:<id>, SPEAKER, HEARER or
// set(...) with members sorted, so equal sets give equal keys.
std::string target_key(const Discourse &d, const SpecTarget &t);

// Sorts the members of a textual set(...) target.
std::string normalize_target_text(const std::string &text);

struct OracleRecord {
  std::string discourse;
  std::string pronoun;
  std::string candidate;  // normalized target text
};

// Stand-in for the inference machine: a total function over
// (pronoun, candidate) that accepts unless a reject record matches.
class InferenceOracle {
 public:
  InferenceOracle() = default;
  explicit InferenceOracle(std::vector<OracleRecord> rejects);

  // Parses `<discourse> <pronoun> <candidate> reject` lines; '#' starts a comment.
  static InferenceOracle parse(std::istream &in);
  static InferenceOracle load(const std::string &path);

  bool accepts(const Discourse &d, NpRef pronoun, const SpecTarget &candidate) const;
  const std::vector<OracleRecord> &rejects() const { return rejects_; }

 private:
  std::vector<OracleRecord> rejects_;
};

struct FilterConfig {
  InferenceOracle inference_oracle;
};

enum class FilterReason { kOk, kGender, kNumber, kPerson, kLifeForm, kDisjoint, kInferenceVeto };

struct FilterVerdict {
  bool accepted = true;
  FilterReason reason = FilterReason::kOk;
  bool operator==(const FilterVerdict &) const = default;
};

std::string to_string(FilterReason r);

// Canonical co-specification of each noun phrase of the sentence under
// analysis, as far as it is known. Used for disjoint reference.
struct SentenceBinding {
  NpRef np;
  std::optional<SpecTarget> target;
};
using SentenceBindings = std::vector<SentenceBinding>;

FilterVerdict agree(const Discourse &d, NpRef pronoun, const SpecTarget &candidate);

// Positional approximation of precede-and-kommand: every NP of a sentence is
// a co-argument of its single verb, so a plain pronoun is disjoint from every
// other noun phrase of its sentence. Reflexive and possessive pronouns are not.
bool disjoint(const Discourse &d, NpRef pronoun, NpRef candidate);

FilterVerdict acceptable_cospec(const Discourse &d, NpRef pronoun, const SpecTarget &candidate,
                                const SentenceBindings &bindings, const FilterConfig &cfg);

}  // namespace focus

#endif  // FOCUS_FILTERS_HPP_
