#ifndef FOCUS_PRONOUN_RULES_HPP_
#define FOCUS_PRONOUN_RULES_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "focus/discourse.hpp"
#include "focus/filters.hpp"
#include "focus/focus_engine.hpp"

namespace focus {

enum class OutcomeKind {
  kResolved,
  kBackwardsNonAntecedent,
  kBackwardsNonAntecedentOrForwardCospec,
  kPotentialActorAmbiguity,
  kUnreliablePronounUse,
};

std::string to_string(OutcomeKind k);

struct RuleTraceEntry {
  std::string step;
  SpecTarget candidate;
  FilterVerdict verdict;
};

struct ResolutionOutcome {
  OutcomeKind kind = OutcomeKind::kBackwardsNonAntecedent;
  std::optional<SpecTarget> cospec;     // set iff kind == kResolved
  std::vector<SpecTarget> ambiguous;    // actor and potential actor for kPotentialActorAmbiguity
  std::vector<RuleTraceEntry> trace;
  std::string rule;                     // step that produced the outcome
  bool ambiguity_warning = false;       // AF/DF tie broken towards AF

  bool resolved() const { return kind == OutcomeKind::kResolved; }
};

enum class RecencyScope { kOff, kAgentOnly, kAllPositions };

struct RuleConfig {
  RecencyScope recency_scope = RecencyScope::kAgentOnly;
  bool paa_modification = true;
  FilterConfig filter;
};

// Everything a rule chain may consult while resolving one pronoun.
struct RuleContext {
  const Discourse &d;
  const Sentence &s;
  const FocusState &state;
  const Bindings &bindings;  // includes NPs of `s` resolved earlier, left to right
  const RuleConfig &cfg;
};

// Lemma class used for "same type of pronoun": he/him/his/himself -> "he".
std::string pronoun_lemma(const std::string &surface);

ResolutionOutcome resolve_first_second(NpRef p, const RuleContext &ctx);
ResolutionOutcome resolve_agent_pronoun(NpRef p, const RuleContext &ctx);
ResolutionOutcome resolve_nonagent_pronoun(NpRef p, const RuleContext &ctx);
// Dispatches on person and agent position.
ResolutionOutcome resolve_pronoun(NpRef p, const RuleContext &ctx);

// The ALFL member that is the last NP constituent of the previous sentence.
std::optional<SpecTarget> recency_candidate(const Discourse &d, const Sentence &s,
                                            const FocusState &state, const Bindings &b);

struct SentenceResolution {
  std::vector<std::pair<NpRef, ResolutionOutcome>> outcomes;
  FocusUpdate update;
};

// Resolves every anaphoric NP of `s` left to right, writing canonical
// co-specifications into `bindings`, then runs the focusing step.
SentenceResolution resolve_sentence(const Discourse &d, const Sentence &s, const FocusState &state,
                                    Bindings &bindings, const RuleConfig &cfg);

}  // namespace focus

#endif  // FOCUS_PRONOUN_RULES_HPP_
