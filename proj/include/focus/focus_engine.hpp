#ifndef FOCUS_FOCUS_ENGINE_HPP_
#define FOCUS_FOCUS_ENGINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "focus/discourse.hpp"

namespace focus {

// Canonical co-specification of each anaphoric NP resolved so far, indexed
// by NP index. Entries are always canonical (they never point at another
// anaphoric NP that itself has a binding).
using Bindings = std::vector<std::optional<SpecTarget>>;

// Follows bindings so that every NP atom names a first mention; sets are
// flattened and deduplicated.
SpecTarget canonical(const Bindings &b, const SpecTarget &t);

// The entity an NP specifies: its binding when resolved, otherwise itself.
SpecTarget entity_of(const Bindings &b, NpRef np);

// Entity of a whole slot: a single NP's entity, or the set of a conjoined list.
std::optional<SpecTarget> slot_entity(const Bindings &b, const std::vector<NpRef> &slot);

bool is_animate(const Discourse &d, const SpecTarget &t);

// Agent-position NPs: the subject, unless the sentence is a there-insertion
// or the subject is the theme of the verb.
std::vector<NpRef> agent_nps(const Discourse &d, const Sentence &s);

// Animate agent entity of the sentence, if any.
std::optional<SpecTarget> agent_entity(const Discourse &d, const Sentence &s, const Bindings &b);

struct FocusSets {
  std::vector<SpecTarget> theme_set;
  std::vector<SpecTarget> actor_set;
  std::vector<SpecTarget> vp_set;
  bool operator==(const FocusSets &) const = default;
};

struct FocusState {
  std::optional<SpecTarget> cf;
  std::optional<SpecTarget> af;
  std::vector<SpecTarget> alfl;
  std::vector<SpecTarget> paf;  // every animate non-agent seen; may hold af
  std::vector<SpecTarget> df_stack;  // back() is the top
  std::vector<SpecTarget> af_stack;  // back() is the top
  std::optional<FocusSets> focus_sets;
  bool initial = true;

  // Sentence index at which cf / af took their current value.
  std::size_t cf_since = 0;
  std::size_t af_since = 0;
  // Agent NP that last set the actor focus.
  std::optional<NpRef> af_mention;
  // Themes, actors and verb of the last sentence, used to seed focus sets.
  FocusSets last_contribution;
  std::size_t sentence = 0;

  bool operator==(const FocusState &) const = default;
};

// Potential actors other than the current actor focus, oldest first.
std::vector<SpecTarget> potential_actors(const FocusState &st);

struct FocusTraceEvent {
  std::string step;
  std::string detail;
  bool operator==(const FocusTraceEvent &) const = default;
};

struct ExpectedFocus {
  SpecTarget focus;
  std::vector<SpecTarget> def;  // includes `focus` as its head
};

// Default expected focus list of a discourse-initial sentence.
ExpectedFocus expected_focus(const Discourse &d, const Sentence &s, const Bindings &b = {});

FocusState init_state(const Discourse &d, const Sentence &s);

struct PflResult {
  std::vector<SpecTarget> pfl;
  bool incoherent_cleft = false;
};

PflResult build_pfl(const Discourse &d, const Sentence &s, const FocusState &state,
                    const Bindings &b);

struct FocusUpdate {
  FocusState state;
  std::vector<FocusTraceEvent> trace;
};

// One focusing step over sentence `s`, whose anaphora are already bound in `b`.
FocusUpdate update_focus(const FocusState &state, const Discourse &d, const Sentence &s,
                         const Bindings &b);

std::string describe(const Discourse &d, const SpecTarget &t);

}  // namespace focus

#endif  // FOCUS_FOCUS_ENGINE_HPP_
