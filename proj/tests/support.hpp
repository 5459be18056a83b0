// Helpers shared by the unit tests and the acceptance binary.
#ifndef FOCUS_TESTS_SUPPORT_HPP_
#define FOCUS_TESTS_SUPPORT_HPP_

#include <string>
#include <vector>

#include "focus/corpus_format.hpp"
#include "focus/evaluation.hpp"
#include "focus/focus_engine.hpp"

namespace focus::testing {

struct FocusStep {
  FocusState before;
  FocusUpdate update;
};

// Runs the focusing algorithm with every anaphor bound to its gold target,
// so focus movement can be checked independently of the pronoun rules.
inline std::vector<FocusStep> gold_focus_run(const Discourse &d) {
  std::vector<FocusStep> out;
  if (d.sentences.empty()) return out;
  Bindings b(d.nps.size());
  FocusState st = init_state(d, d.sentences.front());
  for (std::size_t i = 0; i < d.sentences.size(); ++i) {
    const Sentence &s = d.sentences[i];
    for (NpRef r : anaphora_in_order(d, s)) {
      const NounPhrase &n = d.np(r);
      if (n.gold) b[r.index] = canonical(b, *n.gold);
      else if (n.given_cospec) b[r.index] = canonical(b, *n.given_cospec);
    }
    FocusUpdate u = update_focus(st, d, s, b);
    out.push_back({st, u});
    st = u.state;
  }
  return out;
}

inline bool holds(const std::vector<SpecTarget> &v, const SpecTarget &t) {
  for (const SpecTarget &x : v)
    if (same_entity(x, t)) return true;
  return false;
}

inline const FocusTraceEvent *find_event(const FocusUpdate &u, const std::string &step) {
  for (const FocusTraceEvent &e : u.trace)
    if (e.step == step) return &e;
  return nullptr;
}

// Problems with the focus structures of one transition; empty when sound.
inline std::vector<std::string> focus_violations(const FocusState &before, const FocusUpdate &u) {
  std::vector<std::string> bad;
  const FocusState &st = u.state;
  if (st.cf && holds(st.alfl, *st.cf)) bad.push_back("cf in alfl");
  if (st.cf && holds(st.df_stack, *st.cf)) bad.push_back("cf in df_stack");
  if (find_event(u, "step-6") && before.cf) {
    // Everything above the popped-to entry, and the old focus, is gone.
    std::size_t idx = before.df_stack.size();
    while (idx-- > 0)
      if (st.cf && same_entity(before.df_stack[idx], *st.cf)) break;
    for (std::size_t k = idx + 1; k < before.df_stack.size(); ++k)
      if (holds(st.df_stack, before.df_stack[k])) bad.push_back("discarded focus still stacked");
    if (holds(st.df_stack, *before.cf)) bad.push_back("old focus stacked after pop");
  } else if (find_event(u, "stack-push") && before.cf) {
    // A push puts the old focus on top.
    if (st.df_stack.empty() || !same_entity(st.df_stack.back(), *before.cf))
      bad.push_back("old focus not on top after push");
  }
  return bad;
}

}  // namespace focus::testing

#endif  // FOCUS_TESTS_SUPPORT_HPP_
