#include "focus/focus_engine.hpp"

#include <algorithm>
#include <sstream>

#include "focus/filters.hpp"

namespace focus {

namespace {

bool contains_entity(const std::vector<SpecTarget> &list, const SpecTarget &t) {
  return std::any_of(list.begin(), list.end(),
                     [&](const SpecTarget &x) { return same_entity(x, t); });
}

void push_unique(std::vector<SpecTarget> &list, const SpecTarget &t) {
  if (!contains_entity(list, t)) list.push_back(t);
}

void erase_entity(std::vector<SpecTarget> &list, const SpecTarget &t) {
  std::erase_if(list, [&](const SpecTarget &x) { return same_entity(x, t); });
}

bool same(const std::optional<SpecTarget> &a, const std::optional<SpecTarget> &b) {
  if (!a || !b) return a.has_value() == b.has_value();
  return same_entity(*a, *b);
}

bool contains_np(const std::vector<NpRef> &v, NpRef r) {
  return std::find(v.begin(), v.end(), r) != v.end();
}

// A pronoun the rules could not resolve specifies nothing yet.
bool unbound_pronoun(const Discourse &d, const Bindings &b, NpRef r) {
  return d.np(r).is_pronoun() && (r.index >= b.size() || !b[r.index]);
}

std::vector<NpRef> themes_of(const Discourse &d, const Sentence &s) {
  if (!s.vp) return {};
  return d.vp(*s.vp).theme;
}

// Orders the phrases of `s` by the expected-focus preference schema: theme,
// other thematic positions, the agent (when requested), and the verb phrase.
// A conjoined slot is followed by the set of its members.
std::vector<SpecTarget> preference_order(const Discourse &d, const Sentence &s, const Bindings &b,
                                         bool include_agent, bool include_vp) {
  const std::vector<NpRef> themes = themes_of(d, s);
  const std::vector<NpRef> agents = agent_nps(d, s);
  std::vector<NpRef> group_theme, group_other, group_agent;
  for (const PositionedPhrase &ph : phrase_surface_order(s)) {
    const auto *np = std::get_if<NpRef>(&ph.phrase);
    if (!np || unbound_pronoun(d, b, *np)) continue;
    if (contains_np(themes, *np)) group_theme.push_back(*np);
    else if (contains_np(agents, *np)) group_agent.push_back(*np);
    else group_other.push_back(*np);
  }

  std::vector<SpecTarget> out;
  auto emit = [&](const std::vector<NpRef> &group) {
    for (NpRef r : group) {
      push_unique(out, entity_of(b, r));
      const std::vector<NpRef> &slot = s.at(d.np(r).position);
      bool last_of_slot = slot.size() > 1 && slot.back() == r;
      bool whole_slot = std::all_of(slot.begin(), slot.end(),
                                    [&](NpRef m) { return contains_np(group, m); });
      if (last_of_slot && whole_slot)
        if (auto set = slot_entity(b, slot)) push_unique(out, *set);
    }
  };
  emit(group_theme);
  emit(group_other);
  if (include_agent) emit(group_agent);
  if (include_vp && s.vp) push_unique(out, SpecTarget(*s.vp));
  return out;
}

FocusSets contribution(const Discourse &d, const Sentence &s, const Bindings &b) {
  FocusSets c;
  for (NpRef t : themes_of(d, s)) push_unique(c.theme_set, entity_of(b, t));
  if (auto agent = agent_entity(d, s, b)) {
    const SpecTarget actors = canonical(b, *agent);
    for (const Atom &a : actors.members()) push_unique(c.actor_set, SpecTarget(a));
  }
  if (s.vp) c.vp_set.push_back(SpecTarget(*s.vp));
  return c;
}

void merge_sets(FocusSets &into, const FocusSets &from) {
  for (const auto &t : from.theme_set) push_unique(into.theme_set, t);
  for (const auto &t : from.actor_set) push_unique(into.actor_set, t);
  for (const auto &t : from.vp_set) push_unique(into.vp_set, t);
}

// Step 8: actor focus and potential actor foci.
void update_actor_focus(FocusState &st, const Discourse &d, const Sentence &s, const Bindings &b,
                        std::vector<FocusTraceEvent> &trace) {
  if (auto agent = agent_entity(d, s, b)) {
    if (!same(st.af, agent)) {
      if (st.af) {
        erase_entity(st.af_stack, *st.af);
        st.af_stack.push_back(*st.af);
        trace.push_back({"af-stack-push", describe(d, *st.af)});
      }
      erase_entity(st.af_stack, *agent);
      st.af = agent;
      st.af_since = st.sentence;
      trace.push_back({"step-8", "actor focus := " + describe(d, *agent)});
    }
    const std::vector<NpRef> agents = agent_nps(d, s);
    st.af_mention = agents.empty() ? std::nullopt : std::optional<NpRef>(agents.front());
  }
  const std::vector<NpRef> agents = agent_nps(d, s);
  for (const PositionedPhrase &ph : phrase_surface_order(s)) {
    const auto *np = std::get_if<NpRef>(&ph.phrase);
    if (!np || contains_np(agents, *np) || d.np(*np).is_reflexive() || unbound_pronoun(d, b, *np))
      continue;
    SpecTarget e = entity_of(b, *np);
    if (!is_animate(d, e)) continue;
    if (e.contains(Speaker{}) || e.contains(Hearer{})) continue;
    push_unique(st.paf, e);
  }
}

void move_focus(FocusState &st, const Discourse &d, const SpecTarget &to,
                std::vector<FocusTraceEvent> &trace) {
  if (same(st.cf, to)) return;
  if (st.cf) {
    erase_entity(st.df_stack, *st.cf);
    st.df_stack.push_back(*st.cf);
    trace.push_back({"stack-push", describe(d, *st.cf)});
  }
  erase_entity(st.df_stack, to);
  st.cf = to;
  st.cf_since = st.sentence;
}

}  // namespace

SpecTarget canonical(const Bindings &b, const SpecTarget &t) {
  std::vector<Atom> atoms;
  bool set = t.is_set();
  for (const Atom &a : t.members()) {
    const auto *np = std::get_if<NpRef>(&a);
    if (np && np->index < b.size() && b[np->index]) {
      const SpecTarget &bound = *b[np->index];
      set |= bound.is_set();
      for (const Atom &m : bound.members())
        if (std::find(atoms.begin(), atoms.end(), m) == atoms.end()) atoms.push_back(m);
    } else if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) {
      atoms.push_back(a);
    }
  }
  if (!set) return SpecTarget(atoms.front());
  return SpecTarget::make_set(std::move(atoms));
}

SpecTarget entity_of(const Bindings &b, NpRef np) { return canonical(b, SpecTarget(np)); }

std::optional<SpecTarget> slot_entity(const Bindings &b, const std::vector<NpRef> &slot) {
  if (slot.empty()) return std::nullopt;
  if (slot.size() == 1) return entity_of(b, slot.front());
  std::vector<Atom> atoms;
  for (NpRef r : slot) atoms.push_back(r);
  return canonical(b, SpecTarget::make_set(std::move(atoms)));
}

bool is_animate(const Discourse &d, const SpecTarget &t) {
  return features_of(d, t).life == Life::kAnimate;
}

std::vector<NpRef> agent_nps(const Discourse &d, const Sentence &s) {
  if (s.type == SentenceType::kThereInsertion) return {};
  const std::vector<NpRef> themes = themes_of(d, s);
  std::vector<NpRef> out;
  for (NpRef r : s.subject)
    if (!contains_np(themes, r)) out.push_back(r);
  return out;
}

std::vector<SpecTarget> potential_actors(const FocusState &st) {
  std::vector<SpecTarget> out = st.paf;
  if (st.af) erase_entity(out, *st.af);
  return out;
}

std::optional<SpecTarget> agent_entity(const Discourse &d, const Sentence &s, const Bindings &b) {
  std::vector<NpRef> agents = agent_nps(d, s);
  if (agents.size() != s.subject.size()) return std::nullopt;
  for (NpRef r : agents)
    if (unbound_pronoun(d, b, r)) return std::nullopt;
  auto e = slot_entity(b, agents);
  if (!e || !is_animate(d, *e)) return std::nullopt;
  return e;
}

std::string describe(const Discourse &d, const SpecTarget &t) {
  auto atom = [&](const Atom &a) -> std::string {
    if (std::holds_alternative<Speaker>(a)) return "SPEAKER";
    if (std::holds_alternative<Hearer>(a)) return "HEARER";
    if (const auto *v = std::get_if<VpRef>(&a)) return d.vp(*v).text + "[" + d.vp(*v).id + "]";
    const NounPhrase &n = d.np(std::get<NpRef>(a));
    return n.text + "[" + n.id + "]";
  };
  if (!t.is_set()) return atom(t.atom());
  std::string out = "{";
  for (std::size_t i = 0; i < t.members().size(); ++i)
    out += (i ? ", " : "") + atom(t.members()[i]);
  return out + "}";
}

ExpectedFocus expected_focus(const Discourse &d, const Sentence &s, const Bindings &b) {
  std::vector<SpecTarget> def;
  if (s.type == SentenceType::kIsA || s.type == SentenceType::kThereInsertion) {
    bool bound = std::none_of(s.subject.begin(), s.subject.end(),
                              [&](NpRef r) { return unbound_pronoun(d, b, r); });
    if (auto subj = slot_entity(b, s.subject); subj && bound) def.push_back(*subj);
    std::vector<SpecTarget> rest = preference_order(d, s, b, true, true);
    for (const SpecTarget &t : rest) {
      bool in_subject = false;
      for (NpRef r : s.subject) in_subject |= same_entity(entity_of(b, r), t);
      if (!in_subject) push_unique(def, t);
    }
  } else {
    def = preference_order(d, s, b, true, true);
  }
  if (def.empty()) return {};
  return {def.front(), def};
}

FocusState init_state(const Discourse &d, const Sentence &s) {
  FocusState st;
  ExpectedFocus ef = expected_focus(d, s);
  if (!ef.def.empty()) {
    st.cf = ef.focus;
    st.alfl.assign(ef.def.begin() + 1, ef.def.end());
  }
  // Pronominal agents are unresolved at this point and cannot seed the actor focus.
  Bindings none;
  std::vector<NpRef> agents = agent_nps(d, s);
  bool pronominal = std::any_of(agents.begin(), agents.end(),
                                [&](NpRef r) { return d.np(r).anaphor != AnaphorKind::kNone; });
  if (!pronominal) {
    st.af = agent_entity(d, s, none);
    if (st.af) st.af_mention = agents.front();
  }
  st.initial = true;
  return st;
}

PflResult build_pfl(const Discourse &d, const Sentence &s, const FocusState &state,
                    const Bindings &b) {
  PflResult out;
  const std::optional<NpRef> item = s.type == SentenceType::kCleft ? s.cleft_item
                                    : s.type == SentenceType::kPseudoCleft ? s.pseudo_cleft_item
                                                                           : std::nullopt;
  if (item) {
    bool cospecifies_focus = false;
    for (const PositionedPhrase &ph : phrase_surface_order(s)) {
      const auto *np = std::get_if<NpRef>(&ph.phrase);
      if (np && *np != *item && state.cf) cospecifies_focus |= same_entity(entity_of(b, *np), *state.cf);
    }
    if (cospecifies_focus) {
      out.pfl.push_back(entity_of(b, *item));
      return out;
    }
    out.incoherent_cleft = true;
  }
  for (const SpecTarget &t : preference_order(d, s, b, false, false))
    if (!state.cf || !same_entity(t, *state.cf)) out.pfl.push_back(t);
  if (s.vp && !(state.cf && same_entity(*state.cf, SpecTarget(*s.vp))))
    out.pfl.push_back(SpecTarget(*s.vp));
  return out;
}

FocusUpdate update_focus(const FocusState &prev, const Discourse &d, const Sentence &s,
                         const Bindings &b) {
  FocusUpdate u{prev, {}};
  FocusState &st = u.state;
  auto &trace = u.trace;
  std::size_t index = static_cast<std::size_t>(&s - d.sentences.data());
  st.sentence = index;
  const FocusSets contrib = contribution(d, s, b);

  if (index == 0) {
    // Discourse-initial: the expected focus stands; bindings now refine it.
    ExpectedFocus ef = expected_focus(d, s, b);
    if (!ef.def.empty()) {
      st.cf = ef.focus;
      st.alfl.assign(ef.def.begin() + 1, ef.def.end());
      trace.push_back({"expected-focus", "focus := " + describe(d, ef.focus)});
    }
    update_actor_focus(st, d, s, b, trace);
    st.initial = true;
    st.last_contribution = contrib;
    return u;
  }
  st.initial = false;

  const std::vector<NpRef> anaphora = anaphora_in_order(d, s);
  const std::vector<NpRef> agents = agent_nps(d, s);
  struct Mention {
    NpRef np;
    SpecTarget target;
    bool agent;
    bool pronoun;
  };
  std::vector<Mention> mentions;
  for (NpRef r : anaphora) {
    if (r.index >= b.size() || !b[r.index]) continue;
    mentions.push_back({r, *b[r.index], contains_np(agents, r), d.np(r).is_pronoun()});
  }

  bool fired = false;
  // Step 1: do-anaphora.
  if (s.do_anaphora && !prev.alfl.empty()) {
    move_focus(st, d, prev.alfl.back(), trace);
    trace.push_back({"step-1", "do-anaphora: focus := " + describe(d, *st.cf)});
    fired = true;
  }

  // Step 2: focus set collection.
  if (!fired && !prev.cf) {
    fired = true;
    if (mentions.empty()) {
      if (!st.focus_sets) st.focus_sets = FocusSets{};
      merge_sets(*st.focus_sets, contrib);
      trace.push_back({"step-2", "collecting focus sets"});
    } else {
      auto pick = std::find_if(mentions.begin(), mentions.end(),
                               [](const Mention &m) { return !m.agent; });
      const Mention &m = pick != mentions.end() ? *pick : mentions.front();
      // Themes collected while the focus was nil stay reachable by popping.
      if (prev.focus_sets)
        for (const SpecTarget &t : prev.focus_sets->theme_set) {
          if (same_entity(t, m.target)) continue;
          erase_entity(st.df_stack, t);
          st.df_stack.push_back(t);
        }
      move_focus(st, d, m.target, trace);
      st.focus_sets.reset();
      trace.push_back({"step-2", std::string(pick != mentions.end() ? "non-agent" : "agent") +
                                     " anaphor ends focus sets: focus := " + describe(d, m.target)});
    }
  }

  if (!fired && prev.cf) {
    std::vector<const Mention *> on_cf, on_alfl, on_stack;
    for (const Mention &m : mentions) {
      if (same_entity(m.target, *prev.cf)) on_cf.push_back(&m);
      else if (contains_entity(prev.alfl, m.target)) on_alfl.push_back(&m);
      else if (contains_entity(prev.df_stack, m.target)) on_stack.push_back(&m);
    }
    // Preferred ALFL member among those co-specified: earliest in ALFL order.
    auto best_alfl = [&](auto pred) -> const Mention * {
      const Mention *best = nullptr;
      std::size_t best_pos = prev.alfl.size();
      for (const Mention *m : on_alfl) {
        if (!pred(*m)) continue;
        for (std::size_t i = 0; i < prev.alfl.size(); ++i)
          if (same_entity(prev.alfl[i], m->target) && i < best_pos) best = m, best_pos = i;
      }
      return best;
    };
    auto any = [](const Mention &) { return true; };

    if (!on_cf.empty() && !on_alfl.empty()) {
      bool cf_nonagent = std::any_of(on_cf.begin(), on_cf.end(), [](auto *m) { return !m->agent; });
      const Mention *alt_nonagent = best_alfl([](const Mention &m) { return !m.agent; });
      bool cf_pronoun = std::any_of(on_cf.begin(), on_cf.end(), [](auto *m) { return m->pronoun; });
      const Mention *alt_pronoun = best_alfl([](const Mention &m) { return m.pronoun; });
      if (!cf_pronoun && alt_pronoun) {
        move_focus(st, d, alt_pronoun->target, trace);
        trace.push_back({"step-3", "only the ALFL member is pronominalized: focus := " +
                                       describe(d, alt_pronoun->target)});
      } else if (cf_nonagent && alt_nonagent) {
        trace.push_back({"step-3", "both non-agent: retain " + describe(d, *prev.cf)});
      } else if (alt_nonagent) {
        move_focus(st, d, alt_nonagent->target, trace);
        trace.push_back({"step-3", "non-agent ALFL member: focus := " +
                                       describe(d, alt_nonagent->target)});
      } else {
        trace.push_back({"step-3", "retain " + describe(d, *prev.cf)});
      }
      fired = true;
    } else if (!on_cf.empty()) {
      trace.push_back({"step-4", "retain " + describe(d, *prev.cf)});
      fired = true;
    } else if (!on_alfl.empty()) {
      const Mention *m = best_alfl(any);
      move_focus(st, d, m->target, trace);
      trace.push_back({"step-5", "focus := " + describe(d, m->target)});
      fired = true;
    } else if (!on_stack.empty()) {
      const SpecTarget &target = on_stack.front()->target;
      std::size_t idx = prev.df_stack.size();
      while (idx-- > 0)
        if (same_entity(prev.df_stack[idx], target)) break;
      std::vector<SpecTarget> discarded(prev.df_stack.begin() + idx + 1, prev.df_stack.end());
      discarded.push_back(*prev.cf);
      st.df_stack.resize(idx);
      for (const SpecTarget &x : discarded) erase_entity(st.df_stack, x);
      st.cf = target;
      st.cf_since = index;
      std::string what = "pop to " + describe(d, target) + ", discarding";
      for (const SpecTarget &x : discarded) what += " " + describe(d, x);
      trace.push_back({"step-6", what});
      fired = true;
    }
  }

  // Step 7: implicit specification through a definite NP.
  if (!fired && st.cf) {
    for (NpRef r : anaphora) {
      const NounPhrase &n = d.np(r);
      if (n.anaphor != AnaphorKind::kDefNp || !n.implicit_spec_of) continue;
      SpecTarget assoc = entity_of(b, *n.implicit_spec_of);
      if (same_entity(assoc, *st.cf)) {
        trace.push_back({"step-7", n.text + " implicitly specifies the focus: retain"});
        fired = true;
      } else if (contains_entity(prev.alfl, assoc)) {
        move_focus(st, d, assoc, trace);
        trace.push_back({"step-7", n.text + " implicitly specifies ALFL member: focus := " +
                                       describe(d, assoc)});
        fired = true;
      }
      if (fired) break;
    }
  }

  std::optional<SpecTarget> old_af = prev.af;
  update_actor_focus(st, d, s, b, trace);

  // No anaphora to confirm the focus and a new actor takes the stage: the
  // focus lapses and focus sets are collected from the previous sentence on.
  if (!fired && anaphora.empty() && st.cf && !st.focus_sets) {
    std::optional<SpecTarget> agent = agent_entity(d, s, b);
    if (agent && !same(agent, st.cf) && !same(agent, old_af)) {
      erase_entity(st.df_stack, *st.cf);
      st.df_stack.push_back(*st.cf);
      trace.push_back({"focus-nil", "no anaphora, new actor: focus lapses (" +
                                        describe(d, *st.cf) + " stacked)"});
      st.cf.reset();
      FocusSets sets = prev.last_contribution;
      merge_sets(sets, contrib);
      st.focus_sets = sets;
    }
  }
  if (st.cf) st.focus_sets.reset();

  PflResult pfl = build_pfl(d, s, st, b);
  if (pfl.incoherent_cleft) trace.push_back({"incoherent-cleft", s.id});
  st.alfl = std::move(pfl.pfl);
  st.last_contribution = contrib;
  return u;
}

}  // namespace focus
