#include "focus/pronoun_rules.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace focus {

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::kResolved: return "resolved";
    case OutcomeKind::kBackwardsNonAntecedent: return "backwards-non-antecedent";
    case OutcomeKind::kBackwardsNonAntecedentOrForwardCospec:
      return "backwards-non-antecedent-or-forward-cospec";
    case OutcomeKind::kPotentialActorAmbiguity: return "potential-actor-ambiguity";
    case OutcomeKind::kUnreliablePronounUse: return "unreliable-pronoun-use";
  }
  return "?";
}

std::string pronoun_lemma(const std::string &surface) {
  static const std::map<std::string, std::string> kLemma = {
      {"i", "i"},       {"me", "i"},        {"my", "i"},         {"mine", "i"},
      {"myself", "i"},  {"we", "we"},       {"us", "we"},        {"our", "we"},
      {"ours", "we"},   {"ourselves", "we"}, {"you", "you"},     {"your", "you"},
      {"yours", "you"}, {"yourself", "you"}, {"he", "he"},       {"him", "he"},
      {"his", "he"},    {"himself", "he"},  {"she", "she"},      {"her", "she"},
      {"hers", "she"},  {"herself", "she"}, {"it", "it"},        {"its", "it"},
      {"itself", "it"}, {"they", "they"},   {"them", "they"},    {"their", "they"},
      {"theirs", "they"}, {"themselves", "they"}};
  std::string word;
  for (char c : surface) {
    if (c == '\'') break;
    if (std::isalpha(static_cast<unsigned char>(c)))
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  auto it = kLemma.find(word);
  return it == kLemma.end() ? word : it->second;
}

namespace {

bool same(const std::optional<SpecTarget> &a, const std::optional<SpecTarget> &b) {
  if (!a || !b) return a.has_value() == b.has_value();
  return same_entity(*a, *b);
}

// Runs candidates through the filters in the order a rule chain proposes
// them, recording each test exactly once.
class Chain {
 public:
  Chain(NpRef pronoun, const RuleContext &ctx) : p_(pronoun), ctx_(ctx) {
    for (const PositionedPhrase &ph : phrase_surface_order(ctx.s)) {
      const auto *np = std::get_if<NpRef>(&ph.phrase);
      if (!np) continue;
      const NounPhrase &n = ctx.d.np(*np);
      bool bound = n.anaphor == AnaphorKind::kNone ||
                   (np->index < ctx.bindings.size() && ctx.bindings[np->index]);
      std::optional<SpecTarget> t;
      if (bound) t = entity_of(ctx.bindings, *np);
      else if (n.given_cospec) t = canonical(ctx.bindings, *n.given_cospec);  // annotated, known up front
      bindings_.push_back({*np, t});
    }
  }

  FilterVerdict check(const std::string &step, const SpecTarget &t) {
    FilterVerdict v = acceptable_cospec(ctx_.d, p_, t, bindings_, ctx_.cfg.filter);
    record(step, t, v);
    return v;
  }

  void record(const std::string &step, const SpecTarget &t, FilterVerdict v) {
    out_.trace.push_back({step, t, v});
    tested_.push_back(t);
  }

  bool unresolved(const SpecTarget &t) const {
    for (const Atom &a : t.members())
      if (const auto *np = std::get_if<NpRef>(&a); np && ctx_.d.np(*np).is_pronoun()) return true;
    return false;
  }

  bool tested(const SpecTarget &t) const {
    return std::any_of(tested_.begin(), tested_.end(),
                       [&](const SpecTarget &x) { return same_entity(x, t); });
  }

  // Tests `t` unless it is a verb phrase, an unresolved pronoun or was
  // already tested.
  bool test(const std::string &step, const std::optional<SpecTarget> &t) {
    if (!t || t->is_vp() || tested(*t) || unresolved(*t)) return false;
    if (!check(step, *t).accepted) return false;
    resolve(step, *t);
    return true;
  }

  void resolve(const std::string &step, const SpecTarget &t) {
    out_.kind = OutcomeKind::kResolved;
    out_.cospec = t;
    out_.rule = step;
  }

  ResolutionOutcome fail(OutcomeKind k, const std::string &step) {
    out_.kind = k;
    out_.cospec.reset();
    out_.rule = step;
    return std::move(out_);
  }

  ResolutionOutcome done() { return std::move(out_); }
  ResolutionOutcome &outcome() { return out_; }

 private:
  NpRef p_;
  const RuleContext &ctx_;
  SentenceBindings bindings_;
  std::vector<SpecTarget> tested_;
  ResolutionOutcome out_;
};

std::optional<SpecTarget> as_target(const std::vector<SpecTarget> &list) {
  if (list.empty()) return std::nullopt;
  if (list.size() == 1) return list.front();
  std::vector<Atom> atoms;
  for (const SpecTarget &t : list)
    for (const Atom &a : t.members())
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  return SpecTarget::make_set(std::move(atoms));
}

// Union of the given targets, or nothing when it is not a proper class
// containing `anchor`.
std::optional<SpecTarget> class_with(const Atom &anchor, const std::vector<SpecTarget> &parts) {
  std::vector<Atom> atoms;
  for (const SpecTarget &t : parts)
    for (const Atom &a : t.members())
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  if (atoms.size() < 2 || std::find(atoms.begin(), atoms.end(), anchor) == atoms.end())
    return std::nullopt;
  return SpecTarget::make_set(std::move(atoms));
}

bool resolve_reflexive(NpRef p, const RuleContext &ctx, Chain &chain) {
  for (const PositionedPhrase &ph : phrase_surface_order(ctx.s)) {
    const auto *np = std::get_if<NpRef>(&ph.phrase);
    if (!np) continue;
    if (*np == p) break;
    if (chain.test("reflexive", entity_of(ctx.bindings, *np))) return true;
  }
  return false;
}

}  // namespace

ResolutionOutcome resolve_first_second(NpRef p, const RuleContext &ctx) {
  const NounPhrase &n = ctx.d.np(p);
  Chain chain(p, ctx);
  const bool first = n.pronoun_class->person == PronounPerson::kFirst;
  const Atom anchor = first ? Atom(Speaker{}) : Atom(Hearer{});
  if (n.number == Number::kSingular) {
    SpecTarget t(anchor);
    chain.record("deictic", t, {});
    chain.resolve("deictic", t);
    return chain.done();
  }
  const FocusState &st = ctx.state;
  // The actor focus, when it already is a class with the speaker (hearer) in it.
  if (st.af && st.af->is_set() && st.af->contains(anchor) && chain.test("plural-af", st.af))
    return chain.done();
  // The focus for a class with the speaker (hearer) in it.
  std::optional<SpecTarget> focus_class;
  if (!st.cf && st.focus_sets) {
    focus_class = as_target(st.focus_sets->actor_set);
  } else if (st.cf && is_animate(ctx.d, *st.cf)) {
    focus_class = st.cf;
  } else {
    for (const SpecTarget &t : st.alfl)
      if (t.is_set() && is_animate(ctx.d, t)) { focus_class = t; break; }
  }
  if (focus_class && chain.test("plural-focus-class", class_with(anchor, {SpecTarget(anchor), *focus_class})))
    return chain.done();
  // Classes assembled from the actor focus and the actor focus stack.
  std::vector<SpecTarget> actors;
  if (st.af) actors.push_back(*st.af);
  for (auto it = st.af_stack.rbegin(); it != st.af_stack.rend(); ++it) actors.push_back(*it);
  if (chain.test("plural-actor-class", class_with(anchor, actors))) return chain.done();
  if (st.af && !actors.empty()) {
    std::vector<SpecTarget> older(actors.begin() + 1, actors.end());
    if (chain.test("plural-stacked-actor-class", class_with(anchor, older))) return chain.done();
  }
  return chain.fail(OutcomeKind::kBackwardsNonAntecedentOrForwardCospec, "plural-none");
}

std::optional<SpecTarget> recency_candidate(const Discourse &d, const Sentence &s,
                                            const FocusState &state, const Bindings &b) {
  if (!s.prev) return std::nullopt;
  const Sentence &prev = d.sentence(*s.prev);
  const std::vector<NpRef> &slot = !prev.np2.empty() ? prev.np2 : prev.np1;
  if (slot.empty()) return std::nullopt;
  // A conjoined slot is one constituent: the set of its members.
  SpecTarget last = entity_of(b, slot.front());
  if (slot.size() > 1) {
    std::vector<Atom> atoms(slot.begin(), slot.end());
    last = canonical(b, SpecTarget::make_set(std::move(atoms)));
  }
  for (const SpecTarget &t : state.alfl)
    if (same_entity(t, last)) return t;
  return std::nullopt;
}

ResolutionOutcome resolve_agent_pronoun(NpRef p, const RuleContext &ctx) {
  const Discourse &d = ctx.d;
  const FocusState &st = ctx.state;
  Chain chain(p, ctx);

  if (d.np(p).is_reflexive() && resolve_reflexive(p, ctx, chain)) return chain.done();

  // Focus sets stand in for a missing actor or discourse focus.
  if (!st.cf || !st.af) {
    if (st.focus_sets && chain.test("1-focus-set", as_target(st.focus_sets->actor_set)))
      return chain.done();
    if (!st.cf && !st.af) return chain.fail(OutcomeKind::kBackwardsNonAntecedent, "1");
  }

  // Recency rule.
  if (ctx.cfg.recency_scope != RecencyScope::kOff &&
      chain.test("2a-recency", recency_candidate(d, ctx.s, st, ctx.bindings)))
    return chain.done();

  // Animate discourse focus rule: an animate focus older than the actor focus wins.
  if (st.cf && st.af && !same(st.cf, st.af) && st.cf_since < st.af_since &&
      is_animate(d, *st.cf) && chain.test("3-animate-df", st.cf))
    return chain.done();

  bool af_agrees = false;
  if (st.af && !chain.tested(*st.af)) {
    FilterVerdict v = agree(d, p, *st.af);
    af_agrees = v.accepted;
    if (af_agrees) {
      if (st.cf && !same(st.cf, st.af) && st.cf_since == st.af_since && is_animate(d, *st.cf) &&
          agree(d, p, *st.cf).accepted)
        chain.outcome().ambiguity_warning = true;

      // Potential actor ambiguity: the pronoun may co-specify the actor focus
      // and a single potential actor exists.
      const std::vector<SpecTarget> paf = potential_actors(st);
      if (paf.size() == 1) {
        const SpecTarget &pa = paf.front();
        if (!ctx.cfg.paa_modification) {
          chain.record("4b-paa", *st.af, v);
          chain.outcome().ambiguous = {*st.af, pa};
          return chain.fail(OutcomeKind::kPotentialActorAmbiguity, "4b-paa");
        }
        FilterVerdict va = chain.check("4b-paa-filter", *st.af);
        FilterVerdict vp = chain.check("4b-paa-filter", pa);
        if (va.accepted && vp.accepted) {
          chain.outcome().ambiguous = {*st.af, pa};
          return chain.fail(OutcomeKind::kPotentialActorAmbiguity, "4b-paa");
        }
        if (va.accepted || vp.accepted) {
          chain.resolve("4b-paa-filter", va.accepted ? *st.af : pa);
          return chain.done();
        }
      } else if (chain.test("3-af", st.af)) {
        return chain.done();
      }
    } else {
      chain.record("3-af", *st.af, v);
    }
  }

  // Unreliable pronoun use: the actor focus was pronominalized the same way
  // but cannot co-specify.
  if (st.af && !af_agrees && st.af_mention) {
    const NounPhrase &m = d.np(*st.af_mention);
    if (m.is_pronoun() && pronoun_lemma(m.text) == pronoun_lemma(d.np(p).text))
      return chain.fail(OutcomeKind::kUnreliablePronounUse, "5");
  }

  if (chain.test("6-af", st.af)) return chain.done();
  for (const SpecTarget &t : potential_actors(st))
    if (chain.test("7-paf", t)) return chain.done();
  for (auto it = st.af_stack.rbegin(); it != st.af_stack.rend(); ++it)
    if (chain.test("8-af-stack", *it)) return chain.done();
  if (chain.test("10-df", st.cf)) return chain.done();
  // A plural pronoun may take the actor focus together with an animate
  // partner: the focus, else the first potential actor, else the previous
  // actor focus.
  if (d.np(p).number == Number::kPlural && st.af && !st.af->is_set()) {
    std::optional<SpecTarget> partner;
    if (st.cf && !same(st.cf, st.af) && is_animate(d, *st.cf)) partner = st.cf;
    else if (auto paf = potential_actors(st); !paf.empty()) partner = paf.front();
    else if (!st.af_stack.empty()) partner = st.af_stack.back();
    if (partner && chain.test("10b-actor-class", as_target({*st.af, *partner}))) return chain.done();
  }
  for (const SpecTarget &t : st.alfl)
    if (chain.test("11-pdf", t)) return chain.done();
  return chain.fail(OutcomeKind::kBackwardsNonAntecedent, "12");
}

ResolutionOutcome resolve_nonagent_pronoun(NpRef p, const RuleContext &ctx) {
  const Discourse &d = ctx.d;
  const FocusState &st = ctx.state;
  Chain chain(p, ctx);

  if (d.np(p).is_reflexive() && resolve_reflexive(p, ctx, chain)) return chain.done();

  if (!st.cf) {
    if (st.focus_sets) {
      for (const SpecTarget &t : st.focus_sets->theme_set)
        if (chain.test("1-theme-set", t)) return chain.done();
      if (st.focus_sets->theme_set.size() > 1 &&
          chain.test("1-theme-set", as_target(st.focus_sets->theme_set)))
        return chain.done();
      if (chain.test("1-actor-set", as_target(st.focus_sets->actor_set))) return chain.done();
      for (const SpecTarget &t : st.focus_sets->actor_set)
        if (chain.test("1-actor-set", t)) return chain.done();
    }
    return chain.fail(OutcomeKind::kBackwardsNonAntecedentOrForwardCospec, "1");
  }

  if (ctx.cfg.recency_scope == RecencyScope::kAllPositions &&
      chain.test("2-recency", recency_candidate(d, ctx.s, st, ctx.bindings)))
    return chain.done();
  if (chain.test("3-df", st.cf)) return chain.done();
  for (const SpecTarget &t : st.alfl)
    if (chain.test("4-pdf", t)) return chain.done();
  for (auto it = st.df_stack.rbegin(); it != st.df_stack.rend(); ++it)
    if (chain.test("5-df-stack", *it)) return chain.done();
  if (chain.test("6-af", st.af)) return chain.done();
  for (const SpecTarget &t : potential_actors(st))
    if (chain.test("7-paf", t)) return chain.done();
  return chain.fail(OutcomeKind::kBackwardsNonAntecedentOrForwardCospec, "8");
}

ResolutionOutcome resolve_pronoun(NpRef p, const RuleContext &ctx) {
  if (ctx.d.np(p).pronoun_class->person != PronounPerson::kThird) return resolve_first_second(p, ctx);
  const std::vector<NpRef> agents = agent_nps(ctx.d, ctx.s);
  if (std::find(agents.begin(), agents.end(), p) != agents.end()) return resolve_agent_pronoun(p, ctx);
  return resolve_nonagent_pronoun(p, ctx);
}

SentenceResolution resolve_sentence(const Discourse &d, const Sentence &s, const FocusState &state,
                                    Bindings &bindings, const RuleConfig &cfg) {
  SentenceResolution out;
  bindings.resize(d.nps.size());
  for (NpRef r : anaphora_in_order(d, s)) {
    const NounPhrase &n = d.np(r);
    ResolutionOutcome o;
    if (n.given_cospec) {
      o.kind = OutcomeKind::kResolved;
      o.cospec = canonical(bindings, *n.given_cospec);
      o.rule = "annotation";
    } else if (n.anaphor != AnaphorKind::kPronoun) {
      if (!n.implicit_spec_of) continue;
      // Reported, never bound: the phrase keeps its own referent.
      o.kind = OutcomeKind::kResolved;
      o.cospec = entity_of(bindings, *n.implicit_spec_of);
      o.rule = "implicit-spec";
      out.outcomes.emplace_back(r, std::move(o));
      continue;
    } else {
      o = resolve_pronoun(r, RuleContext{d, s, state, bindings, cfg});
    }
    if (o.resolved()) bindings[r.index] = canonical(bindings, *o.cospec);
    out.outcomes.emplace_back(r, std::move(o));
  }
  out.update = update_focus(state, d, s, bindings);
  return out;
}

}  // namespace focus
