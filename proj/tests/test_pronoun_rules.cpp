#include <doctest.h>

#include <algorithm>

#include "focus/corpus_format.hpp"
#include "focus/evaluation.hpp"
#include "focus/pronoun_rules.hpp"

using namespace focus;

namespace {

const Discourse &example(const std::string &id) {
  const Discourse *d = load_worked_examples().find(id);
  REQUIRE(d);
  return *d;
}

const Discourse &segment(const std::string &id) {
  const Discourse *d = load_bundled_corpus().find(id);
  REQUIRE(d);
  return *d;
}

const ResolutionOutcome &outcome(const Discourse &d, const DiscourseRun &run, const std::string &np) {
  const PronounResolution *r = run.find(*d.find_np(np));
  REQUIRE(r);
  return r->outcome;
}

bool tried(const ResolutionOutcome &o, const std::string &step) {
  return std::any_of(o.trace.begin(), o.trace.end(), [&](const RuleTraceEntry &e) { return e.step == step; });
}

const char *kConjoined = R"(!focus-corpus v1
D conj speaker="writer" hearer="reader"
S s1 type=normal complete=1 do_anaphora=0
  N ann sent=s1 pos=subject text="Ann" anaphor=none gender=f number=sg person=3sg life=anim
  N bob sent=s1 pos=np1 text="Bob" anaphor=none gender=m number=sg person=3sg life=anim
  N carl sent=s1 pos=np1 text="Carl" anaphor=none gender=m number=sg person=3sg life=anim
  V v1 sent=s1 text="met" theme=bob,carl
S s2 type=normal complete=1 do_anaphora=0
  N they sent=s2 pos=subject text="They" anaphor=pronoun pclass=3-plain gender=m number=pl person=3pl life=anim gold=set(np:bob,np:carl)
  V v2 sent=s2 text="left early"
)";

}  // namespace

TEST_CASE("pronoun lemmas group case and reflexive forms") {
  CHECK(pronoun_lemma("him") == "he");
  CHECK(pronoun_lemma("Himself") == "he");
  CHECK(pronoun_lemma("They're") == "they");
  CHECK(pronoun_lemma("us") == "we");
  CHECK(pronoun_lemma("its") == "it");
}

TEST_CASE("first person singular is the speaker") {
  const Discourse &d = example("ex1-hat-a");
  const DiscourseRun run = run_discourse(d, RuleConfig{});
  const ResolutionOutcome &o = outcome(d, run, "i1");
  REQUIRE(o.resolved());
  CHECK(format_target(d, *o.cospec) == "SPEAKER");
}

TEST_CASE("we collects the speaker and the actors in focus") {
  const Discourse &d = example("ex2-movies");
  const DiscourseRun run = run_discourse(d, RuleConfig{});
  for (const char *we : {"we1", "we2"}) {
    const ResolutionOutcome &o = outcome(d, run, we);
    REQUIRE(o.resolved());
    CHECK(o.cospec->is_set());
    CHECK(target_key(d, *o.cospec) == "set(SPEAKER,np:bill,np:john)");
  }
}

TEST_CASE("a pronoun with no possible antecedent in the first sentence") {
  const Discourse &d = segment("sidner-lake");
  const DiscourseRun run = run_discourse(d, RuleConfig{});
  CHECK(outcome(d, run, "we1").kind == OutcomeKind::kBackwardsNonAntecedentOrForwardCospec);
  CHECK(outcome(d, run, "it1").kind == OutcomeKind::kBackwardsNonAntecedent);
}

TEST_CASE("potential actor ambiguity survives the filter when both actors agree") {
  for (const char *id : {"ex3-council-a", "ex3-council-b"}) {
    const Discourse &d = example(id);
    const DiscourseRun run = run_discourse(d, RuleConfig{});
    const ResolutionOutcome &o = outcome(d, run, "they1");
    CHECK(o.kind == OutcomeKind::kPotentialActorAmbiguity);
    REQUIRE(o.ambiguous.size() == 2);
    CHECK(format_target(d, o.ambiguous[0]) == "np:council");
    CHECK(format_target(d, o.ambiguous[1]) == "np:women");
    CHECK(tried(o, "4b-paa-filter"));
  }
}

TEST_CASE("without the modification the ambiguity is declared unfiltered") {
  const Discourse &d = example("ex3-council-a");
  RuleConfig cfg;
  cfg.paa_modification = false;
  const DiscourseRun run = run_discourse(d, cfg);
  const ResolutionOutcome &o = outcome(d, run, "they1");
  CHECK(o.kind == OutcomeKind::kPotentialActorAmbiguity);
  CHECK_FALSE(tried(o, "4b-paa-filter"));
}

TEST_CASE("the executive is the only actor the rules consider") {
  const Discourse &d = example("ex4-executive");
  const DiscourseRun run = run_discourse(d, RuleConfig{});
  CHECK(outcome(d, run, "he1").rule == "3-animate-df");
  for (const char *he : {"he1", "he2", "he3"}) {
    const ResolutionOutcome &o = outcome(d, run, he);
    REQUIRE(o.resolved());
    CHECK(format_target(d, *o.cospec) == "np:exec");
    for (const RuleTraceEntry &e : o.trace) CHECK(format_target(d, e.candidate) != "np:housekeeper");
  }
}

TEST_CASE("the recency candidate is the last NP slot of the previous sentence") {
  const Discourse &d = example("ex4-executive");
  const DiscourseRun run = run_discourse(d, RuleConfig{});
  const auto c = recency_candidate(d, d.sentences[2], run.steps[1].state, run.bindings);
  REQUIRE(c);
  CHECK(format_target(d, *c) == "np:desk");
  // It is tried first and rejected on gender.
  const ResolutionOutcome &o = outcome(d, run, "he1");
  REQUIRE_FALSE(o.trace.empty());
  CHECK(o.trace.front().step == "2a-recency");
  CHECK(o.trace.front().verdict.reason == FilterReason::kGender);
}

TEST_CASE("a conjoined slot is a plural recency candidate") {
  const Discourse d = parse_corpus(kConjoined).discourses.at(0);
  const DiscourseRun run = run_discourse(d, RuleConfig{});
  const auto c = recency_candidate(d, d.sentences[1], run.steps[0].state, run.bindings);
  REQUIRE(c);
  CHECK(target_key(d, *c) == "set(np:bob,np:carl)");
  const ResolutionOutcome &o = outcome(d, run, "they");
  REQUIRE(o.resolved());
  CHECK(target_key(d, *o.cospec) == "set(np:bob,np:carl)");
}

TEST_CASE("recency applies to non-agent pronouns only when asked") {
  const Discourse &d = segment("hobbs-kite");
  RuleConfig all;
  all.recency_scope = RecencyScope::kAllPositions;
  const DiscourseRun narrow = run_discourse(d, RuleConfig{});
  const ResolutionOutcome &agent_only = outcome(d, narrow, "it1");
  const DiscourseRun wide = run_discourse(d, all);
  CHECK_FALSE(tried(agent_only, "2-recency"));
  CHECK(tried(outcome(d, wide, "it1"), "2-recency"));
}

TEST_CASE("plain pronouns avoid their co-arguments") {
  const Discourse &d = example("ex5-umit");
  const DiscourseRun run = run_discourse(d, RuleConfig{});
  const ResolutionOutcome &he = outcome(d, run, "he1");
  const ResolutionOutcome &them = outcome(d, run, "them1");
  REQUIRE(he.resolved());
  REQUIRE(them.resolved());
  CHECK(format_target(d, *he.cospec) == "np:man");
  CHECK(format_target(d, *them.cospec) == "np:men");
}

TEST_CASE("an inference veto moves the rules on to the next candidate") {
  const Discourse &d = segment("hobbs-kite");
  RuleConfig cfg;
  cfg.filter.inference_oracle = InferenceOracle({{"hobbs-kite", "it1", "np:kite2"}});
  const DiscourseRun run = run_discourse(d, cfg);
  const ResolutionOutcome &o = outcome(d, run, "it1");
  REQUIRE(o.resolved());
  CHECK(format_target(d, *o.cospec) == "np:kite1");
  CHECK(std::any_of(o.trace.begin(), o.trace.end(),
                    [](const RuleTraceEntry &e) { return e.verdict.reason == FilterReason::kInferenceVeto; }));
}
