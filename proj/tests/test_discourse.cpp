#include <doctest.h>

#include "focus/corpus_format.hpp"
#include "focus/discourse.hpp"

using namespace focus;

namespace {

const char *kTwo = R"(!focus-corpus v1
D tiny speaker="writer" hearer="reader"
S s1 type=normal complete=1 do_anaphora=0
  N ann sent=s1 pos=subject text="Ann" anaphor=none gender=f number=sg person=3sg life=anim
  N cake sent=s1 pos=np1 text="a cake" anaphor=none gender=n number=sg person=3sg life=inan
  V v1 sent=s1 text="baked" theme=cake
S s2 type=normal complete=1 do_anaphora=0
  N she sent=s2 pos=subject text="She" anaphor=pronoun pclass=3-plain gender=f number=sg person=3sg life=anim gold=np:ann
  N it sent=s2 pos=np1 text="it" anaphor=pronoun pclass=3-plain gender=n number=sg person=3sg life=inan gold=np:cake
  V v2 sent=s2 text="ate" theme=it
)";

Discourse tiny() { return parse_corpus(kTwo).discourses.at(0); }

}  // namespace

TEST_CASE("sets compare as sets") {
  const SpecTarget a = SpecTarget::make_set({Speaker{}, NpRef{1}, NpRef{2}});
  const SpecTarget b = SpecTarget::make_set({NpRef{2}, Speaker{}, NpRef{1}});
  CHECK(same_entity(a, b));
  CHECK_FALSE(a == b);
  CHECK_FALSE(same_entity(a, SpecTarget(NpRef{1})));
  CHECK(a.contains(Speaker{}));
  CHECK_FALSE(a.contains(Hearer{}));
}

TEST_CASE("a single atom is not a set") {
  const SpecTarget t(VpRef{0});
  CHECK_FALSE(t.is_set());
  CHECK(t.is_vp());
  CHECK_FALSE(t.as_np());
}

TEST_CASE("links and anaphor positions follow the slots") {
  const Discourse d = tiny();
  REQUIRE(d.sentences.size() == 2);
  CHECK_FALSE(d.sentences[0].prev);
  CHECK(d.sentences[0].next == SentenceRef{1});
  CHECK(d.sentences[1].anaphor_positions == std::vector<Position>{Position::kSubject, Position::kNp1});
  CHECK(validate_discourse(d).empty());

  const auto ana = anaphora_in_order(d, d.sentences[1]);
  REQUIRE(ana.size() == 2);
  CHECK(d.np(ana[0]).id == "she");
  CHECK(d.np(ana[1]).id == "it");
}

TEST_CASE("surface order ends with the verb phrase") {
  const Discourse d = tiny();
  const auto order = phrase_surface_order(d.sentences[0]);
  REQUIRE(order.size() == 3);
  CHECK(order[0].position == Position::kSubject);
  CHECK(std::holds_alternative<VpRef>(order.back().phrase));
  CHECK_FALSE(order.back().position);
}

TEST_CASE("validation reports broken links") {
  Discourse d = tiny();
  d.sentences[1].prev.reset();
  const auto v = validate_discourse(d);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().entity == "s2");
  CHECK(v.front().field == "prev");
}

TEST_CASE("cleft item must be set iff the sentence is a cleft") {
  Discourse d = tiny();
  d.sentences[0].type = SentenceType::kCleft;
  const auto v = validate_discourse(d);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().field == "cleft_item");
}

TEST_CASE("the executive fixture has five sentences, ten noun phrases and five verb phrases") {
  const Discourse *d = load_worked_examples().find("ex4-executive");
  REQUIRE(d);
  CHECK(d->sentences.size() == 5);
  CHECK(d->nps.size() == 10);
  CHECK(d->vps.size() == 5);
}
