#include <doctest.h>

#include <sstream>

#include "focus/corpus_format.hpp"
#include "focus/filters.hpp"

using namespace focus;

namespace {

const char *kText = R"(!focus-corpus v1
D f speaker="writer" hearer="reader"
S s1 type=normal complete=1 do_anaphora=0
  N john sent=s1 pos=subject text="John" anaphor=none gender=m number=sg person=3sg life=anim
  N mary sent=s1 pos=np1 text="Mary" anaphor=none gender=f number=sg person=3sg life=anim
  N rock sent=s1 pos=np2 text="a rock" anaphor=none gender=n number=sg person=3sg life=inan
  V v1 sent=s1 text="showed" theme=rock
S s2 type=normal complete=1 do_anaphora=0
  N he sent=s2 pos=subject text="he" anaphor=pronoun pclass=3-plain gender=m number=sg person=3sg life=anim gold=np:john
  N him sent=s2 pos=np1 text="him" anaphor=pronoun pclass=3-plain gender=m number=sg person=3sg life=anim gold=np:john
  N self sent=s2 pos=np2 text="himself" anaphor=pronoun pclass=3-refl gender=m number=sg person=3sg life=anim gold=np:john
  V v2 sent=s2 text="hurt" theme=him
S s3 type=normal complete=1 do_anaphora=0
  N they sent=s3 pos=subject text="they" anaphor=pronoun pclass=3-plain gender=mfn number=pl person=3pl life=unk gold=set(np:john,np:mary)
  V v3 sent=s3 text="left"
)";

const Discourse &doc() {
  static const Discourse d = parse_corpus(kText).discourses.at(0);
  return d;
}

NpRef np(const std::string &id) { return *doc().find_np(id); }
SpecTarget t(const std::string &id) { return SpecTarget(np(id)); }

}  // namespace

TEST_CASE("agreement checks gender, number and life form") {
  const Discourse &d = doc();
  CHECK(agree(d, np("he"), t("john")).accepted);
  CHECK(agree(d, np("he"), t("mary")).reason == FilterReason::kGender);
  CHECK(agree(d, np("he"), t("rock")).reason == FilterReason::kGender);
  CHECK(agree(d, np("they"), t("john")).reason == FilterReason::kNumber);
  CHECK(agree(d, np("they"), SpecTarget::make_set({np("john"), np("mary")})).accepted);
  CHECK(agree(d, np("he"), SpecTarget(Speaker{})).reason == FilterReason::kPerson);
}

TEST_CASE("a set takes the union of member genders and the lowest person") {
  const Features f = features_of(doc(), SpecTarget::make_set({Speaker{}, np("john")}));
  CHECK(f.number == Number::kPlural);
  CHECK(f.person == 1);
  CHECK(f.life == Life::kAnimate);
  CHECK(f.gender.intersects({GenderSet::kFeminine}));
}

TEST_CASE("plain pronouns are disjoint from co-arguments; reflexives are not") {
  const Discourse &d = doc();
  CHECK(disjoint(d, np("him"), np("he")));
  CHECK_FALSE(disjoint(d, np("self"), np("he")));
  CHECK_FALSE(disjoint(d, np("him"), np("john")));
  CHECK_FALSE(disjoint(d, np("him"), np("him")));
}

TEST_CASE("disjoint reference rejects a candidate a co-argument already specifies") {
  const Discourse &d = doc();
  const SentenceBindings b = {{np("he"), SpecTarget(np("john"))}};
  CHECK(acceptable_cospec(d, np("him"), t("john"), b, {}).reason == FilterReason::kDisjoint);
  CHECK(acceptable_cospec(d, np("self"), t("john"), b, {}).accepted);
}

TEST_CASE("the oracle vetoes only matching records, sets in any order") {
  const Discourse &d = doc();
  std::istringstream in(
      "# comment\n"
      "f they set(np:mary,np:john) reject\n"
      "f he np:john reject  # trailing comment\n"
      "other he np:john reject\n");
  FilterConfig cfg{InferenceOracle::parse(in)};
  CHECK(cfg.inference_oracle.rejects().size() == 3);
  CHECK(acceptable_cospec(d, np("he"), t("john"), {}, cfg).reason == FilterReason::kInferenceVeto);
  CHECK(acceptable_cospec(d, np("him"), t("john"), {}, cfg).accepted);
  const SpecTarget jm = SpecTarget::make_set({np("john"), np("mary")});
  CHECK(acceptable_cospec(d, np("they"), jm, {}, cfg).reason == FilterReason::kInferenceVeto);
}

TEST_CASE("malformed oracle lines are errors") {
  std::istringstream in("f he np:john accept\n");
  CHECK_THROWS_AS(InferenceOracle::parse(in), std::runtime_error);
}

TEST_CASE("target keys sort set members with the speaker first") {
  const Discourse &d = doc();
  CHECK(target_key(d, SpecTarget::make_set({np("mary"), Speaker{}, np("john")})) == "set(SPEAKER,np:john,np:mary)");
  CHECK(normalize_target_text("set(np:b,np:a)") == "set(np:a,np:b)");
  CHECK(normalize_target_text("np:a") == "np:a");
}
