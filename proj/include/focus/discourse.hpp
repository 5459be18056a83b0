#ifndef FOCUS_DISCOURSE_HPP_
#define FOCUS_DISCOURSE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace focus {

// Index of a noun phrase inside its owning Discourse.
struct NpRef {
  std::size_t index = 0;
  auto operator<=>(const NpRef &) const = default;
};

// Index of a verb phrase inside its owning Discourse.
struct VpRef {
  std::size_t index = 0;
  auto operator<=>(const VpRef &) const = default;
};

struct SentenceRef {
  std::size_t index = 0;
  auto operator<=>(const SentenceRef &) const = default;
};

struct Speaker {
  auto operator<=>(const Speaker &) const = default;
};
struct Hearer {
  auto operator<=>(const Hearer &) const = default;
};

// A single database element that an expression can specify.
using Atom = std::variant<Speaker, Hearer, NpRef, VpRef>;

// Co-specification target: one atom, or a non-nested set of atoms.
// Member order is kept for serialization; identity comparisons go through
// same_entity() which ignores order.
class SpecTarget {
 public:
  SpecTarget() = default;
  SpecTarget(Atom atom) : members_{atom} {}  // NOLINT: implicit by design of atoms
  static SpecTarget make_set(std::vector<Atom> members);

  bool is_set() const { return is_set_; }
  const std::vector<Atom> &members() const { return members_; }
  const Atom &atom() const { return members_.front(); }

  bool contains(const Atom &a) const;
  bool is_vp() const;
  std::optional<NpRef> as_np() const;

  // Structural equality including set member order.
  bool operator==(const SpecTarget &) const = default;

 private:
  std::vector<Atom> members_;
  bool is_set_ = false;
};

// Order-insensitive identity of two targets (sets compare as sets).
bool same_entity(const SpecTarget &a, const SpecTarget &b);

enum class SentenceType { kNormal, kIsA, kThereInsertion, kCleft, kPseudoCleft };
enum class Position { kSubject, kNp1, kNp2 };
enum class AnaphorKind { kNone, kDefNp, kPronoun };
enum class PronounPerson { kFirst, kSecond, kThird };
enum class PronounForm { kPlain, kReflexive, kPossessive };
enum class Number { kSingular, kPlural };
enum class Life { kAnimate, kInanimate, kUnknown };

// Bit set over {m, f, n}.
struct GenderSet {
  static constexpr std::uint8_t kMasculine = 1, kFeminine = 2, kNeuter = 4;
  std::uint8_t bits = 0;
  bool empty() const { return bits == 0; }
  bool intersects(GenderSet o) const { return (bits & o.bits) != 0; }
  GenderSet operator|(GenderSet o) const { return {static_cast<std::uint8_t>(bits | o.bits)}; }
  bool operator==(const GenderSet &) const = default;
};

// Grammatical person together with number, as stored in the person slot.
struct Person {
  int value = 3;  // 1, 2 or 3
  Number number = Number::kSingular;
  bool operator==(const Person &) const = default;
};

struct PronounClass {
  PronounPerson person = PronounPerson::kThird;
  PronounForm form = PronounForm::kPlain;
  bool operator==(const PronounClass &) const = default;
};

struct NounPhrase {
  std::string id;
  std::string text;
  AnaphorKind anaphor = AnaphorKind::kNone;
  std::optional<PronounClass> pronoun_class;
  GenderSet gender;
  Number number = Number::kSingular;
  Person person;
  Life life = Life::kUnknown;
  std::optional<NpRef> implicit_spec_of;
  std::optional<SpecTarget> given_cospec;
  std::optional<SpecTarget> gold;
  SentenceRef sentence;
  Position position = Position::kSubject;

  bool is_pronoun() const { return anaphor == AnaphorKind::kPronoun; }
  bool is_reflexive() const {
    return pronoun_class && pronoun_class->form == PronounForm::kReflexive;
  }
  bool is_possessive() const {
    return pronoun_class && pronoun_class->form == PronounForm::kPossessive;
  }
  bool operator==(const NounPhrase &) const = default;
};

struct VerbPhrase {
  std::string id;
  std::string text;
  std::vector<NpRef> theme;
  SentenceRef sentence;
  bool operator==(const VerbPhrase &) const = default;
};

struct Sentence {
  std::string id;
  SentenceType type = SentenceType::kNormal;
  bool complete = true;
  bool do_anaphora = false;
  std::optional<NpRef> cleft_item;
  std::optional<NpRef> pseudo_cleft_item;
  std::vector<NpRef> subject;
  std::vector<NpRef> np1;
  std::vector<NpRef> np2;
  std::optional<VpRef> vp;
  std::vector<Position> anaphor_positions;
  std::optional<SentenceRef> prev;
  std::optional<SentenceRef> next;

  const std::vector<NpRef> &at(Position p) const;
  std::vector<NpRef> &at(Position p);
  bool operator==(const Sentence &) const = default;
};

// An annotated discourse segment. Owns all of its sentences and phrases;
// cross references are indices into the vectors below.
struct Discourse {
  std::string id;
  std::string speaker = "speaker";
  std::string hearer = "hearer";
  std::vector<Sentence> sentences;
  std::vector<NounPhrase> nps;
  std::vector<VerbPhrase> vps;
  // Free-form annotation notes ('#' lines) kept for round-tripping.
  std::vector<std::string> notes;

  const NounPhrase &np(NpRef r) const { return nps.at(r.index); }
  const VerbPhrase &vp(VpRef r) const { return vps.at(r.index); }
  const Sentence &sentence(SentenceRef r) const { return sentences.at(r.index); }

  std::optional<NpRef> find_np(const std::string &id) const;
  std::optional<VpRef> find_vp(const std::string &id) const;
  std::optional<SentenceRef> find_sentence(const std::string &id) const;

  // Fills prev/next links and anaphor_positions from list order and NP slots.
  void link();
  bool operator==(const Discourse &) const = default;
};

struct Violation {
  std::string entity;
  std::string field;
  std::string rule;
  bool operator==(const Violation &) const = default;
};

std::vector<Violation> validate_discourse(const Discourse &d);

// Anaphoric NPs of `s` in subject, np1, np2 order.
std::vector<NpRef> anaphora_in_order(const Discourse &d, const Sentence &s);

using Phrase = std::variant<NpRef, VpRef>;
struct PositionedPhrase {
  std::optional<Position> position;  // empty for the verb phrase
  Phrase phrase;
  bool operator==(const PositionedPhrase &) const = default;
};

// All NPs in subject, np1, np2 order followed by the verb phrase.
std::vector<PositionedPhrase> phrase_surface_order(const Sentence &s);

std::string to_string(Position p);
std::string to_string(SentenceType t);

}  // namespace focus

#endif  // FOCUS_DISCOURSE_HPP_
