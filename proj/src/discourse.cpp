#include "focus/discourse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace focus {

SpecTarget SpecTarget::make_set(std::vector<Atom> members) {
  if (members.empty()) throw std::invalid_argument("empty co-specification set");
  SpecTarget t;
  t.members_ = std::move(members);
  t.is_set_ = true;
  return t;
}

bool SpecTarget::contains(const Atom &a) const {
  return std::find(members_.begin(), members_.end(), a) != members_.end();
}

bool SpecTarget::is_vp() const {
  return !is_set_ && !members_.empty() && std::holds_alternative<VpRef>(members_.front());
}

std::optional<NpRef> SpecTarget::as_np() const {
  if (is_set_ || members_.empty()) return std::nullopt;
  if (const auto *np = std::get_if<NpRef>(&members_.front())) return *np;
  return std::nullopt;
}

bool same_entity(const SpecTarget &a, const SpecTarget &b) {
  if (a.is_set() != b.is_set()) return false;
  if (!a.is_set()) return a.members() == b.members();
  auto x = a.members(), y = b.members();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  return x == y;
}

const std::vector<NpRef> &Sentence::at(Position p) const {
  switch (p) {
    case Position::kSubject: return subject;
    case Position::kNp1: return np1;
    case Position::kNp2: return np2;
  }
  return subject;
}

std::vector<NpRef> &Sentence::at(Position p) {
  return const_cast<std::vector<NpRef> &>(static_cast<const Sentence &>(*this).at(p));
}

namespace {

constexpr Position kPositions[] = {Position::kSubject, Position::kNp1, Position::kNp2};

template <typename T>
std::optional<T> find_by_id(const auto &items, const std::string &id) {
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].id == id) return T{i};
  return std::nullopt;
}

}  // namespace

std::optional<NpRef> Discourse::find_np(const std::string &id) const {
  return find_by_id<NpRef>(nps, id);
}
std::optional<VpRef> Discourse::find_vp(const std::string &id) const {
  return find_by_id<VpRef>(vps, id);
}
std::optional<SentenceRef> Discourse::find_sentence(const std::string &id) const {
  return find_by_id<SentenceRef>(sentences, id);
}

void Discourse::link() {
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    Sentence &s = sentences[i];
    s.prev = i > 0 ? std::optional<SentenceRef>{SentenceRef{i - 1}} : std::nullopt;
    s.next = i + 1 < sentences.size() ? std::optional<SentenceRef>{SentenceRef{i + 1}}
                                      : std::nullopt;
    s.anaphor_positions.clear();
    for (Position p : kPositions) {
      for (NpRef r : s.at(p)) {
        NounPhrase &n = nps.at(r.index);
        n.sentence = SentenceRef{i};
        n.position = p;
      }
      bool anaphoric = std::any_of(s.at(p).begin(), s.at(p).end(), [&](NpRef r) {
        return nps.at(r.index).anaphor != AnaphorKind::kNone;
      });
      if (anaphoric) s.anaphor_positions.push_back(p);
    }
    if (s.vp) vps.at(s.vp->index).sentence = SentenceRef{i};
  }
}

std::string to_string(Position p) {
  switch (p) {
    case Position::kSubject: return "subject";
    case Position::kNp1: return "np1";
    case Position::kNp2: return "np2";
  }
  return "?";
}

std::string to_string(SentenceType t) {
  switch (t) {
    case SentenceType::kNormal: return "normal";
    case SentenceType::kIsA: return "is_a";
    case SentenceType::kThereInsertion: return "there_insertion";
    case SentenceType::kCleft: return "cleft";
    case SentenceType::kPseudoCleft: return "pseudo_cleft";
  }
  return "?";
}

std::vector<Violation> validate_discourse(const Discourse &d) {
  std::vector<Violation> out;
  auto flag = [&](std::string entity, std::string field, std::string rule) {
    out.push_back({std::move(entity), std::move(field), std::move(rule)});
  };

  if (d.sentences.empty()) flag(d.id, "sentences", "discourse has no sentences");

  auto np_ok = [&](NpRef r) { return r.index < d.nps.size(); };
  auto target_ok = [&](const SpecTarget &t) {
    if (t.members().empty()) return false;
    for (const Atom &a : t.members()) {
      if (const auto *n = std::get_if<NpRef>(&a); n && !np_ok(*n)) return false;
      if (const auto *v = std::get_if<VpRef>(&a); v && v->index >= d.vps.size()) return false;
    }
    return true;
  };

  std::vector<int> np_owners(d.nps.size(), 0);
  std::vector<int> vp_owners(d.vps.size(), 0);

  for (std::size_t i = 0; i < d.sentences.size(); ++i) {
    const Sentence &s = d.sentences[i];
    std::optional<SentenceRef> want_prev, want_next;
    if (i > 0) want_prev = SentenceRef{i - 1};
    if (i + 1 < d.sentences.size()) want_next = SentenceRef{i + 1};
    if (s.prev != want_prev) flag(s.id, "prev", "link chain inconsistent with sentence order");
    if (s.next != want_next) flag(s.id, "next", "link chain inconsistent with sentence order");

    bool cleft = s.type == SentenceType::kCleft;
    bool pcleft = s.type == SentenceType::kPseudoCleft;
    if (cleft != s.cleft_item.has_value())
      flag(s.id, "cleft_item", "cleft_item must be set iff type is cleft");
    if (pcleft != s.pseudo_cleft_item.has_value())
      flag(s.id, "pseudo_cleft_item", "pseudo_cleft_item must be set iff type is pseudo_cleft");

    std::vector<Position> want_positions;
    for (Position p : kPositions) {
      bool anaphoric = false;
      for (NpRef r : s.at(p)) {
        if (!np_ok(r)) {
          flag(s.id, to_string(p), "dangling noun phrase reference");
          continue;
        }
        ++np_owners[r.index];
        const NounPhrase &n = d.np(r);
        if (n.sentence.index != i || n.position != p)
          flag(n.id, "sentence", "back reference does not match owning slot");
        anaphoric |= n.anaphor != AnaphorKind::kNone;
      }
      if (anaphoric) want_positions.push_back(p);
    }
    if (s.anaphor_positions != want_positions)
      flag(s.id, "anaphor_positions", "must list exactly the anaphoric positions in surface order");

    for (const auto &item : {s.cleft_item, s.pseudo_cleft_item}) {
      if (!item) continue;
      bool inside = false;
      for (Position p : kPositions)
        inside |= std::find(s.at(p).begin(), s.at(p).end(), *item) != s.at(p).end();
      if (!inside) flag(s.id, "cleft_item", "cleft item is not a noun phrase of the sentence");
    }

    if (s.vp) {
      if (s.vp->index >= d.vps.size()) {
        flag(s.id, "vp", "dangling verb phrase reference");
      } else {
        ++vp_owners[s.vp->index];
        if (d.vp(*s.vp).sentence.index != i)
          flag(d.vp(*s.vp).id, "sentence", "back reference does not match owning sentence");
      }
    }
  }

  for (std::size_t i = 0; i < d.nps.size(); ++i) {
    const NounPhrase &n = d.nps[i];
    if (np_owners[i] != 1) flag(n.id, "sentence", "noun phrase must belong to exactly one sentence");
    if (n.anaphor == AnaphorKind::kPronoun && !n.pronoun_class)
      flag(n.id, "pronoun_class", "pronoun requires a pronoun class");
    if (n.anaphor != AnaphorKind::kPronoun && n.pronoun_class)
      flag(n.id, "pronoun_class", "pronoun class only allowed on pronouns");
    if (n.anaphor == AnaphorKind::kNone && n.given_cospec)
      flag(n.id, "given_cospec", "non-anaphoric noun phrase cannot carry a co-specification");
    if (n.gender.empty()) flag(n.id, "gender", "gender set must be nonempty");
    if (n.person.value < 1 || n.person.value > 3) flag(n.id, "person", "person out of range");
    if (n.person.number != n.number) flag(n.id, "person", "person number disagrees with number");
    if (n.implicit_spec_of && !np_ok(*n.implicit_spec_of))
      flag(n.id, "implicit_spec_of", "dangling implicit specification");
    if (n.given_cospec && !target_ok(*n.given_cospec))
      flag(n.id, "given_cospec", "malformed or dangling co-specification target");
    if (n.gold && !target_ok(*n.gold)) flag(n.id, "gold", "malformed or dangling gold target");
  }
  for (std::size_t i = 0; i < d.vps.size(); ++i) {
    const VerbPhrase &v = d.vps[i];
    if (vp_owners[i] != 1) flag(v.id, "sentence", "verb phrase must belong to exactly one sentence");
    for (NpRef t : v.theme)
      if (!np_ok(t)) flag(v.id, "theme", "dangling theme reference");
      else if (d.np(t).sentence != v.sentence) flag(v.id, "theme", "theme outside own sentence");
  }
  return out;
}

std::vector<NpRef> anaphora_in_order(const Discourse &d, const Sentence &s) {
  std::vector<NpRef> out;
  for (Position p : kPositions)
    for (NpRef r : s.at(p))
      if (d.np(r).anaphor != AnaphorKind::kNone) out.push_back(r);
  return out;
}

std::vector<PositionedPhrase> phrase_surface_order(const Sentence &s) {
  std::vector<PositionedPhrase> out;
  for (Position p : kPositions)
    for (NpRef r : s.at(p)) out.push_back({p, r});
  if (s.vp) out.push_back({std::nullopt, *s.vp});
  return out;
}

}  // namespace focus
