#include "focus/corpus_format.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace focus {

CorpusError::CorpusError(CorpusErrorKind kind, std::size_t line, std::size_t column,
                         const std::string &msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + msg),
      kind_(kind),
      line_(line),
      column_(column) {}

const Discourse *CorpusFile::find(const std::string &id) const {
  for (const Discourse &d : discourses)
    if (d.id == id) return &d;
  return nullptr;
}

namespace {

struct Token {
  std::string key;    // empty for positional tokens
  std::string value;
  std::size_t column = 1;
};

struct Where {
  std::size_t line = 0;
  std::size_t column = 0;
};

[[noreturn]] void fail(CorpusErrorKind k, Where w, const std::string &msg) {
  throw CorpusError(k, w.line, w.column, msg);
}

std::vector<Token> tokenize(const std::string &line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') { ++i; continue; }
    Token t;
    t.column = i + 1;
    std::string raw;
    bool in_value = false;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
      char c = line[i];
      if (c == '=' && !in_value && t.key.empty()) {
        t.key = raw;
        raw.clear();
        in_value = true;
        ++i;
        if (t.key.empty()) fail(CorpusErrorKind::kSyntax, {lineno, i}, "empty field name");
        continue;
      }
      if (c == '"' && raw.empty()) {
        ++i;
        bool closed = false;
        while (i < line.size()) {
          char q = line[i++];
          if (q == '\\' && i < line.size()) { raw += line[i++]; continue; }
          if (q == '"') { closed = true; break; }
          raw += q;
        }
        if (!closed) fail(CorpusErrorKind::kSyntax, {lineno, t.column}, "unterminated string");
        if (i < line.size() && line[i] != ' ' && line[i] != '\t')
          fail(CorpusErrorKind::kSyntax, {lineno, i + 1}, "text after closing quote");
        break;
      }
      raw += c;
      ++i;
    }
    t.value = raw;
    out.push_back(std::move(t));
  }
  return out;
}

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Fields of one record after the record type and id.
class Fields {
 public:
  Fields(std::vector<Token> tokens, std::size_t line, std::size_t first)
      : line_(line) {
    for (std::size_t i = first; i < tokens.size(); ++i) {
      Token &t = tokens[i];
      if (t.key.empty())
        fail(CorpusErrorKind::kSyntax, {line, t.column}, "expected key=value, got '" + t.value + "'");
      if (values_.count(t.key))
        fail(CorpusErrorKind::kSyntax, {line, t.column}, "duplicate field '" + t.key + "'");
      values_[t.key] = t;
    }
  }

  bool has(const std::string &k) const { return values_.count(k) != 0; }

  const Token &need(const std::string &k, Where record) const {
    auto it = values_.find(k);
    if (it == values_.end()) fail(CorpusErrorKind::kSyntax, record, "missing field '" + k + "'");
    used_.push_back(k);
    return it->second;
  }

  const Token *maybe(const std::string &k) const {
    auto it = values_.find(k);
    if (it == values_.end()) return nullptr;
    used_.push_back(k);
    return &it->second;
  }

  void finish() const {
    for (const auto &[k, t] : values_) {
      bool used = false;
      for (const std::string &u : used_) used |= u == k;
      if (!used) fail(CorpusErrorKind::kSyntax, {line_, t.column}, "unknown field '" + k + "'");
    }
  }

  Where at(const Token &t) const { return {line_, t.column}; }

 private:
  std::size_t line_;
  std::map<std::string, Token> values_;
  mutable std::vector<std::string> used_;
};

template <typename E>
E vocab(const std::vector<std::pair<const char *, E>> &table, const Token &t, Where w,
        const char *what) {
  for (const auto &[name, v] : table)
    if (t.value == name) return v;
  fail(CorpusErrorKind::kVocabulary, w, std::string("unknown ") + what + " '" + t.value + "'");
}

template <typename E>
const char *name_of(const std::vector<std::pair<const char *, E>> &table, E v) {
  for (const auto &[name, x] : table)
    if (x == v) return name;
  return "?";
}

const std::vector<std::pair<const char *, SentenceType>> kTypes = {
    {"normal", SentenceType::kNormal},
    {"is_a", SentenceType::kIsA},
    {"there_insertion", SentenceType::kThereInsertion},
    {"cleft", SentenceType::kCleft},
    {"pseudo_cleft", SentenceType::kPseudoCleft}};
const std::vector<std::pair<const char *, Position>> kPositions = {
    {"subject", Position::kSubject}, {"np1", Position::kNp1}, {"np2", Position::kNp2}};
const std::vector<std::pair<const char *, AnaphorKind>> kAnaphor = {
    {"none", AnaphorKind::kNone}, {"defnp", AnaphorKind::kDefNp}, {"pronoun", AnaphorKind::kPronoun}};
const std::vector<std::pair<const char *, PronounClass>> kPclass = {
    {"1-plain", {PronounPerson::kFirst, PronounForm::kPlain}},
    {"1-refl", {PronounPerson::kFirst, PronounForm::kReflexive}},
    {"1-poss", {PronounPerson::kFirst, PronounForm::kPossessive}},
    {"2-plain", {PronounPerson::kSecond, PronounForm::kPlain}},
    {"2-refl", {PronounPerson::kSecond, PronounForm::kReflexive}},
    {"2-poss", {PronounPerson::kSecond, PronounForm::kPossessive}},
    {"3-plain", {PronounPerson::kThird, PronounForm::kPlain}},
    {"3-refl", {PronounPerson::kThird, PronounForm::kReflexive}},
    {"3-poss", {PronounPerson::kThird, PronounForm::kPossessive}}};
const std::vector<std::pair<const char *, Number>> kNumbers = {{"sg", Number::kSingular},
                                                               {"pl", Number::kPlural}};
const std::vector<std::pair<const char *, Person>> kPersons = {
    {"1sg", {1, Number::kSingular}}, {"1pl", {1, Number::kPlural}},
    {"2sg", {2, Number::kSingular}}, {"2pl", {2, Number::kPlural}},
    {"3sg", {3, Number::kSingular}}, {"3pl", {3, Number::kPlural}}};
const std::vector<std::pair<const char *, Life>> kLives = {
    {"anim", Life::kAnimate}, {"inan", Life::kInanimate}, {"unk", Life::kUnknown}};
const std::vector<std::pair<const char *, bool>> kBools = {{"0", false}, {"1", true}};

GenderSet parse_gender(const Token &t, Where w) {
  GenderSet g;
  for (char c : t.value) {
    std::uint8_t bit = c == 'm' ? GenderSet::kMasculine
                       : c == 'f' ? GenderSet::kFeminine
                       : c == 'n' ? GenderSet::kNeuter
                                  : 0;
    if (bit == 0 || (g.bits & bit))
      fail(CorpusErrorKind::kVocabulary, w, "unknown gender '" + t.value + "'");
    g.bits |= bit;
  }
  if (g.empty()) fail(CorpusErrorKind::kVocabulary, w, "empty gender");
  return g;
}

std::string format_gender(GenderSet g) {
  std::string s;
  if (g.bits & GenderSet::kMasculine) s += 'm';
  if (g.bits & GenderSet::kFeminine) s += 'f';
  if (g.bits & GenderSet::kNeuter) s += 'n';
  return s;
}

// Reference text awaiting resolution once the whole discourse is read.
struct PendingTarget {
  std::string text;
  Where where;
};

struct PendingNp {
  std::optional<PendingTarget> ispec, cospec, gold;
};

struct PendingSentence {
  std::optional<PendingTarget> cleft, pcleft;
};

struct PendingVp {
  std::optional<PendingTarget> theme;
};

struct DiscourseBuilder {
  Discourse d;
  Where where;
  std::vector<PendingNp> nps;
  std::vector<PendingSentence> sentences;
  std::vector<PendingVp> vps;

  NpRef np_ref(const std::string &id, Where w) const {
    auto r = d.find_np(id);
    if (!r) fail(CorpusErrorKind::kDanglingReference, w, "unknown noun phrase '" + id + "'");
    return *r;
  }

  Atom atom(const std::string &text, Where w) const {
    if (text == "SPEAKER") return Speaker{};
    if (text == "HEARER") return Hearer{};
    if (text.rfind("np:", 0) == 0) return np_ref(text.substr(3), w);
    if (text.rfind("vp:", 0) == 0) {
      auto r = d.find_vp(text.substr(3));
      if (!r) fail(CorpusErrorKind::kDanglingReference, w, "unknown verb phrase '" + text.substr(3) + "'");
      return *r;
    }
    fail(CorpusErrorKind::kSyntax, w, "malformed target '" + text + "'");
  }

  SpecTarget target(const PendingTarget &p) const {
    const std::string &t = p.text;
    if (t.rfind("set(", 0) != 0) return atom(t, p.where);
    if (t.back() != ')') fail(CorpusErrorKind::kSyntax, p.where, "unterminated set in '" + t + "'");
    std::vector<Atom> members;
    std::stringstream ss(t.substr(4, t.size() - 5));
    for (std::string item; std::getline(ss, item, ',');) {
      if (item.empty()) fail(CorpusErrorKind::kSyntax, p.where, "empty set member in '" + t + "'");
      members.push_back(atom(item, p.where));
    }
    if (members.empty()) fail(CorpusErrorKind::kSyntax, p.where, "empty set");
    return SpecTarget::make_set(std::move(members));
  }

  std::vector<NpRef> np_list(const PendingTarget &p) const {
    std::vector<NpRef> out;
    std::stringstream ss(p.text);
    for (std::string item; std::getline(ss, item, ',');) {
      if (item.empty()) fail(CorpusErrorKind::kSyntax, p.where, "empty theme entry");
      out.push_back(np_ref(item, p.where));
    }
    return out;
  }

  Discourse finish() {
    for (std::size_t i = 0; i < nps.size(); ++i) {
      NounPhrase &n = d.nps[i];
      if (nps[i].ispec) n.implicit_spec_of = np_ref(nps[i].ispec->text, nps[i].ispec->where);
      if (nps[i].cospec) n.given_cospec = target(*nps[i].cospec);
      if (nps[i].gold) n.gold = target(*nps[i].gold);
    }
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      Sentence &s = d.sentences[i];
      if (sentences[i].cleft) s.cleft_item = np_ref(sentences[i].cleft->text, sentences[i].cleft->where);
      if (sentences[i].pcleft)
        s.pseudo_cleft_item = np_ref(sentences[i].pcleft->text, sentences[i].pcleft->where);
    }
    for (std::size_t i = 0; i < vps.size(); ++i)
      if (vps[i].theme) d.vps[i].theme = np_list(*vps[i].theme);
    d.link();
    std::vector<Violation> bad = validate_discourse(d);
    if (!bad.empty())
      fail(CorpusErrorKind::kInvalid, where,
           "discourse '" + d.id + "': " + bad.front().entity + "." + bad.front().field + ": " +
               bad.front().rule);
    return std::move(d);
  }
};

std::string strip(const std::string &line) {
  std::string s = line;
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

bool blank(const std::string &s) { return s.find_first_not_of(" \t") == std::string::npos; }

}  // namespace

CorpusFile parse_corpus(const std::string &text) {
  CorpusFile out;
  std::optional<DiscourseBuilder> cur;
  bool header = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;

  auto close = [&] {
    if (cur) out.discourses.push_back(cur->finish());
    cur.reset();
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (blank(line)) continue;
    std::size_t lead = line.find_first_not_of(" \t");
    if (line[lead] == '#') {
      std::string note = line.substr(lead + 1);
      (cur ? cur->d.notes : out.notes).push_back(note);
      continue;
    }
    if (!header) {
      if (line.substr(lead) != kCorpusHeader)
        fail(CorpusErrorKind::kSyntax, {lineno, lead + 1},
             std::string("expected header '") + kCorpusHeader + "'");
      header = true;
      continue;
    }
    std::vector<Token> tokens = tokenize(line, lineno);
    const Token &kind = tokens.front();
    Where rec{lineno, kind.column};
    if (!kind.key.empty() || kind.value.size() != 1)
      fail(CorpusErrorKind::kSyntax, rec, "expected record type D, S, N or V");
    if (tokens.size() < 2 || !tokens[1].key.empty())
      fail(CorpusErrorKind::kSyntax, rec, "record needs an id");
    const std::string &id = tokens[1].value;
    Where id_at{lineno, tokens[1].column};
    Fields f(tokens, lineno, 2);
    char type = kind.value[0];

    if (type == 'D') {
      close();
      for (const Discourse &d : out.discourses)
        if (d.id == id) fail(CorpusErrorKind::kSyntax, id_at, "duplicate discourse '" + id + "'");
      cur.emplace();
      cur->where = rec;
      cur->d.id = id;
      cur->d.speaker = f.need("speaker", rec).value;
      cur->d.hearer = f.need("hearer", rec).value;
      f.finish();
      continue;
    }
    if (!cur) fail(CorpusErrorKind::kSyntax, rec, "record before any discourse");
    Discourse &d = cur->d;

    if (type == 'S') {
      if (d.find_sentence(id)) fail(CorpusErrorKind::kSyntax, id_at, "duplicate sentence '" + id + "'");
      Sentence s;
      s.id = id;
      const Token &t = f.need("type", rec);
      s.type = vocab(kTypes, t, f.at(t), "sentence type");
      const Token &c = f.need("complete", rec);
      s.complete = vocab(kBools, c, f.at(c), "flag");
      const Token &da = f.need("do_anaphora", rec);
      s.do_anaphora = vocab(kBools, da, f.at(da), "flag");
      PendingSentence p;
      if (const Token *x = f.maybe("cleft")) p.cleft = PendingTarget{x->value, f.at(*x)};
      if (const Token *x = f.maybe("pcleft")) p.pcleft = PendingTarget{x->value, f.at(*x)};
      f.finish();
      d.sentences.push_back(std::move(s));
      cur->sentences.push_back(p);
      continue;
    }

    if (type != 'N' && type != 'V') fail(CorpusErrorKind::kSyntax, rec, "unknown record type '" + kind.value + "'");
    const Token &st = f.need("sent", rec);
    if (d.sentences.empty() || d.sentences.back().id != st.value) {
      if (d.find_sentence(st.value))
        fail(CorpusErrorKind::kSyntax, f.at(st), "record must follow its sentence '" + st.value + "'");
      fail(CorpusErrorKind::kDanglingReference, f.at(st), "unknown sentence '" + st.value + "'");
    }
    Sentence &s = d.sentences.back();
    SentenceRef sref{d.sentences.size() - 1};

    if (type == 'N') {
      if (d.find_np(id)) fail(CorpusErrorKind::kSyntax, id_at, "duplicate noun phrase '" + id + "'");
      NounPhrase n;
      n.id = id;
      n.sentence = sref;
      const Token &pos = f.need("pos", rec);
      n.position = vocab(kPositions, pos, f.at(pos), "position");
      n.text = f.need("text", rec).value;
      const Token &an = f.need("anaphor", rec);
      n.anaphor = vocab(kAnaphor, an, f.at(an), "anaphor kind");
      if (const Token *x = f.maybe("pclass")) n.pronoun_class = vocab(kPclass, *x, f.at(*x), "pronoun class");
      const Token &g = f.need("gender", rec);
      n.gender = parse_gender(g, f.at(g));
      const Token &num = f.need("number", rec);
      n.number = vocab(kNumbers, num, f.at(num), "number");
      const Token &per = f.need("person", rec);
      n.person = vocab(kPersons, per, f.at(per), "person");
      const Token &life = f.need("life", rec);
      n.life = vocab(kLives, life, f.at(life), "life form");
      PendingNp p;
      if (const Token *x = f.maybe("ispec")) p.ispec = PendingTarget{x->value, f.at(*x)};
      if (const Token *x = f.maybe("cospec")) p.cospec = PendingTarget{x->value, f.at(*x)};
      if (const Token *x = f.maybe("gold")) p.gold = PendingTarget{x->value, f.at(*x)};
      f.finish();
      s.at(n.position).push_back(NpRef{d.nps.size()});
      d.nps.push_back(std::move(n));
      cur->nps.push_back(p);
    } else {
      if (d.find_vp(id)) fail(CorpusErrorKind::kSyntax, id_at, "duplicate verb phrase '" + id + "'");
      if (s.vp) fail(CorpusErrorKind::kSyntax, rec, "sentence '" + s.id + "' already has a verb phrase");
      VerbPhrase v;
      v.id = id;
      v.sentence = sref;
      v.text = f.need("text", rec).value;
      PendingVp p;
      if (const Token *x = f.maybe("theme"); x && !x->value.empty()) p.theme = PendingTarget{x->value, f.at(*x)};
      f.finish();
      s.vp = VpRef{d.vps.size()};
      d.vps.push_back(std::move(v));
      cur->vps.push_back(p);
    }
  }
  close();
  return out;
}

CorpusFile load_corpus_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

std::string format_target(const Discourse &d, const SpecTarget &t) {
  auto atom = [&](const Atom &a) -> std::string {
    if (std::holds_alternative<Speaker>(a)) return "SPEAKER";
    if (std::holds_alternative<Hearer>(a)) return "HEARER";
    if (const auto *v = std::get_if<VpRef>(&a)) return "vp:" + d.vp(*v).id;
    return "np:" + d.np(std::get<NpRef>(a)).id;
  };
  if (!t.is_set()) return atom(t.atom());
  std::string out = "set(";
  for (std::size_t i = 0; i < t.members().size(); ++i) out += (i ? "," : "") + atom(t.members()[i]);
  return out + ")";
}

std::string serialize_corpus(const CorpusFile &c) {
  std::ostringstream o;
  for (const std::string &n : c.notes) o << '#' << n << '\n';
  o << kCorpusHeader << '\n';
  for (const Discourse &d : c.discourses) {
    o << "\nD " << d.id << " speaker=" << quote(d.speaker) << " hearer=" << quote(d.hearer) << '\n';
    for (const std::string &n : d.notes) o << '#' << n << '\n';
    for (std::size_t si = 0; si < d.sentences.size(); ++si) {
      const Sentence &s = d.sentences[si];
      o << "S " << s.id << " type=" << name_of(kTypes, s.type) << " complete=" << (s.complete ? 1 : 0)
        << " do_anaphora=" << (s.do_anaphora ? 1 : 0);
      if (s.cleft_item) o << " cleft=" << d.np(*s.cleft_item).id;
      if (s.pseudo_cleft_item) o << " pcleft=" << d.np(*s.pseudo_cleft_item).id;
      o << '\n';
      for (const NounPhrase &n : d.nps) {
        if (n.sentence.index != si) continue;
        o << "  N " << n.id << " sent=" << s.id << " pos=" << name_of(kPositions, n.position)
          << " text=" << quote(n.text) << " anaphor=" << name_of(kAnaphor, n.anaphor);
        if (n.pronoun_class) o << " pclass=" << name_of(kPclass, *n.pronoun_class);
        o << " gender=" << format_gender(n.gender) << " number=" << name_of(kNumbers, n.number)
          << " person=" << name_of(kPersons, n.person) << " life=" << name_of(kLives, n.life);
        if (n.implicit_spec_of) o << " ispec=" << d.np(*n.implicit_spec_of).id;
        if (n.given_cospec) o << " cospec=" << format_target(d, *n.given_cospec);
        if (n.gold) o << " gold=" << format_target(d, *n.gold);
        o << '\n';
      }
      if (s.vp) {
        const VerbPhrase &v = d.vp(*s.vp);
        o << "  V " << v.id << " sent=" << s.id << " text=" << quote(v.text) << " theme=";
        for (std::size_t i = 0; i < v.theme.size(); ++i) o << (i ? "," : "") << d.np(v.theme[i]).id;
        o << '\n';
      }
    }
  }
  return o.str();
}

const CorpusFile &load_bundled_corpus() {
  static const CorpusFile c = parse_corpus(bundled_corpus_text());
  return c;
}

const CorpusFile &load_worked_examples() {
  static const CorpusFile c = parse_corpus(worked_examples_text());
  return c;
}

}  // namespace focus
