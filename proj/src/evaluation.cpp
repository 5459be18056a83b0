#include "focus/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#endif

namespace focus {

const PronounResolution *DiscourseRun::find(NpRef np) const {
  for (const SentenceStep &s : steps)
    for (const PronounResolution &r : s.resolutions)
      if (r.np == np) return &r;
  return nullptr;
}

DiscourseRun run_discourse(const Discourse &d, const RuleConfig &cfg) {
  DiscourseRun run;
  run.bindings.assign(d.nps.size(), std::nullopt);
  if (d.sentences.empty()) return run;
  FocusState state = init_state(d, d.sentences.front());
  for (std::size_t i = 0; i < d.sentences.size(); ++i) {
    const Sentence &s = d.sentences[i];
    SentenceResolution r = resolve_sentence(d, s, state, run.bindings, cfg);
    SentenceStep step;
    step.sentence = SentenceRef{i};
    for (auto &[np, outcome] : r.outcomes) step.resolutions.push_back({np, std::move(outcome), state});
    step.state = r.update.state;
    step.focus_trace = std::move(r.update.trace);
    state = step.state;
    run.steps.push_back(std::move(step));
  }
  return run;
}

namespace {

std::string verdict_text(const FilterVerdict &v) {
  return v.accepted ? "accept" : "reject:" + to_string(v.reason);
}

std::string np_label(const Discourse &d, NpRef r) { return d.np(r).text + "[" + d.np(r).id + "]"; }

}  // namespace

std::vector<std::string> trace_lines(const Discourse &d, const DiscourseRun &run) {
  std::vector<std::string> out;
  for (const SentenceStep &step : run.steps) {
    const std::string prefix = "sentence " + d.sentence(step.sentence).id + " | ";
    for (const PronounResolution &r : step.resolutions) {
      const ResolutionOutcome &o = r.outcome;
      for (const RuleTraceEntry &e : o.trace)
        out.push_back(prefix + np_label(d, r.np) + " | " + e.step + " | " + describe(d, e.candidate) +
                      " | " + verdict_text(e.verdict));
      std::string result;
      if (o.resolved()) result = describe(d, *o.cospec);
      for (std::size_t i = 0; i < o.ambiguous.size(); ++i)
        result += (i ? " / " : "") + describe(d, o.ambiguous[i]);
      if (result.empty()) result = "-";
      out.push_back(prefix + np_label(d, r.np) + " | " + o.rule + " | " + result + " | " +
                    to_string(o.kind));
    }
    for (const FocusTraceEvent &e : step.focus_trace)
      out.push_back(prefix + "- | " + e.step + " | " + e.detail + " | focus");
  }
  return out;
}

std::string to_string(Row r) {
  static const char *kNames[] = {"I",  "You", "He",  "She", "It(A)", "It",  "We",
                                 "They", "Me", "Him", "Her", "Us",    "Them", "Total"};
  return kNames[static_cast<std::size_t>(r)];
}

std::string to_string(Column c) {
  static const char *kNames[] = {"OCC", "RES", "MRR", "RR+", "RR-", "INF",
                                 "PA",  "MPA", "BNFC", "BN", "FS"};
  return kNames[static_cast<std::size_t>(c)];
}

std::string to_string(FailureKind k) {
  switch (k) {
    case FailureKind::kNone: return "none";
    case FailureKind::kRrMinus: return "RR-";
    case FailureKind::kInf: return "INF";
    case FailureKind::kPa: return "PA";
    case FailureKind::kBnfc: return "BNFC";
    case FailureKind::kBn: return "BN";
    case FailureKind::kFs: return "FS";
    case FailureKind::kUnclassified: return "unclassified";
  }
  return "?";
}

std::optional<Row> row_of(const Discourse &d, NpRef np) {
  const NounPhrase &n = d.np(np);
  if (!n.is_pronoun()) return std::nullopt;
  std::string w;
  for (char c : n.text) {
    if (c == '\'') break;
    if (std::isalpha(static_cast<unsigned char>(c)))
      w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (w == "i") return Row::kI;
  if (w == "you") return Row::kYou;
  if (w == "he") return Row::kHe;
  if (w == "she") return Row::kShe;
  if (w == "we") return Row::kWe;
  if (w == "they") return Row::kThey;
  if (w == "me") return Row::kMe;
  if (w == "him") return Row::kHim;
  if (w == "her") return Row::kHer;
  if (w == "us") return Row::kUs;
  if (w == "them") return Row::kThem;
  if (w == "it") {
    const Sentence &s = d.sentence(n.sentence);
    std::vector<NpRef> agents = agent_nps(d, s);
    bool agent = std::find(agents.begin(), agents.end(), np) != agents.end();
    return agent ? Row::kItAgent : Row::kIt;
  }
  return std::nullopt;
}

EvalTable &EvalTable::operator+=(const EvalTable &o) {
  for (std::size_t r = 0; r < kRows; ++r)
    for (std::size_t c = 0; c < kColumns; ++c) cells[r][c] += o.cells[r][c];
  return *this;
}

namespace {

// Replaces NP atoms by the gold of anaphoric NPs, so "he" bound to an
// earlier "he" compares equal to the first mention.
SpecTarget gold_canonical(const Discourse &d, const SpecTarget &t) {
  std::vector<Atom> atoms;
  bool set = t.is_set();
  for (const Atom &a : t.members()) {
    std::vector<Atom> expanded{a};
    for (int guard = 0; guard < 64; ++guard) {
      std::vector<Atom> next;
      bool changed = false;
      for (const Atom &x : expanded) {
        const auto *np = std::get_if<NpRef>(&x);
        const NounPhrase *n = np ? &d.np(*np) : nullptr;
        const std::optional<SpecTarget> *link =
            !n ? nullptr : n->gold ? &n->gold : n->given_cospec ? &n->given_cospec : nullptr;
        if (link && !(!(*link)->is_set() && (*link)->atom() == x)) {
          set |= (*link)->is_set();
          for (const Atom &m : (*link)->members()) next.push_back(m);
          changed = true;
        } else {
          next.push_back(x);
        }
      }
      expanded = std::move(next);
      if (!changed) break;
    }
    for (const Atom &m : expanded)
      if (std::find(atoms.begin(), atoms.end(), m) == atoms.end()) atoms.push_back(m);
  }
  if (!set && atoms.size() == 1) return SpecTarget(atoms.front());
  return SpecTarget::make_set(std::move(atoms));
}

bool gold_equal(const Discourse &d, const SpecTarget &a, const SpecTarget &b) {
  return same_entity(gold_canonical(d, a), gold_canonical(d, b));
}

}  // namespace

bool matches_gold(const Discourse &d, NpRef np, const ResolutionOutcome &o);

namespace {

bool correct_in(const Discourse &d, const DiscourseRun &run, NpRef np) {
  const PronounResolution *r = run.find(np);
  return r && matches_gold(d, np, r->outcome);
}

// Gold was held deeper in the focus structures than the candidate that won:
// the stacks, or the actor foci a non-agent chain reaches last.
bool in_stacks(const Discourse &d, const FocusState &st, const SpecTarget &gold) {
  std::vector<SpecTarget> deep = st.df_stack;
  deep.insert(deep.end(), st.af_stack.begin(), st.af_stack.end());
  for (const SpecTarget &t : potential_actors(st)) deep.push_back(t);
  if (st.af) deep.push_back(*st.af);
  return std::any_of(deep.begin(), deep.end(), [&](const SpecTarget &t) { return gold_equal(d, t, gold); });
}

bool is_recency_step(const std::string &rule) { return rule.find("recency") != std::string::npos; }

// Re-decides one pronoun from the base run's state under another rule
// configuration. Everything before it stays as the base run left it.
ResolutionOutcome redecide(const Discourse &d, const DiscourseRun &base, const SentenceStep &step,
                           const PronounResolution &r, const RuleConfig &cfg) {
  const Sentence &s = d.sentence(step.sentence);
  Bindings b = base.bindings;
  for (std::size_t i = 0; i < d.nps.size(); ++i)
    if (d.nps[i].sentence.index >= step.sentence.index) b[i].reset();
  for (NpRef x : anaphora_in_order(d, s)) {
    if (x == r.np) break;
    b[x.index] = base.bindings[x.index];
  }
  return resolve_pronoun(r.np, RuleContext{d, s, r.before, b, cfg});
}

struct DiscourseEval {
  EvalTable table;
  std::vector<PronounRecord> pronouns;
};

DiscourseEval evaluate_discourse(const Discourse &d, const EvalConfig &cfg) {
  DiscourseEval out;
  const RuleConfig &base_cfg = cfg.rules;
  const DiscourseRun base = run_discourse(d, base_cfg);

  RuleConfig bare_cfg = base_cfg;
  bare_cfg.filter.inference_oracle = InferenceOracle{};
  RuleConfig hinted_cfg = base_cfg;
  {
    std::vector<OracleRecord> recs = base_cfg.filter.inference_oracle.rejects();
    for (const OracleRecord &r : cfg.inference_hints.rejects()) recs.push_back(r);
    hinted_cfg.filter.inference_oracle = InferenceOracle(std::move(recs));
  }
  RuleConfig all_cfg = base_cfg;
  all_cfg.recency_scope = RecencyScope::kAllPositions;
  RuleConfig off_cfg = base_cfg;
  off_cfg.recency_scope = RecencyScope::kOff;
  RuleConfig nopaa_cfg = base_cfg;
  nopaa_cfg.paa_modification = false;

  const DiscourseRun bare = run_discourse(d, bare_cfg);
  const DiscourseRun hinted = run_discourse(d, hinted_cfg);
  const DiscourseRun all = run_discourse(d, all_cfg);
  const DiscourseRun nopaa = run_discourse(d, nopaa_cfg);

  for (const SentenceStep &step : base.steps) {
    for (const PronounResolution &r : step.resolutions) {
      std::optional<Row> row = row_of(d, r.np);
      if (!row) continue;
      const NounPhrase &n = d.np(r.np);
      if (!n.gold)
        throw std::runtime_error("discourse '" + d.id + "': pronoun " + n.id + " (\"" + n.text +
                                 "\") has no gold annotation");
      const ResolutionOutcome &o = r.outcome;
      PronounRecord rec;
      rec.discourse = d.id;
      rec.np = n.id;
      rec.text = n.text;
      rec.row = *row;
      rec.correct = matches_gold(d, r.np, o);
      rec.outcome = to_string(o.kind);
      if (o.cospec) rec.cospec = format_target(d, *o.cospec);
      rec.gold = format_target(d, *n.gold);

      const bool bare_correct = correct_in(d, bare, r.np);
      rec.inf = !bare_correct && correct_in(d, hinted, r.np);
      if (rec.correct) {
        rec.mrr = !correct_in(d, all, r.np);
        rec.rr_plus = is_recency_step(o.rule) && !matches_gold(d, r.np, redecide(d, base, step, r, off_cfg));
        const PronounResolution *np_run = nopaa.find(r.np);
        rec.mpa = np_run && np_run->outcome.kind == OutcomeKind::kPotentialActorAmbiguity;
      } else if (o.kind == OutcomeKind::kBackwardsNonAntecedentOrForwardCospec) {
        rec.failure = FailureKind::kBnfc;
      } else if (o.kind == OutcomeKind::kBackwardsNonAntecedent) {
        rec.failure = FailureKind::kBn;
      } else if (o.kind == OutcomeKind::kPotentialActorAmbiguity) {
        rec.failure = FailureKind::kPa;
      } else if (rec.inf) {
        rec.failure = FailureKind::kInf;
      } else if (is_recency_step(o.rule) && matches_gold(d, r.np, redecide(d, base, step, r, off_cfg))) {
        rec.failure = FailureKind::kRrMinus;
      } else if (in_stacks(d, r.before, *n.gold)) {
        rec.failure = FailureKind::kFs;
      } else {
        rec.failure = FailureKind::kUnclassified;
      }

      EvalTable &t = out.table;
      t.at(*row, Column::kOcc) += 1;
      t.at(*row, Column::kRes) += rec.correct;
      t.at(*row, Column::kMrr) += rec.mrr;
      t.at(*row, Column::kRrPlus) += rec.rr_plus;
      t.at(*row, Column::kInf) += rec.inf;
      t.at(*row, Column::kMpa) += rec.mpa;
      switch (rec.failure) {
        case FailureKind::kRrMinus: t.at(*row, Column::kRrMinus) += 1; break;
        case FailureKind::kPa: t.at(*row, Column::kPa) += 1; break;
        case FailureKind::kBnfc: t.at(*row, Column::kBnfc) += 1; break;
        case FailureKind::kBn: t.at(*row, Column::kBn) += 1; break;
        case FailureKind::kFs: t.at(*row, Column::kFs) += 1; break;
        default: break;
      }
      out.pronouns.push_back(std::move(rec));
    }
  }
  return out;
}

EvalResult merge(std::vector<DiscourseEval> &parts) {
  EvalResult r;
  for (DiscourseEval &p : parts) {
    r.table += p.table;
    for (PronounRecord &rec : p.pronouns) r.pronouns.push_back(std::move(rec));
  }
  for (std::size_t c = 0; c < kColumns; ++c) {
    int sum = 0;
    for (std::size_t row = 0; row + 1 < kRows; ++row) sum += r.table.cells[row][c];
    r.table.cells[kRows - 1][c] = sum;
  }
  return r;
}

}  // namespace

bool matches_gold(const Discourse &d, NpRef np, const ResolutionOutcome &o) {
  const NounPhrase &n = d.np(np);
  return o.resolved() && n.gold && gold_equal(d, *o.cospec, *n.gold);
}

EvalResult evaluate_serial(const CorpusFile &corpus, const EvalConfig &cfg) {
  std::vector<DiscourseEval> parts;
  for (const Discourse &d : corpus.discourses) parts.push_back(evaluate_discourse(d, cfg));
  return merge(parts);
}

EvalResult evaluate(const CorpusFile &corpus, const EvalConfig &cfg) {
  const auto n = static_cast<std::ptrdiff_t>(corpus.discourses.size());
  std::vector<DiscourseEval> parts(corpus.discourses.size());
  // Errors are kept per discourse so the reported one matches the serial run.
  std::vector<std::string> errors(parts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      parts[i] = evaluate_discourse(corpus.discourses[i], cfg);
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  }
  for (const std::string &e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  return merge(parts);
}

std::string render_table(const EvalTable &t) {
  std::ostringstream o;
  o << std::left << std::setw(7) << "";
  for (std::size_t c = 0; c < kColumns; ++c) o << std::right << std::setw(6) << to_string(Column(c));
  o << '\n';
  for (std::size_t r = 0; r < kRows; ++r) {
    o << std::left << std::setw(7) << to_string(Row(r));
    for (std::size_t c = 0; c < kColumns; ++c) {
      std::string cell = std::to_string(t.cells[r][c]);
      if (Column(c) == Column::kBnfc && t.cells[r][c] > 0) cell += "+";
      o << std::right << std::setw(6) << cell;
    }
    o << '\n';
  }
  return o.str();
}

std::string table_json(const EvalResult &r, bool with_pronouns) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rows = nlohmann::ordered_json::object();
  for (std::size_t row = 0; row < kRows; ++row) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < kColumns; ++c) cells[to_string(Column(c))] = r.table.cells[row][c];
    rows[to_string(Row(row))] = cells;
  }
  j["rows"] = rows;
  if (with_pronouns) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const PronounRecord &p : r.pronouns) {
      list.push_back({{"discourse", p.discourse},
                      {"np", p.np},
                      {"text", p.text},
                      {"row", to_string(p.row)},
                      {"correct", p.correct},
                      {"outcome", p.outcome},
                      {"cospec", p.cospec},
                      {"gold", p.gold},
                      {"failure", to_string(p.failure)},
                      {"mrr", p.mrr},
                      {"rr_plus", p.rr_plus},
                      {"inf", p.inf},
                      {"mpa", p.mpa}});
    }
    j["pronouns"] = list;
  }
  return j.dump(2);
}

}  // namespace focus
