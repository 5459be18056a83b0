#ifndef FOCUS_EVALUATION_HPP_
#define FOCUS_EVALUATION_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "focus/corpus_format.hpp"
#include "focus/pronoun_rules.hpp"

namespace focus {

struct PronounResolution {
  NpRef np;
  ResolutionOutcome outcome;
  FocusState before;  // state the rules consulted
};

struct SentenceStep {
  SentenceRef sentence;
  std::vector<PronounResolution> resolutions;
  FocusState state;  // after the focusing step
  std::vector<FocusTraceEvent> focus_trace;
};

struct DiscourseRun {
  std::vector<SentenceStep> steps;
  Bindings bindings;

  const PronounResolution *find(NpRef np) const;
};

DiscourseRun run_discourse(const Discourse &d, const RuleConfig &cfg);

// One line per rule test and focus transition:
// sentence <id> | <np> | <rule-step> | <candidate> | <verdict>
std::vector<std::string> trace_lines(const Discourse &d, const DiscourseRun &run);

enum class Row { kI, kYou, kHe, kShe, kItAgent, kIt, kWe, kThey, kMe, kHim, kHer, kUs, kThem, kTotal };
enum class Column { kOcc, kRes, kMrr, kRrPlus, kRrMinus, kInf, kPa, kMpa, kBnfc, kBn, kFs };

inline constexpr std::size_t kRows = 14;
inline constexpr std::size_t kColumns = 11;

std::string to_string(Row r);
std::string to_string(Column c);

// Scored row of a pronoun, or nothing for unscored forms (his, my, themselves...).
std::optional<Row> row_of(const Discourse &d, NpRef np);

struct EvalTable {
  std::array<std::array<int, kColumns>, kRows> cells{};

  int &at(Row r, Column c) { return cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  int at(Row r, Column c) const { return cells[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  EvalTable &operator+=(const EvalTable &o);
  bool operator==(const EvalTable &) const = default;
};

enum class FailureKind { kNone, kRrMinus, kInf, kPa, kBnfc, kBn, kFs, kUnclassified };
std::string to_string(FailureKind k);

struct PronounRecord {
  std::string discourse;
  std::string np;
  std::string text;
  Row row = Row::kI;
  bool correct = false;
  std::string outcome;     // outcome kind
  std::string cospec;      // formatted target or empty
  std::string gold;
  FailureKind failure = FailureKind::kNone;
  bool mrr = false, rr_plus = false, inf = false, mpa = false;
  bool operator==(const PronounRecord &) const = default;
};

struct EvalConfig {
  RuleConfig rules;
  // Vetoes a perfect inference component would issue; used only to compute
  // the INF column, never applied to the main run.
  InferenceOracle inference_hints;
};

struct EvalResult {
  EvalTable table;
  std::vector<PronounRecord> pronouns;
  bool operator==(const EvalResult &) const = default;
};

// Throws std::runtime_error naming the NP when a scored pronoun lacks gold.
EvalResult evaluate(const CorpusFile &corpus, const EvalConfig &cfg);
EvalResult evaluate_serial(const CorpusFile &corpus, const EvalConfig &cfg);

// Resolution matches gold, comparing through gold chains.
bool matches_gold(const Discourse &d, NpRef np, const ResolutionOutcome &o);

std::string render_table(const EvalTable &t);
std::string table_json(const EvalResult &r, bool with_pronouns = true);

// Inference vetoes for the bundled corpus.
const std::string &bundled_hints_text();

}  // namespace focus

#endif  // FOCUS_EVALUATION_HPP_
