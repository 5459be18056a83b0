#ifndef FOCUS_CORPUS_FORMAT_HPP_
#define FOCUS_CORPUS_FORMAT_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "focus/discourse.hpp"

namespace focus {

inline constexpr const char *kCorpusHeader = "!focus-corpus v1";

struct CorpusFile {
  std::string format_version = "v1";
  std::vector<Discourse> discourses;
  // '#' lines that precede the first discourse.
  std::vector<std::string> notes;

  const Discourse *find(const std::string &id) const;
  bool operator==(const CorpusFile &) const = default;
};

enum class CorpusErrorKind { kSyntax, kDanglingReference, kVocabulary, kInvalid };

class CorpusError : public std::runtime_error {
 public:
  CorpusError(CorpusErrorKind kind, std::size_t line, std::size_t column, const std::string &msg);
  CorpusErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  CorpusErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

CorpusFile parse_corpus(const std::string &text);
CorpusFile load_corpus_file(const std::string &path);
std::string serialize_corpus(const CorpusFile &c);

// Text form of a target: np:<id>, vp:<id>, SPEAKER, HEARER or set(...).
std::string format_target(const Discourse &d, const SpecTarget &t);

// The 35 annotated segments used for evaluation.
const CorpusFile &load_bundled_corpus();
// Standalone fixtures for the worked examples.
const CorpusFile &load_worked_examples();

const std::string &bundled_corpus_text();
const std::string &worked_examples_text();

}  // namespace focus

#endif  // FOCUS_CORPUS_FORMAT_HPP_
