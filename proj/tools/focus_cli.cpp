// Command-line front end: resolve discourses with traces, evaluate a corpus.
#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "focus/corpus_format.hpp"
#include "focus/evaluation.hpp"

namespace {

using namespace focus;

CorpusFile load(const std::string &path) {
  if (path == "@appendix-a") return load_bundled_corpus();
  if (path == "@examples") return load_worked_examples();
  return load_corpus_file(path);
}

RecencyScope parse_recency(const std::string &s) {
  if (s == "agent-only") return RecencyScope::kAgentOnly;
  if (s == "all") return RecencyScope::kAllPositions;
  return RecencyScope::kOff;
}

int resolve_cmd(const std::string &file, const std::string &only, bool trace, const RuleConfig &cfg) {
  CorpusFile corpus = load(file);
  bool found = only.empty();
  for (const Discourse &d : corpus.discourses) {
    if (!only.empty() && d.id != only) continue;
    found = true;
    DiscourseRun run = run_discourse(d, cfg);
    std::cout << "discourse " << d.id << '\n';
    if (trace) {
      for (const std::string &line : trace_lines(d, run)) std::cout << line << '\n';
      continue;
    }
    for (const SentenceStep &step : run.steps) {
      for (const PronounResolution &r : step.resolutions) {
        const NounPhrase &n = d.np(r.np);
        std::cout << "  " << d.sentence(step.sentence).id << ' ' << n.id << " \"" << n.text
                  << "\" -> " << to_string(r.outcome.kind);
        if (r.outcome.cospec) std::cout << ' ' << describe(d, *r.outcome.cospec);
        for (const SpecTarget &t : r.outcome.ambiguous) std::cout << ' ' << describe(d, t);
        std::cout << '\n';
      }
    }
  }
  if (!found) {
    std::cerr << "no discourse '" << only << "' in " << file << '\n';
    return 1;
  }
  return 0;
}

int eval_cmd(const std::string &file, const EvalConfig &cfg, bool json, bool details) {
  CorpusFile corpus = load(file);
  auto start = std::chrono::steady_clock::now();
  EvalResult r = evaluate(corpus, cfg);
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (json) {
    std::cout << table_json(r, details) << '\n';
    return 0;
  }
  std::cout << render_table(r.table);
  const int occ = r.table.at(Row::kTotal, Column::kOcc), res = r.table.at(Row::kTotal, Column::kRes);
  std::cout << "\nresolved " << res << " of " << occ << " pronouns";
  if (occ) std::cout << " (" << (100 * res + occ / 2) / occ << "%)";
  std::cout << " in " << ms << " ms\n";
  if (details) {
    for (const PronounRecord &p : r.pronouns) {
      if (p.correct && !p.mrr && !p.rr_plus && !p.mpa && !p.inf) continue;
      std::cout << "  " << p.discourse << ' ' << p.np << " \"" << p.text << "\" " << to_string(p.row)
                << " outcome=" << p.outcome << " cospec=" << (p.cospec.empty() ? "-" : p.cospec)
                << " gold=" << p.gold << (p.correct ? " ok" : " fail=" + to_string(p.failure))
                << (p.mrr ? " MRR" : "") << (p.rr_plus ? " RR+" : "") << (p.mpa ? " MPA" : "")
                << (p.inf ? " INF" : "") << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Focus-based pronoun resolution"};
  app.require_subcommand(1);

  std::string recency = "agent-only", paa = "on";
  auto add_rule_options = [&](CLI::App *cmd) {
    cmd->add_option("--recency", recency, "Scope of the recency rule")
        ->check(CLI::IsMember({"agent-only", "all", "off"}));
    cmd->add_option("--paa-mod", paa, "Filter actor and potential actor on ambiguity")
        ->check(CLI::IsMember({"on", "off"}));
  };

  std::string file, discourse;
  bool trace = false;
  CLI::App *resolve = app.add_subcommand("resolve", "Resolve the pronouns of a corpus file");
  resolve->add_option("file", file, "Corpus file, or @appendix-a / @examples")->required();
  resolve->add_option("--discourse", discourse, "Only this discourse");
  resolve->add_flag("--trace", trace, "Print every rule test and focus transition");
  add_rule_options(resolve);

  std::string oracle, hints;
  bool json = false, details = false;
  CLI::App *eval = app.add_subcommand("eval", "Score a corpus against its gold annotations");
  eval->add_option("file", file, "Corpus file, or @appendix-a / @examples")->required();
  eval->add_option("--oracle", oracle, "Inference veto file applied to resolution");
  eval->add_option("--hints", hints, "Inference veto file used for the INF column (default: bundled)");
  eval->add_flag("--json", json, "Emit the table as JSON");
  eval->add_flag("--details", details, "List failures and modification effects per pronoun");
  add_rule_options(eval);

  CLI11_PARSE(app, argc, argv);

  try {
    RuleConfig rules;
    rules.recency_scope = parse_recency(recency);
    rules.paa_modification = paa == "on";
    if (*resolve) return resolve_cmd(file, discourse, trace, rules);

    EvalConfig cfg;
    if (!oracle.empty()) rules.filter.inference_oracle = InferenceOracle::load(oracle);
    cfg.rules = rules;
    if (!hints.empty()) {
      cfg.inference_hints = InferenceOracle::load(hints);
    } else {
      std::istringstream in(bundled_hints_text());
      cfg.inference_hints = InferenceOracle::parse(in);
    }
    return eval_cmd(file, cfg, json, details);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
