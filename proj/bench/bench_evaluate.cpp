// Parallel against serial evaluation over the bundled corpus, replicated
// `range(0)` times so the per-discourse work dominates thread start-up.
#include <benchmark/benchmark.h>

#include <sstream>

#include "focus/corpus_format.hpp"
#include "focus/evaluation.hpp"

namespace {

focus::CorpusFile replicated(int copies) {
  focus::CorpusFile out;
  for (int k = 0; k < copies; ++k)
    for (focus::Discourse d : focus::load_bundled_corpus().discourses) {
      if (k) d.id += "#" + std::to_string(k);
      out.discourses.push_back(std::move(d));
    }
  return out;
}

focus::EvalConfig config() {
  focus::EvalConfig cfg;
  std::istringstream in(focus::bundled_hints_text());
  cfg.inference_hints = focus::InferenceOracle::parse(in);
  return cfg;
}

template <focus::EvalResult (*Eval)(const focus::CorpusFile &, const focus::EvalConfig &)>
void run(benchmark::State &state) {
  const focus::CorpusFile corpus = replicated(static_cast<int>(state.range(0)));
  const focus::EvalConfig cfg = config();
  for (auto _ : state) benchmark::DoNotOptimize(Eval(corpus, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus.discourses.size()));
}

}  // namespace

BENCHMARK(run<focus::evaluate_serial>)->Name("evaluate_serial")->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(run<focus::evaluate>)->Name("evaluate")->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
