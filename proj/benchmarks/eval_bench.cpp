#include "scamscope/eval.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

void BM_Evaluate(benchmark::State& state) {
    using scamscope::verdict::ScamType;
    const ScamType types[] = {ScamType::online_shopping, ScamType::technical_support, ScamType::cryptocurrency,
                              ScamType::investment};
    const char* names[] = {"Fake online shopping website", "Technical support scam", "Cryptocurrency scam",
                           "Investment scam"};
    std::mt19937_64 rng(1);
    std::vector<scamscope::dataset::DatasetEntry> entries;
    std::vector<scamscope::react::AnalysisSession> sessions;
    for (int i = 0; i < state.range(0); ++i) {
        scamscope::dataset::DatasetEntry e;
        e.url = "https://site" + std::to_string(i) + ".example/";
        e.label = i % 2 ? scamscope::dataset::Label::scam : scamscope::dataset::Label::legitimate;
        e.scam_type = types[rng() % 4];
        e.language = std::string(scamscope::dataset::kLanguages[rng() % 3]);
        entries.push_back(e);
        scamscope::react::AnalysisSession s;
        s.url = e.url;
        scamscope::verdict::Verdict v;
        v.result = rng() % 5 != 0;
        if (v.result) v.scam_type = names[rng() % 4];
        v.reason = "The domain is new and the prices are unusually low.";
        s.verdict = v;
        sessions.push_back(s);
    }
    for (auto _ : state) benchmark::DoNotOptimize(scamscope::eval::evaluate(entries, sessions));
}
BENCHMARK(BM_Evaluate)->Arg(100)->Arg(2400);

}  // namespace
