#include "scamscope/react.hpp"
#include "scamscope/verdict.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_ParseStep(benchmark::State& state) {
    const std::string reply =
        "Thought: The WHOIS record should show when the domain was registered.\n"
        "Action: Retrieve WHOIS\nAction Input: luxe-bag-outlet.shop\n";
    for (auto _ : state) benchmark::DoNotOptimize(scamscope::react::parse_step(reply));
}
BENCHMARK(BM_ParseStep);

void BM_ParseVerdict(benchmark::State& state) {
    const std::string text =
        "The site is a scam.\n```json\n{\"result\": True, \"scam_type\": \"Fake online shopping website\", "
        "\"reason\": \"Registered last month, prices far below market, no company address.\"}\n```";
    for (auto _ : state) benchmark::DoNotOptimize(scamscope::verdict::parse_verdict(text));
}
BENCHMARK(BM_ParseVerdict);

void BM_CategorizeReason(benchmark::State& state) {
    const std::string reason =
        "The domain was registered recently through a privacy service, the prices are abnormally low, "
        "payment is only by bank transfer and there is no privacy policy or company address.";
    for (auto _ : state) benchmark::DoNotOptimize(scamscope::verdict::categorize_reason(reason));
}
BENCHMARK(BM_CategorizeReason);

}  // namespace
