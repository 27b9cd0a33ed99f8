#include <benchmark/benchmark.h>

#include "layerkey/audit.hpp"
#include "layerkey/keystream.hpp"
#include "layerkey/sampler.hpp"

namespace {

using namespace layerkey;

void BM_Keystream(benchmark::State& state) {
  audit::IndexedKeySource keys;
  const auto key = keys.next();
  KeystreamReader reader(key.bytes());
  for (auto _ : state) benchmark::DoNotOptimize(reader.next_u16());
  state.SetBytesProcessed(state.iterations() * 2);
}
BENCHMARK(BM_Keystream);

void BM_Mnemonic(benchmark::State& state) {
  audit::IndexedKeySource keys;
  const auto key = keys.next();
  const auto words = static_cast<std::size_t>(state.range(0));
  (void)Wordlist::load_and_verify();
  for (auto _ : state) {
    auto phrase = generate_mnemonic(key, words);
    benchmark::DoNotOptimize(phrase.text().data());
  }
}
BENCHMARK(BM_Mnemonic)->Arg(8)->Arg(24);

void BM_Password(benchmark::State& state) {
  audit::IndexedKeySource keys;
  const auto key = keys.next();
  const auto length = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto pw = generate_password(key, length);
    benchmark::DoNotOptimize(pw.text().data());
  }
}
BENCHMARK(BM_Password)->Arg(20)->Arg(48);

void BM_WordlistVerify(benchmark::State& state) {
  const auto asset = embedded_wordlist_asset();
  for (auto _ : state) {
    auto list = Wordlist::verify(asset);
    benchmark::DoNotOptimize(list.size());
  }
}
BENCHMARK(BM_WordlistVerify)->Unit(benchmark::kMicrosecond);

void BM_ChiSquared(benchmark::State& state) {
  for (auto _ : state) {
    auto r = audit::chi_squared_uniformity(10000, 8);
    benchmark::DoNotOptimize(r.chi2_statistic);
  }
}
BENCHMARK(BM_ChiSquared)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
