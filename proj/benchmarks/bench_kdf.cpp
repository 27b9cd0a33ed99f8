#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "layerkey/argon2.hpp"
#include "layerkey/kdf.hpp"

namespace {

using namespace layerkey;

LayerSequence layers_of(std::size_t n) {
  std::vector<NormalizedText> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(normalize("layer-" + std::to_string(i + 1)));
  return LayerSequence(std::move(names));
}

// Full chain under a named profile; args are {profile, layer count}.
void BM_DeriveChain(benchmark::State& state) {
  const auto profile = state.range(0) == 0 ? Profile::kStandard : Profile::kParanoid;
  const auto master = MasterSecret::from_raw("benchmark master secret");
  const auto layers = layers_of(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto key = derive_chain(master, layers, KdfParams::of(profile));
    benchmark::DoNotOptimize(key.bytes().data());
  }
  state.SetLabel(profile == Profile::kStandard ? "standard" : "paranoid");
}
BENCHMARK(BM_DeriveChain)
    ->Args({0, 1})
    ->Args({0, 3})
    ->Args({1, 1})
    ->Args({1, 3})
    ->Unit(benchmark::kMillisecond)
    ->Iterations(3)
    ->UseRealTime();

// Single Argon2id call across memory sizes (KiB), one pass, six lanes.
void BM_Argon2id(benchmark::State& state) {
  const std::vector<std::uint8_t> pwd(32, 0x11);
  const std::vector<std::uint8_t> salt(64, 0x22);
  std::vector<std::uint8_t> out(32);
  const argon2::Params params{static_cast<std::uint32_t>(state.range(0)), 1, 6};
  for (auto _ : state) {
    argon2::hash_id(out, pwd, salt, params);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * state.range(0) * 1024);
}
BENCHMARK(BM_Argon2id)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
