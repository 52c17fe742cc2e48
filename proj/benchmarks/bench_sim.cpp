#include <benchmark/benchmark.h>

#include "xpsram/array.hpp"
#include "xpsram/bitcell.hpp"
#include "xpsram/engine.hpp"

using namespace xpsram;

static void BM_RingTransfer(benchmark::State& state) {
  RingState ring;
  ring.v_drive_v = 0.7;
  const Wavelength lam(1310.52);
  for (auto _ : state) {
    auto t = ring_transfer(100e-6, lam, ring);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_RingTransfer);

static void BitcellHoldNanosecond(benchmark::State& state) {
  BitcellConfig cfg;
  Bitcell cell(cfg);
  cell.init_state(1);
  for (auto _ : state) {
    HoldResult h = cell.hold(1000.0);
    benchmark::DoNotOptimize(h.stable);
  }
  state.SetItemsProcessed(state.iterations() * 1000);  // engine steps
}
BENCHMARK(BitcellHoldNanosecond);

static void SingleShotXor8(benchmark::State& state) {
  BitcellConfig cfg;
  ChannelPlan plan = plan_channels(8, cfg.ring_m3);
  XpsramArray arr(8, 1, plan, cfg);
  arr.calibrate();
  const Word stored = parse_word("10010011");
  const Word input = parse_word("11001010");
  for (auto _ : state) {
    arr.init_stored(0, stored);
    arr.settle(500.0);
    auto res = arr.single_shot_xor(input);
    benchmark::DoNotOptimize(res.decoded);
  }
}
BENCHMARK(SingleShotXor8);

BENCHMARK_MAIN();
