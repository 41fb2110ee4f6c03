#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hidwire/codec.hpp"
#include "hidwire/descriptor.hpp"
#include "hidwire/joycon.hpp"
#include "hidwire/jump.hpp"

namespace {

using namespace hidwire;

// Gamepad: 8 buttons, hat, pad, X/Y axes, LED outputs.
const std::vector<std::uint8_t> kGamepad{
    0x05, 0x01, 0x09, 0x05, 0xa1, 0x01, 0x85, 0x01, 0x05, 0x09, 0x19, 0x01, 0x29, 0x08, 0x15, 0x00,
    0x25, 0x01, 0x75, 0x01, 0x95, 0x08, 0x81, 0x02, 0x05, 0x01, 0x09, 0x39, 0x15, 0x00, 0x25, 0x07,
    0x75, 0x04, 0x95, 0x01, 0x81, 0x42, 0x75, 0x04, 0x95, 0x01, 0x81, 0x03, 0x09, 0x01, 0xa1, 0x00,
    0x09, 0x30, 0x09, 0x31, 0x15, 0x81, 0x25, 0x7f, 0x75, 0x08, 0x95, 0x02, 0x81, 0x02, 0xc0, 0x85,
    0x02, 0x05, 0x08, 0x19, 0x01, 0x29, 0x04, 0x15, 0x00, 0x25, 0x01, 0x75, 0x01, 0x95, 0x04, 0x91,
    0x02, 0x95, 0x04, 0x91, 0x03, 0xc0};

void BM_ParseGamepadDescriptor(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_descriptor(kGamepad));
}
BENCHMARK(BM_ParseGamepadDescriptor);

void BM_ParseJoyConDescriptor(benchmark::State& state) {
  const auto bytes = joycon::simulated_descriptor_bytes();
  for (auto _ : state) benchmark::DoNotOptimize(parse_descriptor(bytes));
}
BENCHMARK(BM_ParseJoyConDescriptor);

void BM_DecodeGamepadReport(benchmark::State& state) {
  const auto desc = parse_descriptor(kGamepad);
  const Bytes report{0x5a, 0x03, 0x10, 0xf0};
  for (auto _ : state) benchmark::DoNotOptimize(decode_input_report(desc, 1, report));
}
BENCHMARK(BM_DecodeGamepadReport);

void BM_DecodeStandardReport(benchmark::State& state) {
  std::array<joycon::RawImuSample, 3> samples{};
  samples[1].accel = {100, -200, 4096};
  const auto body = joycon::encode_standard_report(0x123456, samples);
  for (auto _ : state) benchmark::DoNotOptimize(joycon::decode_standard_report(joycon::kStandardReportId, body));
}
BENCHMARK(BM_DecodeStandardReport);

void BM_JumpDetector(benchmark::State& state) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> g(0.0, 3.0);
  std::vector<double> samples(static_cast<std::size_t>(state.range(0)));
  for (auto& s : samples) s = g(rng);
  for (auto _ : state) {
    jump::JumpDetector detector(jump::JumpConfig{1.8, 1.2, 250});
    std::size_t n = 0;
    std::int64_t t = 0;
    for (double s : samples) n += detector.process_sample(t += 5, s).has_value();
    benchmark::DoNotOptimize(n);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JumpDetector)->Arg(1000)->Arg(100000);

}  // namespace
BENCHMARK_MAIN();
