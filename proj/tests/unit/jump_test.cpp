#include <random>

#include <gtest/gtest.h>

#include "hidwire/error.hpp"
#include "hidwire/jump.hpp"
#include "jump_oracle.hpp"

namespace hidwire::jump {
namespace {

const JumpConfig kConfig{1.8, 1.2, 250};

std::vector<JumpEvent> run(const std::vector<testing::Sample>& trace, const JumpConfig& config = kConfig) {
  JumpDetector d(config);
  std::vector<JumpEvent> out;
  for (const auto& s : trace) {
    if (auto e = d.process_sample(s.t_ms, s.g)) out.push_back(*e);
  }
  return out;
}

std::vector<TracePoint> as_frames(const std::vector<testing::Sample>& trace) {
  std::vector<TracePoint> out;
  for (const auto& s : trace) {
    joycon::ImuFrame f;
    f.accel.z = s.g;
    f.t_ms = s.t_ms;
    out.emplace_back(s.t_ms, f);
  }
  return out;
}

TEST(MagnitudeTest, Examples) {
  EXPECT_EQ(magnitude(joycon::Vec3{0, 0, 1}), 1.0);
  EXPECT_EQ(magnitude(joycon::Vec3{0, 0, 0}), 0.0);
  EXPECT_EQ(magnitude(joycon::Vec3{1, 2, 2}), 3.0);
}

TEST(JumpConfigTest, Validation) {
  EXPECT_THROW((JumpConfig{1.0, 1.2, 0}.validate()), Error);
  EXPECT_THROW((JumpConfig{1.8, 1.8, 0}.validate()), Error);
  EXPECT_THROW((JumpConfig{1.8, 1.2, -1}.validate()), Error);
  EXPECT_NO_THROW((JumpConfig{1.8, 1.2, 0}.validate()));
}

TEST(ProcessSampleTest, ConstantRestNeverFires) {
  std::vector<testing::Sample> trace;
  for (int i = 0; i < 1000; ++i) trace.push_back({i * 5, 1.0});
  EXPECT_TRUE(run(trace).empty());
}

TEST(ProcessSampleTest, SingleSpike) {
  const auto events = run({{0, 1.0}, {5, 2.5}, {10, 1.0}});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0], (JumpEvent{5, 2.5}));
}

TEST(ProcessSampleTest, DebounceMergesCloseSpikes) {
  EXPECT_EQ(run({{0, 1.0}, {100, 2.5}, {150, 1.0}, {200, 2.5}, {250, 1.0}}).size(), 1u);
  EXPECT_EQ(run({{0, 1.0}, {100, 2.5}, {150, 1.0}, {350, 2.5}, {400, 1.0}}).size(), 2u);
}

TEST(ProcessSampleTest, HysteresisNeedsDipBelowLow) {
  // Drops to 1.5 g (between thresholds) then rises again: still one excursion.
  EXPECT_EQ(run({{0, 2.5}, {300, 1.5}, {600, 2.5}, {900, 1.0}}).size(), 1u);
}

TEST(ProcessSampleTest, PeakTrackedWithinExcursion) {
  JumpDetector d(kConfig);
  ASSERT_TRUE(d.process_sample(0, 2.0).has_value());
  EXPECT_FALSE(d.process_sample(5, 3.1).has_value());
  EXPECT_TRUE(d.triggered());
  EXPECT_EQ(d.last_jump()->peak_g, 3.1);
  d.process_sample(10, 1.0);
  EXPECT_FALSE(d.triggered());
  EXPECT_EQ(d.last_jump()->peak_g, 3.1);
}

TEST(ProcessSampleTest, NonMonotoneTimeThrows) {
  JumpDetector d(kConfig);
  d.process_sample(10, 1.0);
  try {
    d.process_sample(9, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonMonotoneTime);
  }
}

TEST(DetectJumpsTest, EmptyTrace) { EXPECT_TRUE(detect_jumps({}, kConfig).empty()); }

TEST(DetectJumpsTest, TenJumpTrace) {
  const auto frames = as_frames(testing::ten_jump_trace());
  EXPECT_EQ(detect_jumps(frames, kConfig).size(), 10u);
}

TEST(DetectJumpsTest, EqualsSequentialProcessSample) {
  std::mt19937 rng(3);
  const auto trace = testing::random_trace(rng, 1.8, 1.2);
  const auto batch = detect_jumps(as_frames(trace), kConfig);
  const auto sequential = run(trace);
  ASSERT_EQ(batch.size(), sequential.size());
  for (std::size_t i = 0; i < batch.size(); ++i) EXPECT_EQ(batch[i].t_ms, sequential[i].t_ms);
}

TEST(JumpProperty, MatchesBruteForceOracle) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 500; ++i) {
    const JumpConfig config{1.8, 1.2, std::uniform_int_distribution<std::int64_t>(0, 400)(rng)};
    const auto trace = testing::random_trace(rng, config.t_high_g, config.t_low_g);
    const auto got = run(trace, config);
    const auto want = testing::oracle_jumps(trace, config.t_high_g, config.t_low_g, config.debounce_ms);
    ASSERT_EQ(got.size(), want.size()) << "trace " << i;
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_EQ(got[k].t_ms, want[k].t_ms);
      EXPECT_GE(got[k].peak_g, config.t_high_g);
    }
  }
}

TEST(JumpProperty, MonotoneOutputRespectsDebounce) {
  std::mt19937 rng(77);
  for (int i = 0; i < 200; ++i) {
    const auto events = run(testing::random_trace(rng, 1.8, 1.2));
    for (std::size_t k = 1; k < events.size(); ++k) {
      EXPECT_GT(events[k].t_ms, events[k - 1].t_ms);
      EXPECT_GE(events[k].t_ms - events[k - 1].t_ms, kConfig.debounce_ms);
    }
  }
}

TEST(JumpProperty, ScalingUpNeverLosesJumps) {
  const auto base = run(testing::ten_jump_trace()).size();
  for (double c : {1.05, 1.2, 1.5}) EXPECT_GE(run(testing::ten_jump_trace(c)).size(), base) << c;
}

}  // namespace
}  // namespace hidwire::jump
