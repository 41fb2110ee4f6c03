// Writes the bundled replay fixtures. Output is deterministic: the noise
// source is a fixed-seed mt19937 whose raw output is mapped by hand.

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "hidwire/joycon.hpp"
#include "hidwire/transport.hpp"

namespace {

using hidwire::ReplayRecord;
using hidwire::joycon::RawImuSample;

constexpr std::int64_t kReportSpacingMs = 15;

class Noise {
 public:
  explicit Noise(std::uint32_t seed) : rng_(seed) {}
  // Uniform in [-amplitude, amplitude].
  double next(double amplitude) {
    return amplitude * (2.0 * static_cast<double>(rng_()) / static_cast<double>(std::mt19937::max()) - 1.0);
  }

 private:
  std::mt19937 rng_;
};

std::int16_t to_raw(double g) {
  return static_cast<std::int16_t>(std::lround(g / hidwire::joycon::kAccelGPerLsb));
}

// Vertical acceleration of a short hop starting at `takeoff`: crouch, push
// off, flight, landing impact, settle. Returns nothing outside the hop.
bool hop_profile(std::int64_t t, std::int64_t takeoff, double& g) {
  const std::int64_t d = t - takeoff;
  if (d >= -60 && d < 0) g = 0.7;
  else if (d >= 0 && d <= 15) g = d == 10 ? 2.8 : 2.6;
  else if (d > 15 && d <= 150) g = 0.15;
  else if (d > 150 && d <= 175) g = 2.4;
  else if (d > 175 && d <= 260) g = 1.1;
  else return false;
  return true;
}

std::vector<ReplayRecord> imu_records(std::int64_t start_ms, std::int64_t end_ms,
                                      const std::vector<std::int64_t>& takeoffs, Noise& noise) {
  std::vector<ReplayRecord> out;
  std::uint8_t timer = 0;
  for (std::int64_t t = start_ms; t < end_ms; t += kReportSpacingMs) {
    std::array<RawImuSample, 3> samples{};
    for (std::size_t k = 0; k < 3; ++k) {
      const std::int64_t ft = t + static_cast<std::int64_t>(k) * hidwire::joycon::kImuFrameSpacingMs;
      double z = 1.0 + noise.next(0.04);
      for (auto takeoff : takeoffs) {
        if (hop_profile(ft, takeoff, z)) break;
      }
      samples[k].accel = {to_raw(noise.next(0.03)), to_raw(noise.next(0.03)), to_raw(z)};
      samples[k].gyro = {static_cast<std::int16_t>(std::lround(noise.next(20))),
                         static_cast<std::int16_t>(std::lround(noise.next(20))),
                         static_cast<std::int16_t>(std::lround(noise.next(20)))};
    }
    out.push_back({t, hidwire::joycon::kStandardReportId,
                   hidwire::joycon::encode_standard_report(0, samples, timer++)});
  }
  return out;
}

ReplayRecord simple(std::int64_t t, std::uint8_t code) {
  hidwire::Bytes body(hidwire::joycon::kSimpleReportLength, 0);
  body[0] = code;
  return {t, hidwire::joycon::kSimpleReportId, body};
}

void write(const std::string& path, const std::vector<ReplayRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  hidwire::write_replay(out, records);
  std::cout << "wrote " << records.size() << " records to " << path << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";

  {
    Noise noise(42);
    std::vector<std::int64_t> takeoffs;
    for (int k = 0; k < 10; ++k) takeoffs.push_back(300 + 600 * k);
    write(dir + "/ten_jumps.jsonl", imu_records(0, 6300, takeoffs, noise));
  }

  {
    std::vector<ReplayRecord> session;
    const std::uint8_t codes[] = {0x01, 0x00, 0x02, 0x00, 0x04, 0x00, 0x08, 0x00, 0x03, 0x00};
    std::int64_t t = 0;
    for (auto code : codes) {
      session.push_back(simple(t, code));
      t += 100;
    }
    Noise noise(7);
    const auto imu = imu_records(1000, 3400, {1300, 2000, 2700}, noise);
    session.insert(session.end(), imu.begin(), imu.end());
    write(dir + "/joycon_session.jsonl", session);
  }

  {
    std::vector<ReplayRecord> buttons;
    const std::uint8_t codes[] = {0x01, 0x00, 0x02, 0x00, 0x04, 0x00, 0x08, 0x00};
    std::int64_t t = 0;
    for (auto code : codes) {
      buttons.push_back(simple(t, code));
      t += 50;
    }
    write(dir + "/buttons.jsonl", buttons);
  }
  return 0;
}
