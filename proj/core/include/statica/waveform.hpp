// Copyright 2026 The Statica Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace statica {

using Picoseconds = std::int64_t;

struct Event {
  Picoseconds time;
  int level;

  bool operator==(const Event&) const = default;
};

// Piecewise-constant binary signal: strictly increasing event times with
// alternating levels.
class Waveform {
 public:
  explicit Waveform(int initial_level = 0);
  // Throws InvalidArgument unless the events are strictly increasing and
  // alternate starting from the opposite of `initial_level`.
  Waveform(int initial_level, std::vector<Event> events);

  int initial_level() const { return initial_level_; }
  const std::vector<Event>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  int final_level() const;
  std::optional<Picoseconds> last_event_time() const;

  // Level once all events at or before t have been applied.
  int level_at(Picoseconds t) const;
  // Appends a transition; ignored when `level` equals the current final
  // level. Throws InvalidArgument if `time` is not after the last event.
  void append(Picoseconds time, int level);
  std::vector<Picoseconds> rising_edges() const;

  bool operator==(const Waveform&) const = default;

 private:
  int initial_level_;
  std::vector<Event> events_;
};

struct Pulse {
  Picoseconds start;
  Picoseconds width;
};

struct ClockSpec {
  Picoseconds period = 125'000;
  double duty = 0.5;
  Picoseconds start = 0;      // first rising edge
  std::size_t cycles = 0;     // rising edges to generate when not stopped
  std::optional<Picoseconds> stop_at;
  int stop_level = 0;
  double jitter_ppm = 0.0;    // per-cycle uniform period error
  std::uint64_t jitter_seed = 1;
  std::vector<Pulse> glitches;  // inverted pulses inside the stopped region
  std::optional<Picoseconds> restart_at;  // first rising edge after a stop
  std::size_t restart_cycles = 0;
};

// Throws InvalidArgument for a non-positive period, duty outside (0, 1),
// glitches without a stop, glitches before the stop or overlapping pulses.
Waveform make_clock(const ClockSpec& spec);

// The time of the clock's final transition before it is held, which is the
// ground-truth stop time; nullopt when the spec does not stop the clock.
std::optional<Picoseconds> clock_stop_time(const ClockSpec& spec,
                                           const Waveform& clk);

Waveform delay(const Waveform& w, Picoseconds d);

// A tap is a waveform read through an extra transport delay.
struct TapView {
  const Waveform* wave;
  Picoseconds delay;
};

// 1 at t + comb_delay iff every tap has the same level at t. Requires at
// least two taps.
Waveform stop_detect(std::span<const Waveform> taps, Picoseconds comb_delay);
Waveform stop_detect(std::span<const TapView> taps, Picoseconds comb_delay);

// Output follows `when_low` while `select` is 0 and `when_high` while it is
// 1. The switch is ideal and instantaneous.
Waveform mux(const Waveform& when_low, const Waveform& when_high,
             const Waveform& select);

}  // namespace statica
