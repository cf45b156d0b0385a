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

#include "statica/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>
#include <string>

#include "statica/error.hpp"
#include "statica/random.hpp"

namespace statica {

Waveform::Waveform(int initial_level) : initial_level_(initial_level ? 1 : 0) {}

Waveform::Waveform(int initial_level, std::vector<Event> events)
    : initial_level_(initial_level ? 1 : 0), events_(std::move(events)) {
  int level = initial_level_;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (i > 0 && events_[i].time <= events_[i - 1].time) {
      throw InvalidArgument("waveform events must be strictly increasing");
    }
    if (events_[i].level != 1 - level) {
      throw InvalidArgument("waveform events must alternate levels");
    }
    level = events_[i].level;
  }
}

int Waveform::final_level() const {
  return events_.empty() ? initial_level_ : events_.back().level;
}

std::optional<Picoseconds> Waveform::last_event_time() const {
  if (events_.empty()) return std::nullopt;
  return events_.back().time;
}

int Waveform::level_at(Picoseconds t) const {
  auto it = std::upper_bound(
      events_.begin(), events_.end(), t,
      [](Picoseconds v, const Event& e) { return v < e.time; });
  if (it == events_.begin()) return initial_level_;
  return std::prev(it)->level;
}

void Waveform::append(Picoseconds time, int level) {
  level = level ? 1 : 0;
  if (!events_.empty() && time <= events_.back().time) {
    throw InvalidArgument("waveform event at " + std::to_string(time) +
                          " ps is not after " +
                          std::to_string(events_.back().time) + " ps");
  }
  if (level == final_level()) return;
  events_.push_back({time, level});
}

std::vector<Picoseconds> Waveform::rising_edges() const {
  std::vector<Picoseconds> out;
  for (const auto& e : events_) {
    if (e.level == 1) out.push_back(e.time);
  }
  return out;
}

namespace {

void emit_cycles(Waveform& w, Picoseconds first_rise, std::size_t cycles,
                 std::optional<Picoseconds> limit, const ClockSpec& spec,
                 Rng& jitter) {
  Picoseconds rise = first_rise;
  for (std::size_t k = 0; k < cycles || limit; ++k) {
    if (limit && rise >= *limit) break;
    double period = static_cast<double>(spec.period);
    if (spec.jitter_ppm > 0.0) {
      period *= 1.0 + spec.jitter_ppm * 1e-6 * jitter.symmetric();
    }
    auto p = static_cast<Picoseconds>(std::llround(period));
    auto high = static_cast<Picoseconds>(std::llround(period * spec.duty));
    high = std::clamp<Picoseconds>(high, 1, p - 1);
    w.append(rise, 1);
    if (limit && rise + high >= *limit) break;
    w.append(rise + high, 0);
    rise += p;
  }
}

}  // namespace

Waveform make_clock(const ClockSpec& spec) {
  if (spec.period <= 1) throw InvalidArgument("clock period must be positive");
  if (!(spec.duty > 0.0 && spec.duty < 1.0)) {
    throw InvalidArgument("clock duty must lie strictly between 0 and 1");
  }
  if (spec.jitter_ppm < 0.0 || spec.jitter_ppm >= 1e6) {
    throw InvalidArgument("clock jitter_ppm out of range");
  }
  Rng jitter(spec.jitter_seed);
  Waveform w(0);
  if (!spec.stop_at) {
    if (!spec.glitches.empty()) {
      throw InvalidArgument("glitch pulses require a stopped clock");
    }
    emit_cycles(w, spec.start, spec.cycles, std::nullopt, spec, jitter);
    return w;
  }
  const Picoseconds stop = *spec.stop_at;
  emit_cycles(w, spec.start, 0, stop, spec, jitter);
  const int held = spec.stop_level ? 1 : 0;
  if (w.final_level() != held) w.append(stop, held);

  Picoseconds free_from = w.last_event_time().value_or(stop);
  for (const auto& g : spec.glitches) {
    if (g.width <= 0) throw InvalidArgument("glitch width must be positive");
    if (g.start <= free_from) {
      throw InvalidArgument(
          "glitch pulse at " + std::to_string(g.start) +
          " ps overlaps the running clock or a previous pulse");
    }
    w.append(g.start, 1 - held);
    w.append(g.start + g.width, held);
    free_from = g.start + g.width;
  }
  if (spec.restart_at) {
    if (*spec.restart_at <= free_from) {
      throw InvalidArgument("clock restart must follow the stopped region");
    }
    if (held == 1) w.append(*spec.restart_at - spec.period / 2, 0);
    emit_cycles(w, *spec.restart_at, spec.restart_cycles, std::nullopt, spec,
                jitter);
  }
  return w;
}

std::optional<Picoseconds> clock_stop_time(const ClockSpec& spec,
                                           const Waveform& clk) {
  if (!spec.stop_at) return std::nullopt;
  std::optional<Picoseconds> last;
  for (const auto& e : clk.events()) {
    if (e.time > *spec.stop_at) break;
    last = e.time;
  }
  return last.value_or(*spec.stop_at);
}

Waveform delay(const Waveform& w, Picoseconds d) {
  if (d < 0) throw InvalidArgument("delay must be non-negative");
  std::vector<Event> ev = w.events();
  for (auto& e : ev) e.time += d;
  return Waveform(w.initial_level(), std::move(ev));
}

Waveform stop_detect(std::span<const Waveform> taps, Picoseconds comb_delay) {
  std::vector<TapView> views;
  views.reserve(taps.size());
  for (const auto& t : taps) views.push_back({&t, 0});
  return stop_detect(std::span<const TapView>(views), comb_delay);
}

Waveform stop_detect(std::span<const TapView> taps, Picoseconds comb_delay) {
  if (taps.size() < 2) throw InvalidArgument("stop_detect needs two taps");
  if (comb_delay < 0) throw InvalidArgument("comb_delay must be non-negative");
  const auto n = static_cast<std::int64_t>(taps.size());
  std::int64_t high = 0;
  for (const auto& t : taps) high += t.wave->initial_level();
  auto equal = [&] { return high == 0 || high == n ? 1 : 0; };
  Waveform out(equal());

  // (time, tap, index of the tap's next event)
  using Item = std::tuple<Picoseconds, std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (!taps[i].wave->empty()) {
      heap.emplace(taps[i].wave->events()[0].time + taps[i].delay, i, 0);
    }
  }
  while (!heap.empty()) {
    const Picoseconds t = std::get<0>(heap.top());
    while (!heap.empty() && std::get<0>(heap.top()) == t) {
      auto [time, tap, idx] = heap.top();
      heap.pop();
      const auto& ev = taps[tap].wave->events();
      high += ev[idx].level ? 1 : -1;
      if (idx + 1 < ev.size()) {
        heap.emplace(ev[idx + 1].time + taps[tap].delay, tap, idx + 1);
      }
    }
    out.append(t + comb_delay, equal());
  }
  return out;
}

Waveform mux(const Waveform& when_low, const Waveform& when_high,
             const Waveform& select) {
  const Waveform* inputs[3] = {&when_low, &when_high, &select};
  int level[3];
  std::size_t pos[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) level[i] = inputs[i]->initial_level();
  auto value = [&] { return level[2] ? level[1] : level[0]; };
  Waveform out(value());
  while (true) {
    Picoseconds t = 0;
    bool any = false;
    for (int i = 0; i < 3; ++i) {
      const auto& ev = inputs[i]->events();
      if (pos[i] < ev.size() && (!any || ev[pos[i]].time < t)) {
        t = ev[pos[i]].time;
        any = true;
      }
    }
    if (!any) break;
    for (int i = 0; i < 3; ++i) {
      const auto& ev = inputs[i]->events();
      if (pos[i] < ev.size() && ev[pos[i]].time == t) {
        level[i] = ev[pos[i]].level;
        ++pos[i];
      }
    }
    out.append(t, value());
  }
  return out;
}

}  // namespace statica
