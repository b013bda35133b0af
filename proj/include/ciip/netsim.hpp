#pragma once

#include <cstdint>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "ciip/rng.hpp"
#include "ciip/util.hpp"

// Deterministic simulated link with seeded loss, delay and reordering.
//
// Draw order per submission (fixed; see docs/determinism.md):
//   1. loss draw       — uniform01(); if < loss_rate the frame is dropped and
//                        no further draws are made for this submission
//   2. jitter draw     — uniform01(); added delay = floor(u * (jitter_ms + 1))
//   3. reorder draw    — uniform01(); if < reorder_rate one extra jitter draw
//                        is made and added on top, which can push the frame
//                        behind later traffic
//
// Events fire in (deliver_at, submission sequence) order, so the simulation
// is a function of (LinkConfig, submission trace) alone.

namespace ciip {

struct LinkConfig {
  double loss_rate = 0.0;
  double reorder_rate = 0.0;
  SimTime delay_ms = 0;
  SimTime jitter_ms = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (loss_rate < 0.0 || loss_rate > 1.0)
      throw Error(Errc::config_error, "loss_rate must be in [0,1]");
    if (reorder_rate < 0.0 || reorder_rate > 1.0)
      throw Error(Errc::config_error, "reorder_rate must be in [0,1]");
  }
};

struct LinkCounters {
  std::uint64_t submitted = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;

  std::uint64_t queued() const { return submitted - delivered - dropped; }
};

template <typename Destination>
class SimLink {
 public:
  struct Verdict {
    bool delivered = false;
    SimTime deliver_at = 0;  // meaningful only when delivered
  };

  struct Delivery {
    SimTime at = 0;
    std::vector<std::uint8_t> bytes;
    Destination destination;
  };

  explicit SimLink(const LinkConfig& cfg) : cfg_(cfg), rng_(cfg.seed) { cfg_.validate(); }

  Verdict submit(std::vector<std::uint8_t> bytes, Destination destination, SimTime now) {
    ++counters_.submitted;
    if (rng_.uniform01() < cfg_.loss_rate) {
      ++counters_.dropped;
      return Verdict{false, 0};
    }
    SimTime at = now + cfg_.delay_ms + jitter_draw();
    if (rng_.uniform01() < cfg_.reorder_rate) at += jitter_draw();
    queue_.push(Event{at, next_seq_++, std::move(bytes), std::move(destination)});
    return Verdict{true, at};
  }

  // Returns all events due at or before `to`, in firing order, and moves the
  // clock to `to`.
  std::vector<Delivery> advance(SimTime to) {
    if (to < now_)
      throw Error(Errc::time_regression,
                  "advance to " + std::to_string(to) + " behind clock " + std::to_string(now_));
    now_ = to;
    std::vector<Delivery> out;
    while (!queue_.empty() && queue_.top().at <= to) {
      Event e = queue_.top();
      queue_.pop();
      ++counters_.delivered;
      out.push_back(Delivery{e.at, std::move(e.bytes), std::move(e.destination)});
    }
    return out;
  }

  SimTime now() const { return now_; }
  const LinkCounters& counters() const { return counters_; }

 private:
  struct Event {
    SimTime at;
    std::uint64_t seq;
    std::vector<std::uint8_t> bytes;
    Destination destination;
  };
  struct After {
    bool operator()(const Event& a, const Event& b) const {
      return std::tie(a.at, a.seq) > std::tie(b.at, b.seq);
    }
  };

  SimTime jitter_draw() {
    return static_cast<SimTime>(rng_.uniform01() * static_cast<double>(cfg_.jitter_ms + 1));
  }

  LinkConfig cfg_;
  SplitMix64 rng_;
  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, After> queue_;
  LinkCounters counters_;
};

}  // namespace ciip
