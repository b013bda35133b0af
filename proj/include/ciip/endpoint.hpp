#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ciip/frame.hpp"
#include "ciip/util.hpp"

// CIIP endpoint: a register-style host interface over a stop-and-wait
// send/receive engine.
//
// The host sees three control bits and two payload buffers, modeling the
// MMIO/PIO surface of a real part:
//   ACT   write-1-to-send strobe            -> host_write_and_act()
//   PPD   received payload pending          -> registers().ppd / host_read()
//   RETR  automatic retransmission exhausted, host attention required
//
// The wire side is purely event-driven: on_frame() for arriving frames,
// on_timer() for the passage of virtual time. Neither blocks, and all state
// transitions are deterministic in (event, timestamp) order.

namespace ciip {

struct EndpointConfig {
  Cid cid{};
  SimTime ack_timeout_ms = 200;
  unsigned max_retries = 3;
  SimTime heartbeat_interval_ms = 1000;

  void validate() const {
    if (cid.is_unassigned()) throw Error(Errc::config_error, "cid 0 is reserved as unassigned");
    if (ack_timeout_ms == 0) throw Error(Errc::config_error, "ack_timeout_ms must be > 0");
    if (heartbeat_interval_ms <= ack_timeout_ms)
      throw Error(Errc::config_error, "heartbeat_interval_ms must exceed ack_timeout_ms");
  }
};

struct EndpointRegisters {
  std::vector<std::uint8_t> tx_payload;
  std::vector<std::uint8_t> rx_payload;
  bool retr = false;
  bool ppd = false;
};

struct EndpointCounters {
  std::uint64_t data_sent = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t heartbeats_sent = 0;
  std::uint64_t acks_received = 0;
  std::uint64_t unexpected_acks = 0;
  std::uint64_t not_for_me = 0;
  std::uint64_t deliveries = 0;
  std::uint64_t duplicates_suppressed = 0;
  std::uint64_t sends_exhausted = 0;
  std::uint64_t rx_overwrites = 0;
  std::uint64_t ignored_frames = 0;
};

class Endpoint {
 public:
  enum class Phase { idle, awaiting_ack };

  Endpoint(const EndpointConfig& cfg, SimTime now) : cfg_(cfg) {
    cfg_.validate();
    next_heartbeat_at_ = now + cfg_.heartbeat_interval_ms;
  }

  // Host writes the payload buffer and strobes ACT. Emits the data frame and
  // arms the ack timer. Busy while a previous send is unacknowledged.
  Frame host_write_and_act(std::span<const std::uint8_t> payload, SimTime now) {
    if (phase_ == Phase::awaiting_ack) throw Error(Errc::busy, "previous send still awaiting ack");
    if (payload.size() > kMaxPayload)
      throw Error(Errc::payload_too_large,
                  "payload is " + std::to_string(payload.size()) + " bytes, limit is 255");
    regs_.tx_payload.assign(payload.begin(), payload.end());
    regs_.retr = false;
    Frame f;
    f.identifier = cfg_.cid;
    f.payload = regs_.tx_payload;
    in_flight_ = f;
    phase_ = Phase::awaiting_ack;
    retries_used_ = 0;
    timer_deadline_ = now + cfg_.ack_timeout_ms;
    ++counters_.data_sent;
    return f;
  }

  // Host drains the receive buffer; clears PPD.
  std::vector<std::uint8_t> host_read() {
    if (!regs_.ppd) throw Error(Errc::nothing_pending, "no payload pending");
    regs_.ppd = false;
    return regs_.rx_payload;
  }

  // Drives retransmission while awaiting an ack, heartbeat emission while
  // idle. At most one frame per call.
  std::optional<Frame> on_timer(SimTime now) {
    if (phase_ == Phase::awaiting_ack) {
      if (now < *timer_deadline_) return std::nullopt;
      if (retries_used_ < cfg_.max_retries) {
        ++retries_used_;
        timer_deadline_ = now + cfg_.ack_timeout_ms;
        Frame f = *in_flight_;
        f.flags.ret = true;
        ++counters_.retransmissions;
        return f;
      }
      // Retries exhausted: hand the problem to the host.
      regs_.retr = true;
      phase_ = Phase::idle;
      in_flight_.reset();
      timer_deadline_.reset();
      ++counters_.sends_exhausted;
      return std::nullopt;
    }
    if (heartbeats_enabled_ && now >= next_heartbeat_at_) {
      next_heartbeat_at_ += cfg_.heartbeat_interval_ms;
      ++counters_.heartbeats_sent;
      return make_heartbeat(cfg_.cid);
    }
    return std::nullopt;
  }

  // Handles a frame arriving from the adapter. Returns the ack to emit, if
  // any. Frames that are not addressed to this endpoint, or arrive in the
  // wrong direction or phase, are counted and ignored.
  std::optional<Frame> on_frame(const Frame& frame) {
    if (frame.identifier != cfg_.cid) {
      ++counters_.not_for_me;
      return std::nullopt;
    }
    if (!frame.flags.dir) {
      ++counters_.ignored_frames;
      return std::nullopt;
    }
    if (frame.flags.ack && frame.payload.empty()) {
      if (phase_ == Phase::awaiting_ack) {
        phase_ = Phase::idle;
        in_flight_.reset();
        timer_deadline_.reset();
        retries_used_ = 0;
        ++counters_.acks_received;
      } else {
        ++counters_.unexpected_acks;
      }
      return std::nullopt;
    }
    if (!frame.payload.empty()) {
      const std::uint16_t identity = canonical_checksum(frame);
      if (frame.flags.ret && last_delivered_ == identity) {
        // Retransmission of what we already handed to the host: our ack was
        // lost, so just ack again.
        ++counters_.duplicates_suppressed;
        return make_ack(cfg_.cid, false);
      }
      if (regs_.ppd) ++counters_.rx_overwrites;
      regs_.rx_payload = frame.payload;
      regs_.ppd = true;
      last_delivered_ = identity;
      ++counters_.deliveries;
      return make_ack(cfg_.cid, false);
    }
    ++counters_.ignored_frames;
    return std::nullopt;
  }

  const EndpointRegisters& registers() const { return regs_; }
  const EndpointCounters& counters() const { return counters_; }
  Phase phase() const { return phase_; }
  Cid cid() const { return cfg_.cid; }
  unsigned retries_used() const { return retries_used_; }
  std::optional<SimTime> timer_deadline() const { return timer_deadline_; }
  SimTime next_heartbeat_at() const { return next_heartbeat_at_; }

  void set_heartbeats_enabled(bool enabled) { heartbeats_enabled_ = enabled; }

 private:
  EndpointConfig cfg_;
  EndpointRegisters regs_;
  EndpointCounters counters_;
  Phase phase_ = Phase::idle;
  std::optional<Frame> in_flight_;
  unsigned retries_used_ = 0;
  std::optional<std::uint16_t> last_delivered_;
  SimTime next_heartbeat_at_ = 0;
  std::optional<SimTime> timer_deadline_;
  bool heartbeats_enabled_ = true;
};

}  // namespace ciip
