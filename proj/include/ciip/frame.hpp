#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ciip/util.hpp"

// CIIP frame codec.
//
// Wire layout, 8-byte header followed by the payload:
//
//   byte 0..3   identifier (CID), big-endian
//   byte 4      flags: bit 7 = dir, bit 6 = ret, bit 5 = ack,
//               bits 4..0 reserved and must be zero
//   byte 5      size: payload length in bytes (0..255)
//   byte 6..7   checksum, big-endian: 16-bit modular sum of every byte of the
//               frame with the checksum field itself zeroed
//   byte 8..    payload, exactly `size` bytes
//
// dir == 0 marks a frame sent by an endpoint; dir == 1 marks a frame sent by
// the adapter. In both directions the identifier names the endpoint side of
// the link, so on one endpoint<->adapter link the identifier is constant.
//
// The authoritative byte-level description lives in docs/wire-format.md.

namespace ciip {

struct Cid {
  std::uint32_t value = 0;

  // 0 means "unassigned" and is rejected wherever a device identity is
  // configured; the codec itself carries it fine.
  constexpr bool is_unassigned() const { return value == 0; }

  auto operator<=>(const Cid&) const = default;
};

inline std::string format_cid(Cid cid) {
  static const char* digits = "0123456789abcdef";
  std::string out(8, '0');
  std::uint32_t v = cid.value;
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

// Accepts "0x0A", "0A", "0000000a"; up to 8 hex digits.
inline std::optional<Cid> parse_cid(std::string_view text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
  if (text.empty() || text.size() > 8) return std::nullopt;
  std::uint32_t v = 0;
  for (char c : text) {
    auto d = hex_digit(c);
    if (!d) return std::nullopt;
    v = (v << 4) | *d;
  }
  return Cid{v};
}

struct FrameFlags {
  bool dir = false;  // set on frames emitted by the adapter
  bool ret = false;  // retransmission of the previous frame
  bool ack = false;  // acknowledgment

  auto operator<=>(const FrameFlags&) const = default;
};

inline constexpr std::size_t kHeaderSize = 8;
inline constexpr std::size_t kMaxPayload = 255;
inline constexpr std::uint8_t kDirBit = 0x80;
inline constexpr std::uint8_t kRetBit = 0x40;
inline constexpr std::uint8_t kAckBit = 0x20;
inline constexpr std::uint8_t kReservedMask = 0x1F;

struct Frame {
  Cid identifier{};
  FrameFlags flags{};
  std::vector<std::uint8_t> payload;

  bool operator==(const Frame&) const = default;
};

inline std::uint8_t flags_byte(FrameFlags f) {
  return static_cast<std::uint8_t>((f.dir ? kDirBit : 0) | (f.ret ? kRetBit : 0) | (f.ack ? kAckBit : 0));
}

// 16-bit modular byte sum. Callers zero the checksum field before summing.
inline std::uint16_t compute_checksum(std::span<const std::uint8_t> buffer) {
  std::uint32_t sum = 0;
  for (std::uint8_t b : buffer) sum = (sum + b) & 0xFFFF;
  return static_cast<std::uint16_t>(sum);
}

inline std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxPayload)
    throw Error(Errc::payload_too_large,
                "payload is " + std::to_string(frame.payload.size()) + " bytes, limit is 255");
  std::vector<std::uint8_t> out(kHeaderSize + frame.payload.size(), 0);
  out[0] = static_cast<std::uint8_t>(frame.identifier.value >> 24);
  out[1] = static_cast<std::uint8_t>(frame.identifier.value >> 16);
  out[2] = static_cast<std::uint8_t>(frame.identifier.value >> 8);
  out[3] = static_cast<std::uint8_t>(frame.identifier.value);
  out[4] = flags_byte(frame.flags);
  out[5] = static_cast<std::uint8_t>(frame.payload.size());
  std::copy(frame.payload.begin(), frame.payload.end(), out.begin() + kHeaderSize);
  const std::uint16_t sum = compute_checksum(out);
  out[6] = static_cast<std::uint8_t>(sum >> 8);
  out[7] = static_cast<std::uint8_t>(sum);
  return out;
}

enum class DecodeError {
  truncated,
  checksum_mismatch,
  reserved_bits_set,
};

inline const char* decode_error_name(DecodeError e) {
  switch (e) {
    case DecodeError::truncated: return "Truncated";
    case DecodeError::checksum_mismatch: return "ChecksumMismatch";
    case DecodeError::reserved_bits_set: return "ReservedBitsSet";
  }
  return "Unknown";
}

struct DecodeFailure {
  DecodeError error = DecodeError::truncated;
  std::string field;    // the offending field
  std::string message;
  std::uint16_t stored = 0;    // checksum_mismatch only
  std::uint16_t computed = 0;  // checksum_mismatch only
};

struct DecodeResult {
  std::optional<Frame> frame;
  DecodeFailure failure;

  bool ok() const { return frame.has_value(); }
  explicit operator bool() const { return ok(); }
};

inline DecodeResult decode_frame(std::span<const std::uint8_t> buffer) {
  auto fail = [](DecodeError e, std::string field, std::string msg, std::uint16_t stored = 0,
                 std::uint16_t computed = 0) {
    DecodeResult r;
    r.failure = DecodeFailure{e, std::move(field), std::move(msg), stored, computed};
    return r;
  };
  if (buffer.size() < kHeaderSize)
    return fail(DecodeError::truncated, "header",
                "buffer is " + std::to_string(buffer.size()) + " bytes, header needs 8");
  const std::uint8_t size = buffer[5];
  if (buffer.size() != kHeaderSize + size)
    return fail(DecodeError::truncated, "size",
                "size field says " + std::to_string(8 + size) + " bytes, buffer has " +
                    std::to_string(buffer.size()));
  const std::uint16_t stored = static_cast<std::uint16_t>((buffer[6] << 8) | buffer[7]);
  // Equivalent to zeroing bytes 6..7 and summing.
  const std::uint16_t computed =
      static_cast<std::uint16_t>((compute_checksum(buffer) + 0x20000 - buffer[6] - buffer[7]) & 0xFFFF);
  if (stored != computed)
    return fail(DecodeError::checksum_mismatch, "checksum",
                "stored 0x" + to_hex({static_cast<std::uint8_t>(stored >> 8), static_cast<std::uint8_t>(stored)}) +
                    " != computed 0x" +
                    to_hex({static_cast<std::uint8_t>(computed >> 8), static_cast<std::uint8_t>(computed)}),
                stored, computed);
  if (buffer[4] & kReservedMask)
    return fail(DecodeError::reserved_bits_set, "flags",
                "reserved flag bits 4..0 must be zero, got 0x" + to_hex(&buffer[4], 1));
  DecodeResult r;
  Frame f;
  f.identifier.value = (static_cast<std::uint32_t>(buffer[0]) << 24) |
                       (static_cast<std::uint32_t>(buffer[1]) << 16) |
                       (static_cast<std::uint32_t>(buffer[2]) << 8) | buffer[3];
  f.flags.dir = (buffer[4] & kDirBit) != 0;
  f.flags.ret = (buffer[4] & kRetBit) != 0;
  f.flags.ack = (buffer[4] & kAckBit) != 0;
  f.payload.assign(buffer.begin() + kHeaderSize, buffer.end());
  r.frame = std::move(f);
  return r;
}

// Retransmission-invariant frame identity: the checksum of the frame as it
// would look with ret cleared and the checksum field zeroed. A frame and its
// retransmissions share this value; it backs duplicate suppression on both
// sides of a link.
inline std::uint16_t canonical_checksum(const Frame& frame) {
  std::uint32_t sum = 0;
  sum += (frame.identifier.value >> 24) & 0xFF;
  sum += (frame.identifier.value >> 16) & 0xFF;
  sum += (frame.identifier.value >> 8) & 0xFF;
  sum += frame.identifier.value & 0xFF;
  FrameFlags canonical = frame.flags;
  canonical.ret = false;
  sum += flags_byte(canonical);
  sum += static_cast<std::uint8_t>(frame.payload.size());
  for (std::uint8_t b : frame.payload) sum += b;
  return static_cast<std::uint16_t>(sum & 0xFFFF);
}

inline Frame make_ack(Cid cid, bool from_adapter) {
  Frame f;
  f.identifier = cid;
  f.flags.dir = from_adapter;
  f.flags.ack = true;
  return f;
}

inline Frame make_heartbeat(Cid cid) {
  Frame f;
  f.identifier = cid;
  return f;
}

}  // namespace ciip
