#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ciip {

// Virtual time in milliseconds. Every state machine in this library is driven
// by explicit timestamps; nothing below tools/ reads the wall clock.
using SimTime = std::uint64_t;

enum class Errc {
  payload_too_large,
  busy,
  nothing_pending,
  duplicate_cid,
  duplicate_address,
  unknown_cid,
  unknown_device,
  not_endpoint_frame,
  time_regression,
  config_error,
  bind_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::payload_too_large: return "PayloadTooLarge";
    case Errc::busy: return "Busy";
    case Errc::nothing_pending: return "NothingPending";
    case Errc::duplicate_cid: return "DuplicateCid";
    case Errc::duplicate_address: return "DuplicateAddress";
    case Errc::unknown_cid: return "UnknownCid";
    case Errc::unknown_device: return "UnknownDevice";
    case Errc::not_endpoint_frame: return "NotEndpointFrame";
    case Errc::time_regression: return "TimeRegression";
    case Errc::config_error: return "ConfigError";
    case Errc::bind_error: return "BindError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::optional<unsigned> hex_digit(char c) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
  return std::nullopt;
}

// Whitespace-tolerant hex reader: "00 0A ff" and "000aff" are the same bytes.
inline std::optional<std::vector<std::uint8_t>> parse_hex(std::string_view text) {
  std::vector<std::uint8_t> out;
  std::optional<unsigned> pending;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    auto d = hex_digit(c);
    if (!d) return std::nullopt;
    if (pending) {
      out.push_back(static_cast<std::uint8_t>((*pending << 4) | *d));
      pending.reset();
    } else {
      pending = *d;
    }
  }
  if (pending) return std::nullopt;  // odd digit count
  return out;
}

inline std::string to_hex(const std::uint8_t* data, std::size_t len) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0x0F]);
  }
  return out;
}

inline std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  return to_hex(bytes.data(), bytes.size());
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::optional<std::uint64_t> parse_u64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    if (v > (UINT64_MAX - static_cast<std::uint64_t>(c - '0')) / 10) return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

inline std::optional<double> parse_f64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string buf(s);
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size()) return std::nullopt;
  return v;
}

}  // namespace ciip
