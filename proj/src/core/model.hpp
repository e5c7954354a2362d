#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace smtpflow {

/// IPv4 address in host byte order.
struct Ipv4 {
  uint32_t value = 0;
  friend constexpr auto operator<=>(const Ipv4&, const Ipv4&) = default;
};

std::optional<Ipv4> try_parse_ipv4(std::string_view text);
std::string to_string(Ipv4 ip);

/// The three-way partition of SMTP flows: connection attempts the server
/// never answered with an SMTP session (Failed), sessions closed during
/// envelope pre-filtering (Rejected), and sessions whose mail content was
/// taken (Accepted).
enum class FlowClass : uint8_t { Failed = 0, Rejected = 1, Accepted = 2 };

inline constexpr size_t kNumClasses = 3;
constexpr size_t class_index(FlowClass c) { return static_cast<size_t>(c); }
const char* to_string(FlowClass c);
std::optional<FlowClass> flow_class_from(std::string_view text);

enum class RejectReason : uint8_t {
  BlacklistDnsbl = 0,
  UserUnknown = 1,
  InvalidDomain = 2,
  HeloNoFqdn = 3,
  RelayDenied = 4,
  Other = 5,
};

inline constexpr size_t kNumReasons = 6;
constexpr size_t reason_index(RejectReason r) { return static_cast<size_t>(r); }
const char* to_string(RejectReason r);
std::optional<RejectReason> reject_reason_from(std::string_view text);

enum class LabelSource : uint8_t { ServerLog = 0, ListMembership = 1, Synthetic = 2 };
const char* to_string(LabelSource s);
std::optional<LabelSource> label_source_from(std::string_view text);

/// One unidirectional flow as summarized by a router: 5-tuple, L3 byte and
/// packet totals, millisecond timestamps, OR of observed TCP flags.
struct FlowRecord {
  Ipv4 src_ip;
  Ipv4 dst_ip;
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  uint8_t protocol = 0;
  int64_t start_ms = 0;
  int64_t end_ms = 0;
  uint64_t packets = 0;
  uint64_t bytes = 0;
  uint8_t tcp_flags = 0;

  friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

/// Checks the record invariants (end_ms >= start_ms, packets >= 1,
/// bytes >= packets) and returns the record unchanged. Throws
/// Error{invalid_flow} naming every violated field.
const FlowRecord& validate_flow(const FlowRecord& flow);
bool flow_is_valid(const FlowRecord& flow);

/// bytes / packets as a real value; callers compare it un-rounded.
double bytes_per_packet(const FlowRecord& flow);

/// Per-feature class boundaries. Bytes: < byte_lo failed, [byte_lo, byte_hi)
/// rejected, >= byte_hi accepted. Packets: < pkt_lo failed, [pkt_lo, pkt_hi]
/// rejected, > pkt_hi accepted. Bytes/packet >= bpp_bound looks accepted,
/// below it rejected (the bound does not separate failed from rejected).
struct Thresholds {
  uint64_t byte_lo = 300;
  uint64_t byte_hi = 1500;
  uint64_t pkt_lo = 5;
  uint64_t pkt_hi = 10;
  double bpp_bound = 100.0;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

void validate(const Thresholds& t);
Thresholds load_thresholds(std::istream& in);
void save_thresholds(const Thresholds& t, std::ostream& out);

/// A flow joined with ground truth. `reason` may be present only for
/// Rejected labels.
struct LabeledFlow {
  FlowRecord flow;
  FlowClass label = FlowClass::Failed;
  std::optional<RejectReason> reason;
  LabelSource source = LabelSource::ServerLog;

  friend bool operator==(const LabeledFlow&, const LabeledFlow&) = default;
};

void validate(const LabeledFlow& lf);

}  // namespace smtpflow
