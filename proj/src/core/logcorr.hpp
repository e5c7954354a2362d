#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/netflow.hpp"

namespace smtpflow::logcorr {

/// One pre-filtering decision from a mail-server log.
struct LogEntry {
  int64_t timestamp_ms = 0;
  Ipv4 client_ip;
  Ipv4 server_ip;
  FlowClass outcome = FlowClass::Accepted;  // Accepted or Rejected, never Failed
  std::optional<RejectReason> reason;       // present iff outcome == Rejected
  uint32_t messages = 1;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct ParsedLog {
  std::vector<LogEntry> entries;
  std::vector<netflow::LineIssue> issues;
};

/// Canonical log grammar, one event per line:
///   <epoch_ms> <client_ip> <server_ip> ACCEPT|REJECT[:<reason-code>] [msgs=<n>]
/// Reason codes: DNSBL USER_UNKNOWN INVALID_DOMAIN HELO_NO_FQDN RELAY_DENIED
/// OTHER; anything else maps to Other, a bare REJECT too. Malformed lines are
/// collected with their line numbers and skipped. Throws empty_log when not a
/// single well-formed entry is found.
ParsedLog parse_log(std::istream& in);

std::string format_log_line(const LogEntry& entry);

struct MatchConfig {
  int64_t window_ms = 60'000;       // half-width of the join window
  bool require_server_match = true; // join on (client, server) vs client only
};

/// Joins flows with log entries: a candidate entry shares the flow's client
/// (and server) and lies within window_ms of the flow start; globally
/// nearest pairs win and every entry is consumed at most once. Matched flows
/// take the entry's outcome and reason; unmatched flows are labeled Failed.
/// Output preserves flow order and contains every input flow exactly once.
std::vector<LabeledFlow> match(std::span<const FlowRecord> flows,
                               std::span<const LogEntry> log, const MatchConfig& cfg = {});

/// |rejected| / (|rejected| + |accepted|); failed connections never reached
/// the server's judgement and are excluded. Throws empty_input when no flow
/// was judged.
double reject_rate(std::span<const LabeledFlow> labels);

}  // namespace smtpflow::logcorr
