#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/model.hpp"

namespace smtpflow::netflow {

inline constexpr size_t kV5HeaderSize = 24;
inline constexpr size_t kV5RecordSize = 48;
inline constexpr size_t kV5MaxRecords = 30;

struct V5Header {
  uint16_t version = 5;
  uint16_t count = 0;
  uint32_t sys_uptime_ms = 0;
  uint32_t unix_secs = 0;
  uint32_t unix_nsecs = 0;
  uint32_t flow_sequence = 0;
  uint8_t engine_type = 0;
  uint8_t engine_id = 0;
  uint16_t sampling_interval = 0;

  friend bool operator==(const V5Header&, const V5Header&) = default;
};

/// Millisecond wall-clock time of the export packet, derived from
/// unix_secs/unix_nsecs (nanoseconds truncated to whole milliseconds).
int64_t export_time_ms(const V5Header& h);

struct ParsedV5 {
  V5Header header;
  std::vector<FlowRecord> flows;
};

/// Decodes one NetFlow v5 datagram (24-octet header + count x 48-octet
/// records, all integers big-endian). Flow timestamps are rebased from
/// router uptime to wall-clock milliseconds:
///   start_ms = export_time_ms - sys_uptime_ms + first
/// Throws truncated_packet / bad_version / count_mismatch; never reads
/// beyond the buffer.
ParsedV5 parse_v5(std::span<const uint8_t> datagram);

/// Inverse of parse_v5; parse_v5(serialize_v5(h, fs)) reproduces every
/// carried field exactly. The record count is taken from `flows`
/// (header.count is ignored). Throws too_many_records for > 30 flows,
/// field_overflow for an empty batch or values that do not fit the wire
/// layout (including timestamps outside the uptime window).
std::vector<uint8_t> serialize_v5(const V5Header& header, std::span<const FlowRecord> flows);

struct LineIssue {
  size_t line = 0;
  std::string reason;
};

inline constexpr std::string_view kFlowCsvHeader =
    "src_ip,dst_ip,src_port,dst_port,protocol,start_ms,end_ms,packets,bytes,tcp_flags";

/// Streaming reader for the canonical 10-column flow CSV. Malformed rows
/// (including rows failing validate_flow) are recorded in issues() with
/// their line number and skipped.
class FlowCsvReader {
 public:
  explicit FlowCsvReader(std::istream& in);  // throws missing_header
  std::optional<FlowRecord> next();
  const std::vector<LineIssue>& issues() const { return issues_; }

 private:
  std::istream& in_;
  size_t line_ = 1;
  std::string buf_;
  std::vector<LineIssue> issues_;
};

class FlowCsvWriter {
 public:
  explicit FlowCsvWriter(std::ostream& out);
  void write(const FlowRecord& flow);

 private:
  std::ostream& out_;
};

std::vector<FlowRecord> read_csv(std::istream& in, std::vector<LineIssue>* issues = nullptr);
void write_csv(std::span<const FlowRecord> flows, std::ostream& out);

/// Keeps TCP flows to port 25, optionally restricted to a known server set;
/// input order is preserved.
bool is_smtp(const FlowRecord& flow, const std::set<Ipv4>* servers = nullptr);
std::vector<FlowRecord> filter_smtp(std::span<const FlowRecord> flows,
                                    const std::set<Ipv4>* servers = nullptr);

/// The n busiest destination IPs by inbound flow count, descending; ties
/// broken by ascending IP.
std::vector<std::pair<Ipv4, uint64_t>> top_servers(std::span<const FlowRecord> flows, size_t n);

// Shared CSV helpers (used by the labeled-flow readers/writers too).
void append_csv_flow_fields(std::string& out, const FlowRecord& flow);
bool parse_flow_fields(std::span<const std::string_view> fields, FlowRecord& flow,
                       std::string& why);
size_t split_csv_fields(std::string_view line, std::span<std::string_view> out);

}  // namespace smtpflow::netflow
