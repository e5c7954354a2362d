#include "core/netflow.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "core/error.hpp"

namespace smtpflow::netflow {

namespace {

void put_u16(std::vector<uint8_t>& buf, uint16_t v) {
  buf.push_back(static_cast<uint8_t>(v >> 8));
  buf.push_back(static_cast<uint8_t>(v & 0xff));
}

void put_u32(std::vector<uint8_t>& buf, uint32_t v) {
  buf.push_back(static_cast<uint8_t>(v >> 24));
  buf.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  buf.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  buf.push_back(static_cast<uint8_t>(v & 0xff));
}

uint16_t get_u16(std::span<const uint8_t> buf, size_t off) {
  return static_cast<uint16_t>((buf[off] << 8) | buf[off + 1]);
}

uint32_t get_u32(std::span<const uint8_t> buf, size_t off) {
  return (static_cast<uint32_t>(buf[off]) << 24) | (static_cast<uint32_t>(buf[off + 1]) << 16) |
         (static_cast<uint32_t>(buf[off + 2]) << 8) | static_cast<uint32_t>(buf[off + 3]);
}

uint32_t checked_u32(uint64_t v, const char* field) {
  if (v > std::numeric_limits<uint32_t>::max())
    raise(Errc::field_overflow, std::string(field) + " does not fit 32 bits");
  return static_cast<uint32_t>(v);
}

}  // namespace

int64_t export_time_ms(const V5Header& h) {
  return static_cast<int64_t>(h.unix_secs) * 1000 +
         static_cast<int64_t>(h.unix_nsecs) / 1'000'000;
}

ParsedV5 parse_v5(std::span<const uint8_t> datagram) {
  if (datagram.size() < kV5HeaderSize)
    raise(Errc::truncated_packet, "datagram shorter than the 24-octet header");

  ParsedV5 out;
  V5Header& h = out.header;
  h.version = get_u16(datagram, 0);
  if (h.version != 5) raise(Errc::bad_version, "version " + std::to_string(h.version));
  h.count = get_u16(datagram, 2);
  if (h.count < 1 || h.count > kV5MaxRecords)
    raise(Errc::count_mismatch, "record count " + std::to_string(h.count) + " outside 1..30");
  h.sys_uptime_ms = get_u32(datagram, 4);
  h.unix_secs = get_u32(datagram, 8);
  h.unix_nsecs = get_u32(datagram, 12);
  h.flow_sequence = get_u32(datagram, 16);
  h.engine_type = datagram[20];
  h.engine_id = datagram[21];
  h.sampling_interval = get_u16(datagram, 22);

  size_t expected = kV5HeaderSize + static_cast<size_t>(h.count) * kV5RecordSize;
  if (datagram.size() < expected)
    raise(Errc::truncated_packet, "datagram carries fewer octets than 24 + 48*count");
  if (datagram.size() > expected)
    raise(Errc::count_mismatch, "datagram carries more octets than 24 + 48*count");

  int64_t boot_ms = export_time_ms(h) - static_cast<int64_t>(h.sys_uptime_ms);
  out.flows.reserve(h.count);
  for (size_t i = 0; i < h.count; ++i) {
    size_t off = kV5HeaderSize + i * kV5RecordSize;
    FlowRecord f;
    f.src_ip = Ipv4{get_u32(datagram, off)};
    f.dst_ip = Ipv4{get_u32(datagram, off + 4)};
    // nexthop(4) input(2) output(2) skipped
    f.packets = get_u32(datagram, off + 16);
    f.bytes = get_u32(datagram, off + 20);
    f.start_ms = boot_ms + static_cast<int64_t>(get_u32(datagram, off + 24));
    f.end_ms = boot_ms + static_cast<int64_t>(get_u32(datagram, off + 28));
    f.src_port = get_u16(datagram, off + 32);
    f.dst_port = get_u16(datagram, off + 34);
    // pad1(1)
    f.tcp_flags = datagram[off + 37];
    f.protocol = datagram[off + 38];
    // tos(1) src_as(2) dst_as(2) src_mask(1) dst_mask(1) pad2(2) skipped
    out.flows.push_back(f);
  }
  return out;
}

std::vector<uint8_t> serialize_v5(const V5Header& header, std::span<const FlowRecord> flows) {
  if (flows.size() > kV5MaxRecords)
    raise(Errc::too_many_records, std::to_string(flows.size()) + " records, layout allows 30");
  if (flows.empty()) raise(Errc::field_overflow, "count: a v5 packet carries 1..30 records");

  int64_t boot_ms = export_time_ms(header) - static_cast<int64_t>(header.sys_uptime_ms);

  std::vector<uint8_t> buf;
  buf.reserve(kV5HeaderSize + flows.size() * kV5RecordSize);
  put_u16(buf, 5);
  put_u16(buf, static_cast<uint16_t>(flows.size()));
  put_u32(buf, header.sys_uptime_ms);
  put_u32(buf, header.unix_secs);
  put_u32(buf, header.unix_nsecs);
  put_u32(buf, header.flow_sequence);
  buf.push_back(header.engine_type);
  buf.push_back(header.engine_id);
  put_u16(buf, header.sampling_interval);

  for (const FlowRecord& f : flows) {
    int64_t first = f.start_ms - boot_ms;
    int64_t last = f.end_ms - boot_ms;
    if (first < 0 || first > std::numeric_limits<uint32_t>::max())
      raise(Errc::field_overflow, "start_ms outside the uptime window of this header");
    if (last < 0 || last > std::numeric_limits<uint32_t>::max())
      raise(Errc::field_overflow, "end_ms outside the uptime window of this header");
    put_u32(buf, f.src_ip.value);
    put_u32(buf, f.dst_ip.value);
    put_u32(buf, 0);  // nexthop
    put_u16(buf, 0);  // input
    put_u16(buf, 0);  // output
    put_u32(buf, checked_u32(f.packets, "packets"));
    put_u32(buf, checked_u32(f.bytes, "bytes"));
    put_u32(buf, static_cast<uint32_t>(first));
    put_u32(buf, static_cast<uint32_t>(last));
    put_u16(buf, f.src_port);
    put_u16(buf, f.dst_port);
    buf.push_back(0);  // pad1
    buf.push_back(f.tcp_flags);
    buf.push_back(f.protocol);
    buf.push_back(0);  // tos
    put_u16(buf, 0);   // src_as
    put_u16(buf, 0);   // dst_as
    buf.push_back(0);  // src_mask
    buf.push_back(0);  // dst_mask
    put_u16(buf, 0);   // pad2
  }
  return buf;
}

// Splits a CSV line into views; no quoting, the formats never emit commas in
// fields. Returns the real field count even when it exceeds `out`.
size_t split_csv_fields(std::string_view line, std::span<std::string_view> out) {
  size_t n = 0;
  size_t begin = 0;
  while (true) {
    size_t comma = line.find(',', begin);
    std::string_view field = comma == std::string_view::npos
                                 ? line.substr(begin)
                                 : line.substr(begin, comma - begin);
    if (n < out.size()) out[n] = field;
    ++n;
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return n;
}

namespace {

template <typename T>
bool parse_num(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool strip_line_ending(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return !line.empty();
}

}  // namespace

bool parse_flow_fields(std::span<const std::string_view> f, FlowRecord& flow,
                       std::string& why) {
  auto ip = try_parse_ipv4(f[0]);
  if (!ip) { why = "bad src_ip"; return false; }
  flow.src_ip = *ip;
  ip = try_parse_ipv4(f[1]);
  if (!ip) { why = "bad dst_ip"; return false; }
  flow.dst_ip = *ip;
  uint32_t port = 0;
  if (!parse_num(f[2], port) || port > 65535) { why = "bad src_port"; return false; }
  flow.src_port = static_cast<uint16_t>(port);
  if (!parse_num(f[3], port) || port > 65535) { why = "bad dst_port"; return false; }
  flow.dst_port = static_cast<uint16_t>(port);
  uint32_t proto = 0;
  if (!parse_num(f[4], proto) || proto > 255) { why = "bad protocol"; return false; }
  flow.protocol = static_cast<uint8_t>(proto);
  if (!parse_num(f[5], flow.start_ms)) { why = "bad start_ms"; return false; }
  if (!parse_num(f[6], flow.end_ms)) { why = "bad end_ms"; return false; }
  if (!parse_num(f[7], flow.packets)) { why = "bad packets"; return false; }
  if (!parse_num(f[8], flow.bytes)) { why = "bad bytes"; return false; }
  uint32_t flags = 0;
  if (!parse_num(f[9], flags) || flags > 255) { why = "bad tcp_flags"; return false; }
  flow.tcp_flags = static_cast<uint8_t>(flags);
  if (!flow_is_valid(flow)) { why = "invalid flow (invariant violated)"; return false; }
  return true;
}

FlowCsvReader::FlowCsvReader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header)) raise(Errc::missing_header, "empty input, expected flow CSV");
  strip_line_ending(header);
  if (header != kFlowCsvHeader)
    raise(Errc::missing_header, "first line is not the canonical flow CSV header");
}

std::optional<FlowRecord> FlowCsvReader::next() {
  while (std::getline(in_, buf_)) {
    ++line_;
    strip_line_ending(buf_);
    if (buf_.empty()) continue;
    std::string_view fields[10];
    if (split_csv_fields(buf_, fields) != 10) {
      issues_.push_back({line_, "expected 10 fields"});
      continue;
    }
    FlowRecord flow;
    std::string why;
    if (!parse_flow_fields(fields, flow, why)) {
      issues_.push_back({line_, why});
      continue;
    }
    return flow;
  }
  return std::nullopt;
}

void append_csv_flow_fields(std::string& out, const FlowRecord& flow) {
  char num[24];
  auto append_num = [&out, &num](auto v) {
    auto [end, ec] = std::to_chars(num, num + sizeof(num), v);
    out.append(num, end);
  };
  out += to_string(flow.src_ip);
  out.push_back(',');
  out += to_string(flow.dst_ip);
  out.push_back(',');
  append_num(flow.src_port);
  out.push_back(',');
  append_num(flow.dst_port);
  out.push_back(',');
  append_num(flow.protocol);
  out.push_back(',');
  append_num(flow.start_ms);
  out.push_back(',');
  append_num(flow.end_ms);
  out.push_back(',');
  append_num(flow.packets);
  out.push_back(',');
  append_num(flow.bytes);
  out.push_back(',');
  append_num(flow.tcp_flags);
}

FlowCsvWriter::FlowCsvWriter(std::ostream& out) : out_(out) {
  out_ << kFlowCsvHeader << '\n';
}

void FlowCsvWriter::write(const FlowRecord& flow) {
  std::string line;
  line.reserve(96);
  append_csv_flow_fields(line, flow);
  line.push_back('\n');
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
}

std::vector<FlowRecord> read_csv(std::istream& in, std::vector<LineIssue>* issues) {
  FlowCsvReader reader(in);
  std::vector<FlowRecord> flows;
  while (auto f = reader.next()) flows.push_back(*f);
  if (issues) *issues = reader.issues();
  return flows;
}

void write_csv(std::span<const FlowRecord> flows, std::ostream& out) {
  FlowCsvWriter writer(out);
  for (const FlowRecord& f : flows) writer.write(f);
}

bool is_smtp(const FlowRecord& flow, const std::set<Ipv4>* servers) {
  if (flow.protocol != 6 || flow.dst_port != 25) return false;
  return servers == nullptr || servers->contains(flow.dst_ip);
}

std::vector<FlowRecord> filter_smtp(std::span<const FlowRecord> flows,
                                    const std::set<Ipv4>* servers) {
  std::vector<FlowRecord> out;
  for (const FlowRecord& f : flows)
    if (is_smtp(f, servers)) out.push_back(f);
  return out;
}

std::vector<std::pair<Ipv4, uint64_t>> top_servers(std::span<const FlowRecord> flows, size_t n) {
  std::unordered_map<uint32_t, uint64_t> counts;
  for (const FlowRecord& f : flows) ++counts[f.dst_ip.value];
  std::vector<std::pair<Ipv4, uint64_t>> ranked;
  ranked.reserve(counts.size());
  for (const auto& [ip, c] : counts) ranked.emplace_back(Ipv4{ip}, c);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > n) ranked.resize(n);
  return ranked;
}

}  // namespace smtpflow::netflow
