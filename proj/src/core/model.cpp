#include "core/model.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "core/error.hpp"
#include "util/kv.hpp"

namespace smtpflow {

std::optional<Ipv4> try_parse_ipv4(std::string_view text) {
  uint32_t value = 0;
  size_t pos = 0;
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (pos >= text.size() || text[pos] != '.') return std::nullopt;
      ++pos;
    }
    if (pos >= text.size()) return std::nullopt;
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() || v > 255) return std::nullopt;
    size_t len = static_cast<size_t>(ptr - (text.data() + pos));
    if (len == 0 || len > 3) return std::nullopt;
    pos += len;
    value = (value << 8) | v;
  }
  if (pos != text.size()) return std::nullopt;
  return Ipv4{value};
}

std::string to_string(Ipv4 ip) {
  std::string out;
  out.reserve(15);
  for (int shift = 24; shift >= 0; shift -= 8) {
    if (shift != 24) out.push_back('.');
    out += std::to_string((ip.value >> shift) & 0xffu);
  }
  return out;
}

const char* to_string(FlowClass c) {
  switch (c) {
    case FlowClass::Failed: return "failed";
    case FlowClass::Rejected: return "rejected";
    case FlowClass::Accepted: return "accepted";
  }
  return "?";
}

std::optional<FlowClass> flow_class_from(std::string_view text) {
  if (text == "failed") return FlowClass::Failed;
  if (text == "rejected") return FlowClass::Rejected;
  if (text == "accepted") return FlowClass::Accepted;
  return std::nullopt;
}

const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::BlacklistDnsbl: return "dnsbl";
    case RejectReason::UserUnknown: return "user_unknown";
    case RejectReason::InvalidDomain: return "invalid_domain";
    case RejectReason::HeloNoFqdn: return "helo_no_fqdn";
    case RejectReason::RelayDenied: return "relay_denied";
    case RejectReason::Other: return "other";
  }
  return "?";
}

std::optional<RejectReason> reject_reason_from(std::string_view text) {
  if (text == "dnsbl") return RejectReason::BlacklistDnsbl;
  if (text == "user_unknown") return RejectReason::UserUnknown;
  if (text == "invalid_domain") return RejectReason::InvalidDomain;
  if (text == "helo_no_fqdn") return RejectReason::HeloNoFqdn;
  if (text == "relay_denied") return RejectReason::RelayDenied;
  if (text == "other") return RejectReason::Other;
  return std::nullopt;
}

const char* to_string(LabelSource s) {
  switch (s) {
    case LabelSource::ServerLog: return "server_log";
    case LabelSource::ListMembership: return "list_membership";
    case LabelSource::Synthetic: return "synthetic";
  }
  return "?";
}

std::optional<LabelSource> label_source_from(std::string_view text) {
  if (text == "server_log") return LabelSource::ServerLog;
  if (text == "list_membership") return LabelSource::ListMembership;
  if (text == "synthetic") return LabelSource::Synthetic;
  return std::nullopt;
}

const FlowRecord& validate_flow(const FlowRecord& flow) {
  std::string problems;
  auto add = [&problems](const char* field, const char* why) {
    if (!problems.empty()) problems += "; ";
    problems += field;
    problems += ": ";
    problems += why;
  };
  if (flow.end_ms < flow.start_ms) add("end_ms", "before start");
  if (flow.packets < 1) add("packets", "must be >= 1");
  if (flow.bytes < 1) add("bytes", "must be >= 1");
  if (flow.bytes < flow.packets) add("bytes", "bytes < packets");
  if (!problems.empty()) raise(Errc::invalid_flow, problems);
  return flow;
}

bool flow_is_valid(const FlowRecord& flow) {
  return flow.end_ms >= flow.start_ms && flow.packets >= 1 && flow.bytes >= 1 &&
         flow.bytes >= flow.packets;
}

double bytes_per_packet(const FlowRecord& flow) {
  return static_cast<double>(flow.bytes) / static_cast<double>(flow.packets);
}

void validate(const Thresholds& t) {
  if (t.byte_lo == 0 || t.pkt_lo == 0 || t.bpp_bound <= 0.0)
    raise(Errc::invalid_config, "thresholds must be strictly positive");
  if (t.byte_lo >= t.byte_hi) raise(Errc::invalid_config, "byte_lo must be < byte_hi");
  if (t.pkt_lo >= t.pkt_hi) raise(Errc::invalid_config, "pkt_lo must be < pkt_hi");
}

Thresholds load_thresholds(std::istream& in) {
  Thresholds t;
  for (const auto& [key, value] : util::read_kv(in)) {
    if (key == "byte_lo") t.byte_lo = util::parse_u64(key, value);
    else if (key == "byte_hi") t.byte_hi = util::parse_u64(key, value);
    else if (key == "pkt_lo") t.pkt_lo = util::parse_u64(key, value);
    else if (key == "pkt_hi") t.pkt_hi = util::parse_u64(key, value);
    else if (key == "bpp_bound") t.bpp_bound = util::parse_f64(key, value);
    else raise(Errc::invalid_config, "unknown thresholds key '" + key + "'");
  }
  validate(t);
  return t;
}

void save_thresholds(const Thresholds& t, std::ostream& out) {
  out << "byte_lo=" << t.byte_lo << '\n'
      << "byte_hi=" << t.byte_hi << '\n'
      << "pkt_lo=" << t.pkt_lo << '\n'
      << "pkt_hi=" << t.pkt_hi << '\n'
      << "bpp_bound=" << t.bpp_bound << '\n';
}

void validate(const LabeledFlow& lf) {
  if (lf.reason.has_value() && lf.label != FlowClass::Rejected)
    raise(Errc::invalid_config, "reason present on non-rejected label");
}

}  // namespace smtpflow
