#include "core/error.hpp"

namespace smtpflow {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_flow: return "invalid_flow";
    case Errc::truncated_packet: return "truncated_packet";
    case Errc::bad_version: return "bad_version";
    case Errc::count_mismatch: return "count_mismatch";
    case Errc::too_many_records: return "too_many_records";
    case Errc::field_overflow: return "field_overflow";
    case Errc::malformed_row: return "malformed_row";
    case Errc::missing_header: return "missing_header";
    case Errc::malformed_log_line: return "malformed_log_line";
    case Errc::empty_log: return "empty_log";
    case Errc::malformed_entry: return "malformed_entry";
    case Errc::empty_sample: return "empty_sample";
    case Errc::empty_input: return "empty_input";
    case Errc::insufficient_class_samples: return "insufficient_class_samples";
    case Errc::server_mismatch: return "server_mismatch";
    case Errc::no_judged_flows: return "no_judged_flows";
    case Errc::no_rejected_flows: return "no_rejected_flows";
    case Errc::flow_before_origin: return "flow_before_origin";
    case Errc::series_too_short: return "series_too_short";
    case Errc::incompatible_buckets: return "incompatible_buckets";
    case Errc::invalid_config: return "invalid_config";
    case Errc::precondition: return "precondition";
    case Errc::io_error: return "io_error";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace smtpflow
