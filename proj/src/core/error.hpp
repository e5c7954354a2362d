#pragma once

#include <stdexcept>
#include <string>

namespace smtpflow {

enum class Errc {
  invalid_flow,
  truncated_packet,
  bad_version,
  count_mismatch,
  too_many_records,
  field_overflow,
  malformed_row,
  missing_header,
  malformed_log_line,
  empty_log,
  malformed_entry,
  empty_sample,
  empty_input,
  insufficient_class_samples,
  server_mismatch,
  no_judged_flows,
  no_rejected_flows,
  flow_before_origin,
  series_too_short,
  incompatible_buckets,
  invalid_config,
  precondition,
  io_error,
  internal,
};

const char* errc_name(Errc c);

/// Single exception type for the whole library; `code()` identifies the
/// failure class so callers (and the C API) can map it without string
/// matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace smtpflow
