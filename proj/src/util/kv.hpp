#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace smtpflow::util {

/// Reads a `key=value` config stream. Blank lines and '#' comments are
/// skipped; keys and values are trimmed. Duplicate keys keep the last value.
std::map<std::string, std::string> read_kv(std::istream& in);

uint64_t parse_u64(const std::string& key, const std::string& value);
int64_t parse_i64(const std::string& key, const std::string& value);
double parse_f64(const std::string& key, const std::string& value);

std::string trim(const std::string& s);

}  // namespace smtpflow::util
