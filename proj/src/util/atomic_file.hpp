#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace smtpflow::util {

/// Writes to `<target>.tmp` and renames to `target` on commit(), so a failed
/// run never leaves a partial output file behind.
class AtomicFile {
 public:
  explicit AtomicFile(const std::filesystem::path& target, bool binary = false);
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile();

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace smtpflow::util
