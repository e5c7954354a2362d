#include "util/atomic_file.hpp"

#include <system_error>

#include "core/error.hpp"

namespace smtpflow::util {

AtomicFile::AtomicFile(const std::filesystem::path& target, bool binary)
    : target_(target), tmp_(target.string() + ".tmp") {
  auto mode = std::ios::out | std::ios::trunc;
  if (binary) mode |= std::ios::binary;
  out_.open(tmp_, mode);
  if (!out_) raise(Errc::io_error, "cannot open '" + tmp_.string() + "' for writing");
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) raise(Errc::io_error, "write failed for '" + tmp_.string() + "'");
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_, target_, ec);
  if (ec) raise(Errc::io_error, "cannot rename '" + tmp_.string() + "' to '" + target_.string() +
                                    "': " + ec.message());
  committed_ = true;
}

}  // namespace smtpflow::util
