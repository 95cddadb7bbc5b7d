// Input stream over a file that may or may not be gzip-compressed; zlib's
// gz layer transparently handles both, so detection by magic bytes comes
// for free.
#pragma once

#include <istream>
#include <memory>
#include <streambuf>
#include <string>

namespace jointdsm {

class GzStreambuf : public std::streambuf {
 public:
  explicit GzStreambuf(const std::string& path);
  ~GzStreambuf() override;

  GzStreambuf(const GzStreambuf&) = delete;
  GzStreambuf& operator=(const GzStreambuf&) = delete;

 protected:
  int_type underflow() override;

 private:
  void* gz_ = nullptr;  // gzFile
  static constexpr std::size_t kBufSize = 1 << 16;
  std::unique_ptr<char[]> buf_;
};

// istream over a plain or gzipped file. Throws IoError if the file cannot
// be opened.
class GzInputFile : public std::istream {
 public:
  explicit GzInputFile(const std::string& path)
      : std::istream(nullptr), buf_(path) {
    rdbuf(&buf_);
  }

 private:
  GzStreambuf buf_;
};

}  // namespace jointdsm
