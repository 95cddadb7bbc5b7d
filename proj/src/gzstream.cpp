#include "jointdsm/gzstream.hpp"

#include <zlib.h>

#include "jointdsm/errors.hpp"

namespace jointdsm {

GzStreambuf::GzStreambuf(const std::string& path)
    : buf_(new char[kBufSize]) {
  gz_ = gzopen(path.c_str(), "rb");
  if (!gz_) throw IoError("cannot open " + path);
  gzbuffer(static_cast<gzFile>(gz_), 1 << 17);
  setg(buf_.get(), buf_.get(), buf_.get());
}

GzStreambuf::~GzStreambuf() {
  if (gz_) gzclose(static_cast<gzFile>(gz_));
}

GzStreambuf::int_type GzStreambuf::underflow() {
  if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
  int n = gzread(static_cast<gzFile>(gz_), buf_.get(),
                 static_cast<unsigned>(kBufSize));
  if (n <= 0) return traits_type::eof();
  setg(buf_.get(), buf_.get(), buf_.get() + n);
  return traits_type::to_int_type(*gptr());
}

}  // namespace jointdsm
