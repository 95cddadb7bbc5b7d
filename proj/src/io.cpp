#include "jointdsm/io.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jointdsm/errors.hpp"
#include "jointdsm/gzstream.hpp"

namespace jointdsm {

namespace {

constexpr std::string_view kChecksumTag = "#sha256 ";

struct LineCursor {
  std::string_view body;
  std::size_t pos = 0;
  std::size_t line_no = 0;

  bool next(std::string_view& line) {
    if (pos >= body.size()) return false;
    std::size_t nl = body.find('\n', pos);
    if (nl == std::string_view::npos) nl = body.size();
    line = body.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    return true;
  }
};

template <typename T>
T parse_field(std::string_view s, const char* what) {
  T out{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw TruncatedFile(std::string("bad ") + what + " field '" +
                        std::string(s) + "'");
  return out;
}

double parse_real(std::string_view s, const char* what) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw TruncatedFile(std::string("bad ") + what + " field '" +
                        std::string(s) + "'");
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Writes body + checksum trailer atomically; gzip when path ends in .gz.
std::string write_file(const std::string& path, const std::string& body) {
  std::string digest = sha256_hex(body);
  std::string trailer = std::string(kChecksumTag) + digest + "\n";
  std::string tmp = path + ".tmp";

  bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  if (gz) {
    gzFile f = gzopen(tmp.c_str(), "wb");
    if (!f) throw IoError("cannot write " + tmp);
    bool ok =
        gzwrite(f, body.data(), static_cast<unsigned>(body.size())) ==
            static_cast<int>(body.size()) &&
        gzwrite(f, trailer.data(), static_cast<unsigned>(trailer.size())) ==
            static_cast<int>(trailer.size());
    gzclose(f);
    if (!ok) throw IoError("short write to " + tmp);
  } else {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp);
    out << body << trailer;
    out.close();
    if (!out) throw IoError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " -> " + path);
  return digest;
}

// Reads the whole (decompressed) file, validates and strips the checksum
// trailer, and returns the body.
std::string read_checked(const std::string& path) {
  GzInputFile in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string content = buf.str();

  std::size_t tag = content.rfind(kChecksumTag);
  if (tag == std::string::npos || (tag != 0 && content[tag - 1] != '\n'))
    throw TruncatedFile("missing checksum line in " + path);
  std::string body = content.substr(0, tag);
  std::string_view rest(content);
  rest.remove_prefix(tag + kChecksumTag.size());
  if (!rest.empty() && rest.back() == '\n') rest.remove_suffix(1);
  if (rest.size() != 64)
    throw TruncatedFile("malformed checksum line in " + path);
  if (sha256_hex(body) != rest)
    throw ChecksumMismatch("checksum mismatch in " + path);
  return body;
}

std::string_view first_word(std::string_view line) {
  std::size_t sp = line.find(' ');
  return sp == std::string_view::npos ? line : line.substr(0, sp);
}

void expect_magic(std::string_view header, std::string_view magic,
                  const std::string& path) {
  if (first_word(header) != magic)
    throw MagicMismatch("expected " + std::string(magic) + " file, got '" +
                        std::string(first_word(header)) + "' in " + path);
}

// Declared sizes must be plausible for the body we actually read before
// anything is reserved.
void check_declared(std::uint64_t declared, std::size_t body_bytes,
                    const std::string& path) {
  if (declared > body_bytes)
    throw TruncatedFile("declared count " + std::to_string(declared) +
                        " exceeds file size in " + path);
}

void read_vocab(LineCursor& cur, std::size_t n, Vocabulary& v,
                const std::string& path) {
  std::string_view line;
  for (std::size_t i = 0; i < n; ++i) {
    if (!cur.next(line))
      throw TruncatedFile("vocabulary truncated in " + path);
    v.intern(line);
  }
  if (v.size() != n)
    throw TruncatedFile("duplicate vocabulary entries in " + path);
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                  nullptr))
    throw IoError("sha256 failure");
  static const char* hex = "0123456789abcdef";
  std::string out(len * 2, '0');
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = hex[digest[i] >> 4];
    out[2 * i + 1] = hex[digest[i] & 0xf];
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string totals_sidecar_path(const std::string& matrix_path) {
  return matrix_path + ".totals";
}

std::string save_counts(const CooccurrenceMatrix& m, const std::string& path) {
  std::string body;
  body.reserve(m.cells.size() * 12 + 64);
  body += "JDSM1 " + std::to_string(m.targets.size()) + " " +
          std::to_string(m.contexts.size()) + " " +
          std::to_string(m.cells.size()) + "\n";
  for (const std::string& t : m.targets.texts()) body += t + "\n";
  for (const std::string& t : m.contexts.texts()) body += t + "\n";
  for (const CountCell& c : m.cells)
    body += std::to_string(c.target) + " " + std::to_string(c.context) + " " +
            std::to_string(c.count) + "\n";
  return write_file(path, body);
}

std::string save_weighted(const WeightedMatrix& w, const std::string& path) {
  std::string body;
  body.reserve(w.cells.size() * 24 + 64);
  body += "JDSM1W " + std::to_string(w.targets.size()) + " " +
          std::to_string(w.contexts.size()) + " " +
          std::to_string(w.cells.size()) + "\n";
  for (const std::string& t : w.targets.texts()) body += t + "\n";
  for (const std::string& t : w.contexts.texts()) body += t + "\n";
  for (const WeightCell& c : w.cells)
    body += std::to_string(c.target) + " " + std::to_string(c.context) + " " +
            format_double(c.weight) + "\n";
  return write_file(path, body);
}

std::string save_embedding(const EmbeddingMatrix& e, const std::string& path) {
  std::string body;
  body += "JDSME1 " + std::to_string(e.targets.size()) + " " +
          std::to_string(e.k) + " " + std::to_string(e.meta.seed) + " " +
          e.meta.log_base + "\n";
  for (const std::string& t : e.targets.texts()) body += t + "\n";
  for (Eigen::Index i = 0; i < e.rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.rows.cols(); ++j) {
      if (j) body += " ";
      body += format_double(e.rows(i, j));
    }
    body += "\n";
  }
  return write_file(path, body);
}

std::string save_totals(const TargetTotals& totals, const std::string& path) {
  std::vector<std::pair<std::string, std::uint64_t>> rows(totals.begin(),
                                                          totals.end());
  std::sort(rows.begin(), rows.end());
  std::string body;
  for (const auto& [text, total] : rows)
    body += text + " " + std::to_string(total) + "\n";
  return write_file(path, body);
}

CooccurrenceMatrix load_counts(const std::string& path) {
  std::string body = read_checked(path);
  LineCursor cur{body};
  std::string_view header;
  if (!cur.next(header)) throw TruncatedFile("empty file " + path);
  expect_magic(header, "JDSM1", path);
  auto fields = split_ws(header);
  if (fields.size() != 4) throw TruncatedFile("bad header in " + path);
  auto n_targets = parse_field<std::uint64_t>(fields[1], "n_targets");
  auto n_contexts = parse_field<std::uint64_t>(fields[2], "n_contexts");
  auto nnz = parse_field<std::uint64_t>(fields[3], "nnz");
  check_declared(n_targets + n_contexts + nnz, body.size(), path);

  CooccurrenceMatrix m;
  read_vocab(cur, n_targets, m.targets, path);
  read_vocab(cur, n_contexts, m.contexts, path);
  m.cells.reserve(nnz);
  std::string_view line;
  for (std::uint64_t i = 0; i < nnz; ++i) {
    if (!cur.next(line)) throw TruncatedFile("cells truncated in " + path);
    auto cols = split_ws(line);
    if (cols.size() != 3) throw TruncatedFile("bad cell row in " + path);
    CountCell c{parse_field<std::uint32_t>(cols[0], "target id"),
                parse_field<std::uint32_t>(cols[1], "context id"),
                parse_field<std::uint64_t>(cols[2], "count")};
    if (c.target >= n_targets || c.context >= n_contexts)
      throw TruncatedFile("cell id out of range in " + path);
    if (c.count == 0) throw TruncatedFile("explicit zero cell in " + path);
    m.cells.push_back(c);
  }
  if (cur.next(line)) throw TruncatedFile("trailing rows in " + path);
  return m;
}

WeightedMatrix load_weighted(const std::string& path) {
  std::string body = read_checked(path);
  LineCursor cur{body};
  std::string_view header;
  if (!cur.next(header)) throw TruncatedFile("empty file " + path);
  expect_magic(header, "JDSM1W", path);
  auto fields = split_ws(header);
  if (fields.size() != 4) throw TruncatedFile("bad header in " + path);
  auto n_targets = parse_field<std::uint64_t>(fields[1], "n_targets");
  auto n_contexts = parse_field<std::uint64_t>(fields[2], "n_contexts");
  auto nnz = parse_field<std::uint64_t>(fields[3], "nnz");
  check_declared(n_targets + n_contexts + nnz, body.size(), path);

  WeightedMatrix w;
  read_vocab(cur, n_targets, w.targets, path);
  read_vocab(cur, n_contexts, w.contexts, path);
  w.cells.reserve(nnz);
  std::string_view line;
  for (std::uint64_t i = 0; i < nnz; ++i) {
    if (!cur.next(line)) throw TruncatedFile("cells truncated in " + path);
    auto cols = split_ws(line);
    if (cols.size() != 3) throw TruncatedFile("bad cell row in " + path);
    WeightCell c{parse_field<std::uint32_t>(cols[0], "target id"),
                 parse_field<std::uint32_t>(cols[1], "context id"),
                 parse_real(cols[2], "weight")};
    if (c.target >= n_targets || c.context >= n_contexts)
      throw TruncatedFile("cell id out of range in " + path);
    if (!(c.weight > 0.0) || !std::isfinite(c.weight))
      throw TruncatedFile("non-positive weight cell in " + path);
    w.cells.push_back(c);
  }
  if (cur.next(line)) throw TruncatedFile("trailing rows in " + path);
  w.build_row_index();
  return w;
}

EmbeddingMatrix load_embedding(const std::string& path) {
  std::string body = read_checked(path);
  LineCursor cur{body};
  std::string_view header;
  if (!cur.next(header)) throw TruncatedFile("empty file " + path);
  expect_magic(header, "JDSME1", path);
  auto fields = split_ws(header);
  if (fields.size() != 5) throw TruncatedFile("bad header in " + path);
  auto n = parse_field<std::uint64_t>(fields[1], "n");
  auto k = parse_field<std::uint32_t>(fields[2], "k");
  auto seed = parse_field<std::uint64_t>(fields[3], "seed");
  check_declared(n * (static_cast<std::uint64_t>(k) + 1), body.size(), path);

  EmbeddingMatrix e;
  e.k = static_cast<int>(k);
  e.meta.k = e.k;
  e.meta.seed = seed;
  e.meta.log_base = std::string(fields[4]);
  read_vocab(cur, n, e.targets, path);
  e.rows.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  std::string_view line;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!cur.next(line)) throw TruncatedFile("rows truncated in " + path);
    auto cols = split_ws(line);
    if (cols.size() != k) throw TruncatedFile("bad row width in " + path);
    for (std::uint32_t j = 0; j < k; ++j)
      e.rows(static_cast<Eigen::Index>(i), j) = parse_real(cols[j], "entry");
  }
  if (cur.next(line)) throw TruncatedFile("trailing rows in " + path);
  if (!e.rows.allFinite())
    throw TruncatedFile("non-finite embedding entries in " + path);
  return e;
}

TargetTotals load_totals(const std::string& path) {
  std::string body = read_checked(path);
  LineCursor cur{body};
  TargetTotals totals;
  std::string_view line;
  while (cur.next(line)) {
    auto cols = split_ws(line);
    if (cols.size() != 2)
      throw TruncatedFile("bad totals row in " + path);
    totals[std::string(cols[0])] =
        parse_field<std::uint64_t>(cols[1], "total");
  }
  return totals;
}

AnyMatrix load_any(const std::string& path) {
  std::string magic;
  {
    GzInputFile in(path);
    in >> magic;
  }
  if (magic == "JDSM1") return load_counts(path);
  if (magic == "JDSM1W") return load_weighted(path);
  if (magic == "JDSME1") return load_embedding(path);
  throw MagicMismatch("unknown magic '" + magic + "' in " + path);
}

}  // namespace jointdsm
