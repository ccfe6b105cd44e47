#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace swapnet {

/// One detection record.  Timestamps are picoseconds in the shared network
/// timebase; channel identifies the detector; flags bit 0 marks simulated
/// dark counts (zeroed in blind exports).
struct TimeTagRecord {
  std::uint64_t timestamp_ps = 0;
  std::uint16_t channel = 0;
  std::uint16_t flags = 0;
  std::uint32_t reserved = 0;

  bool operator==(const TimeTagRecord&) const = default;
};

constexpr std::uint16_t kFlagDarkCount = 0x0001;

// QTAG stream file layout (little endian):
//   header, 32 bytes: magic "QTAG", u16 version = 1, u16 header_len = 32,
//                     u64 t_start_ps, u64 t_end_ps, u64 reserved = 0
//   records, 16 bytes each: u64 timestamp_ps, u16 channel, u16 flags,
//                     u32 reserved = 0
constexpr std::uint16_t kQtagVersion = 1;
constexpr std::size_t kQtagHeaderSize = 32;
constexpr std::size_t kQtagRecordSize = 16;

namespace detail {

inline void put_u16(unsigned char* p, std::uint16_t v) {
  p[0] = static_cast<unsigned char>(v);
  p[1] = static_cast<unsigned char>(v >> 8);
}
inline void put_u32(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}
inline void put_u64(unsigned char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}
inline std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
inline std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
inline std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace detail

/// Buffered writer for one QTAG stream.  The header's time span is fixed up
/// on close, and the file is written to a temp path and renamed so partial
/// output is never visible.
class QtagWriter {
 public:
  QtagWriter(const std::string& path, std::uint64_t t_start_ps, std::uint64_t t_end_ps)
      : path_(path), tmp_(path + ".tmp"), t_start_(t_start_ps), t_end_(t_end_ps) {
    f_ = std::fopen(tmp_.c_str(), "wb");
    if (!f_) throw std::runtime_error("cannot open for writing: " + tmp_);
    unsigned char h[kQtagHeaderSize] = {};
    std::memcpy(h, "QTAG", 4);
    detail::put_u16(h + 4, kQtagVersion);
    detail::put_u16(h + 6, static_cast<std::uint16_t>(kQtagHeaderSize));
    detail::put_u64(h + 8, t_start_);
    detail::put_u64(h + 16, t_end_);
    if (std::fwrite(h, 1, sizeof h, f_) != sizeof h) throw std::runtime_error("write failed: " + tmp_);
  }

  QtagWriter(const QtagWriter&) = delete;
  QtagWriter& operator=(const QtagWriter&) = delete;

  ~QtagWriter() {
    if (f_) {
      std::fclose(f_);
      std::remove(tmp_.c_str());
    }
  }

  void write(const TimeTagRecord& r) {
    unsigned char b[kQtagRecordSize];
    detail::put_u64(b, r.timestamp_ps);
    detail::put_u16(b + 8, r.channel);
    detail::put_u16(b + 10, r.flags);
    detail::put_u32(b + 12, r.reserved);
    if (std::fwrite(b, 1, sizeof b, f_) != sizeof b) throw std::runtime_error("write failed: " + tmp_);
    ++count_;
  }

  void write(const std::vector<TimeTagRecord>& tags) {
    // Batch-encode to cut fwrite call overhead on multi-GB streams.
    buf_.resize(tags.size() * kQtagRecordSize);
    unsigned char* p = buf_.data();
    for (const auto& r : tags) {
      detail::put_u64(p, r.timestamp_ps);
      detail::put_u16(p + 8, r.channel);
      detail::put_u16(p + 10, r.flags);
      detail::put_u32(p + 12, r.reserved);
      p += kQtagRecordSize;
    }
    if (!buf_.empty() && std::fwrite(buf_.data(), 1, buf_.size(), f_) != buf_.size())
      throw std::runtime_error("write failed: " + tmp_);
    count_ += tags.size();
  }

  std::uint64_t count() const { return count_; }

  void close() {
    if (!f_) return;
    if (std::fclose(f_) != 0) throw std::runtime_error("close failed: " + tmp_);
    f_ = nullptr;
    if (std::rename(tmp_.c_str(), path_.c_str()) != 0)
      throw std::runtime_error("rename failed: " + path_);
  }

 private:
  std::string path_, tmp_;
  std::FILE* f_ = nullptr;
  std::uint64_t t_start_ = 0, t_end_ = 0;
  std::uint64_t count_ = 0;
  std::vector<unsigned char> buf_;
};

struct QtagHeader {
  std::uint16_t version = kQtagVersion;
  std::uint64_t t_start_ps = 0;
  std::uint64_t t_end_ps = 0;
};

/// Sequential reader over one QTAG stream with chunked access, so multi-GB
/// files never have to fit in memory at once.
class QtagReader {
 public:
  explicit QtagReader(const std::string& path) : path_(path) {
    f_ = std::fopen(path.c_str(), "rb");
    if (!f_) throw std::runtime_error("cannot open: " + path);
    unsigned char h[kQtagHeaderSize];
    if (std::fread(h, 1, sizeof h, f_) != sizeof h)
      throw std::runtime_error("truncated qtag header: " + path);
    if (std::memcmp(h, "QTAG", 4) != 0) throw std::runtime_error("bad qtag magic: " + path);
    header_.version = detail::get_u16(h + 4);
    if (header_.version != kQtagVersion) throw std::runtime_error("unsupported qtag version: " + path);
    const std::uint16_t hlen = detail::get_u16(h + 6);
    header_.t_start_ps = detail::get_u64(h + 8);
    header_.t_end_ps = detail::get_u64(h + 16);
    if (hlen != kQtagHeaderSize) std::fseek(f_, hlen, SEEK_SET);
  }

  QtagReader(const QtagReader&) = delete;
  QtagReader& operator=(const QtagReader&) = delete;
  ~QtagReader() {
    if (f_) std::fclose(f_);
  }

  const QtagHeader& header() const { return header_; }

  /// Read up to max_records; returns number read (0 at end of file).
  std::size_t read_chunk(std::vector<TimeTagRecord>& out, std::size_t max_records) {
    buf_.resize(max_records * kQtagRecordSize);
    const std::size_t got = std::fread(buf_.data(), 1, buf_.size(), f_);
    if (got % kQtagRecordSize != 0) throw std::runtime_error("truncated qtag record: " + path_);
    const std::size_t n = got / kQtagRecordSize;
    out.resize(n);
    const unsigned char* p = buf_.data();
    for (std::size_t i = 0; i < n; ++i, p += kQtagRecordSize) {
      out[i].timestamp_ps = detail::get_u64(p);
      out[i].channel = detail::get_u16(p + 8);
      out[i].flags = detail::get_u16(p + 10);
      out[i].reserved = detail::get_u32(p + 12);
    }
    return n;
  }

  std::vector<TimeTagRecord> read_all() {
    std::vector<TimeTagRecord> all, chunk;
    while (read_chunk(chunk, 1 << 20) > 0) all.insert(all.end(), chunk.begin(), chunk.end());
    return all;
  }

 private:
  std::string path_;
  std::FILE* f_ = nullptr;
  QtagHeader header_;
  std::vector<unsigned char> buf_;
};

inline void write_qtag_file(const std::string& path, const std::vector<TimeTagRecord>& tags,
                            std::uint64_t t_start_ps, std::uint64_t t_end_ps) {
  QtagWriter w(path, t_start_ps, t_end_ps);
  w.write(tags);
  w.close();
}

}  // namespace swapnet
