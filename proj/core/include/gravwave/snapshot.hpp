#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "gravwave/grid.hpp"

namespace gravwave {

// Binary field snapshot, all little-endian:
//   bytes  0..3   magic "GWF1"
//   bytes  4..7   u32 n
//   bytes  8..15  f64 R
//   bytes 16..23  u64 flags
//   bytes 24..31  reserved, zero
// followed by n*n f64 samples in row-major order. With kVolumeFlag set the
// header is followed by u32 ny, u32 reserved, f64 Y, ny f64 level depths and
// then three ny*n*n blocks (gx1, gx2, gy), level-major.

inline constexpr std::uint64_t kVolumeFlag = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 32;

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SnapshotHeader {
  std::uint32_t n = 0;
  double period = 0.0;
  std::uint64_t flags = 0;
};

struct VolumeSnapshot {
  Grid grid;
  double depth = 0.0;
  std::vector<double> levels;
  std::vector<double> gx1, gx2, gy;  // ny * n * n each
};

void write_snapshot(std::ostream& out, const RealField& f);
RealField read_snapshot(std::istream& in);
void write_snapshot(const std::filesystem::path& path, const RealField& f);
RealField read_snapshot(const std::filesystem::path& path);

void write_volume_snapshot(std::ostream& out, const VolumeSnapshot& v);
VolumeSnapshot read_volume_snapshot(std::istream& in);

SnapshotHeader read_snapshot_header(std::istream& in);

}  // namespace gravwave
