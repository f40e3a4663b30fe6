#include "gravwave/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace gravwave {
namespace {

constexpr std::array<char, 4> kMagic{'G', 'W', 'F', '1'};

template <class U>
void put_le(std::ostream& out, U value) {
  std::array<unsigned char, sizeof(U)> bytes{};
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    bytes[b] = static_cast<unsigned char>((value >> (8 * b)) & 0xffu);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <class U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw SnapshotError("snapshot truncated");
  }
  U value = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) value |= static_cast<U>(bytes[b]) << (8 * b);
  return value;
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

void write_header(std::ostream& out, const Grid& g, std::uint64_t flags) {
  out.write(kMagic.data(), kMagic.size());
  put_le(out, static_cast<std::uint32_t>(g.n()));
  put_f64(out, g.period());
  put_le(out, flags);
  put_le(out, std::uint64_t{0});
}

void put_block(std::ostream& out, const std::vector<double>& v) {
  for (double x : v) put_f64(out, x);
}

std::vector<double> get_block(std::istream& in, std::size_t count) {
  std::vector<double> v(count);
  for (auto& x : v) x = get_f64(in);
  return v;
}

}  // namespace

SnapshotHeader read_snapshot_header(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw SnapshotError("not a GWF1 snapshot");
  }
  SnapshotHeader h;
  h.n = get_le<std::uint32_t>(in);
  h.period = get_f64(in);
  h.flags = get_le<std::uint64_t>(in);
  (void)get_le<std::uint64_t>(in);
  return h;
}

void write_snapshot(std::ostream& out, const RealField& f) {
  write_header(out, f.grid(), 0);
  for (double x : f.values()) put_f64(out, x);
  if (!out) throw SnapshotError("snapshot write failed");
}

RealField read_snapshot(std::istream& in) {
  const SnapshotHeader h = read_snapshot_header(in);
  if (h.flags & kVolumeFlag) throw SnapshotError("snapshot holds a volume gradient");
  const Grid g(static_cast<int>(h.n), h.period);
  return RealField(g, get_block(in, g.size()));
}

void write_snapshot(const std::filesystem::path& path, const RealField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SnapshotError("cannot open " + path.string());
  write_snapshot(out, f);
}

RealField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open " + path.string());
  return read_snapshot(in);
}

void write_volume_snapshot(std::ostream& out, const VolumeSnapshot& v) {
  const std::size_t count = v.levels.size() * v.grid.size();
  if (v.gx1.size() != count || v.gx2.size() != count || v.gy.size() != count) {
    throw SnapshotError("volume blocks do not match levels x grid");
  }
  write_header(out, v.grid, kVolumeFlag);
  put_le(out, static_cast<std::uint32_t>(v.levels.size()));
  put_le(out, std::uint32_t{0});
  put_f64(out, v.depth);
  put_block(out, v.levels);
  put_block(out, v.gx1);
  put_block(out, v.gx2);
  put_block(out, v.gy);
  if (!out) throw SnapshotError("snapshot write failed");
}

VolumeSnapshot read_volume_snapshot(std::istream& in) {
  const SnapshotHeader h = read_snapshot_header(in);
  if (!(h.flags & kVolumeFlag)) throw SnapshotError("snapshot holds a plain field");
  VolumeSnapshot v{.grid = Grid(static_cast<int>(h.n), h.period)};
  const auto ny = get_le<std::uint32_t>(in);
  (void)get_le<std::uint32_t>(in);
  v.depth = get_f64(in);
  v.levels = get_block(in, ny);
  const std::size_t count = static_cast<std::size_t>(ny) * v.grid.size();
  v.gx1 = get_block(in, count);
  v.gx2 = get_block(in, count);
  v.gy = get_block(in, count);
  return v;
}

}  // namespace gravwave
