#include "rnls/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace rnls {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  os.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw std::runtime_error("truncated snapshot header");
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

} // namespace

void write_snapshot(std::ostream& os, Real t, const VectorField& state) {
  os.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  put<std::uint32_t>(os, kSnapshotVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(state.grid().points()));
  put<double>(os, state.grid().half_width());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(state.band().radius()));
  put<double>(os, t);
  for (int s = 0; s < state.size(); ++s) {
    const Field& f = state.slot(s);
    // Row-major complex<double> is already interleaved (re, im).
    os.write(reinterpret_cast<const char*>(f.data()),
             static_cast<std::streamsize>(f.size() * sizeof(Complex)));
  }
  if (!os) throw std::runtime_error("failed writing snapshot");
}

void write_snapshot(const std::filesystem::path& path, Real t, const VectorField& state) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_snapshot(os, t, state);
}

Snapshot read_snapshot(std::istream& is, const SpatialGrid* reuse) {
  char magic[sizeof(kSnapshotMagic)];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("not a snapshot file (bad magic)");
  }
  const auto version = get<std::uint32_t>(is);
  if (version != kSnapshotVersion) {
    throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
  }
  const auto n = get<std::uint32_t>(is);
  const auto half_width = get<double>(is);
  const auto radius = get<std::uint32_t>(is);
  const auto t = get<double>(is);
  if (radius > static_cast<std::uint32_t>(ModeBand::kMaxRadius)) {
    throw std::runtime_error("snapshot band radius out of range");
  }
  const bool same = reuse && reuse->half_width() == half_width &&
                    reuse->points() == static_cast<int>(n);
  SpatialGrid grid = same ? *reuse : SpatialGrid(half_width, static_cast<int>(n));
  VectorField state(grid, ModeBand(static_cast<int>(radius)));
  for (int s = 0; s < state.size(); ++s) {
    Field& f = state.slot(s);
    if (!is.read(reinterpret_cast<char*>(f.data()),
                 static_cast<std::streamsize>(f.size() * sizeof(Complex)))) {
      throw std::runtime_error("truncated snapshot payload");
    }
  }
  return {t, std::move(state)};
}

Snapshot read_snapshot(const std::filesystem::path& path, const SpatialGrid* reuse) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_snapshot(is, reuse);
}

std::string snapshot_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%06d.bin", index);
  return buf;
}

Trajectory load_trajectory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("snapshot_") && name.ends_with(".bin")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  Trajectory out;
  out.reserve(files.size());
  for (const auto& f : files) {
    out.push_back(read_snapshot(f, out.empty() ? nullptr : &out.front().state.grid()));
  }
  return out;
}

} // namespace rnls
