#ifndef RNLS_SNAPSHOT_HPP
#define RNLS_SNAPSHOT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rnls/state.hpp"

namespace rnls {

/// A state at a recorded time.
struct Snapshot {
  Real t;
  VectorField state;
};

typedef std::vector<Snapshot> Trajectory;

/// Binary layout, little-endian:
///   char[8] "RNLSSNAP" | u32 version (1) | u32 N | f64 L | u32 J | f64 t
///   then for j = -J..J an N x N row-major array of (re, im) f64 pairs.
inline constexpr char kSnapshotMagic[8] = {'R', 'N', 'L', 'S', 'S', 'N', 'A', 'P'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& os, Real t, const VectorField& state);
void write_snapshot(const std::filesystem::path& path, Real t, const VectorField& state);
/// `reuse` supplies an existing grid when its (L, N) match the header.
Snapshot read_snapshot(std::istream& is, const SpatialGrid* reuse = nullptr);
Snapshot read_snapshot(const std::filesystem::path& path, const SpatialGrid* reuse = nullptr);

std::string snapshot_file_name(int index);
/// All snapshot_*.bin files of a directory in index order.
Trajectory load_trajectory(const std::filesystem::path& dir);

} // namespace rnls

#endif // RNLS_SNAPSHOT_HPP
