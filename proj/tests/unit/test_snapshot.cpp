#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "rnls/snapshot.hpp"

using namespace rnls;

TEST(Snapshot, HeaderLayout) {
  const SpatialGrid g(3.5, 8);
  VectorField u(g, ModeBand(1));
  u.mode(-1)(0, 1) = Complex(1.25, -2.0);
  std::ostringstream os;
  write_snapshot(os, 0.75, u);
  const std::string bytes = os.str();
  ASSERT_EQ(bytes.size(), 8u + 4 + 4 + 8 + 4 + 8 + 3u * 8 * 8 * 16);
  EXPECT_EQ(bytes.substr(0, 8), "RNLSSNAP");
  std::uint32_t version, n, J;
  double L, t, re, im;
  std::memcpy(&version, bytes.data() + 8, 4);
  std::memcpy(&n, bytes.data() + 12, 4);
  std::memcpy(&L, bytes.data() + 16, 8);
  std::memcpy(&J, bytes.data() + 24, 4);
  std::memcpy(&t, bytes.data() + 28, 8);
  std::memcpy(&re, bytes.data() + 36 + 16, 8);
  std::memcpy(&im, bytes.data() + 36 + 24, 8);
  EXPECT_EQ(version, 1u);
  EXPECT_EQ(n, 8u);
  EXPECT_EQ(L, 3.5);
  EXPECT_EQ(J, 1u);
  EXPECT_EQ(t, 0.75);
  EXPECT_EQ(re, 1.25);
  EXPECT_EQ(im, -2.0);
}

TEST(Snapshot, RoundTripAndTrajectory) {
  const SpatialGrid g(4.0, 16);
  Rng rng(3);
  const auto dir = std::filesystem::temp_directory_path() / "rnls_snapshot_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::vector<VectorField> states;
  for (int i = 0; i < 3; ++i) {
    states.push_back(random_state(g, ModeBand(2), rng));
    write_snapshot(dir / snapshot_file_name(i), 0.1 * i, states.back());
  }
  const Trajectory traj = load_trajectory(dir);
  ASSERT_EQ(traj.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(traj[i].t, 0.1 * i);
    EXPECT_EQ(test::rel_diff(states[i], traj[i].state), 0.0);
  }
  EXPECT_EQ(traj[1].state.grid(), g);
  std::filesystem::remove_all(dir);
}

TEST(Snapshot, RejectsCorruptInput) {
  std::istringstream bad("NOTASNAPxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx");
  EXPECT_ANY_THROW(read_snapshot(bad));
  const SpatialGrid g(4.0, 8);
  std::ostringstream os;
  write_snapshot(os, 0.0, VectorField(g, ModeBand(0)));
  std::istringstream truncated(os.str().substr(0, 60));
  EXPECT_ANY_THROW(read_snapshot(truncated));
  EXPECT_ANY_THROW(load_trajectory("/nonexistent/dir"));
}
