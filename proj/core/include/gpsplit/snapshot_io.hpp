#pragma once

#include <filesystem>

#include "gpsplit/field.hpp"

namespace gpsplit {

/// Writes `<stem>.json` ({dim, N, L, bc, dtype: "c128", order: "row-major", t})
/// and `<stem>.bin` (little-endian interleaved re/im float64).
void write_snapshot(const std::filesystem::path& stem, const Field& f, double t = 0.0);

struct LoadedSnapshot {
  Field field;
  double t = 0.0;
};

LoadedSnapshot read_snapshot(const std::filesystem::path& stem);

}  // namespace gpsplit
