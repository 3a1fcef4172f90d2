/*
 * Copyright 2026 The Tornado Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "tornado/fields.hpp"

namespace tornado {

// ---------------------------------------------------------------------------
// Energy trace CSV: header "t,energy,mynorm", one row per record, every value
// in the shortest decimal form that reads back to the same double.

class CsvError : public std::runtime_error {
  public:
    CsvError(std::size_t row, const std::string& message);
    /// 1-based line number in the file (the header is line 1).
    std::size_t row() const { return row_; }

  private:
    std::size_t row_;
};

std::string format_double(double x);

void write_energy_csv(const EnergyTrace& trace, const std::string& path);
EnergyTrace read_energy_csv(const std::string& path);

// ---------------------------------------------------------------------------
// Binary snapshot, little-endian throughout:
//
//   offset  size        field
//   0       4           magic "TORN"
//   4       4           version (u32) = 1
//   8       12          nx, ny, nz (u32)
//   20      8           h (f64)
//   28      24          origin x, y, z (f64)
//   52      8           t (f64)
//   60      24 nx ny nz components v1, v2, v3 (f64), each z-fastest

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 60;

enum class SnapshotErrorCode {
    io,           // cannot open / write
    bad_magic,
    bad_version,
    truncated,    // fewer bytes than the header promises
    bad_header,   // header values that cannot describe a grid
    trailing,     // more bytes than the header promises
};

class SnapshotError : public std::runtime_error {
  public:
    SnapshotError(SnapshotErrorCode code, const std::string& message);
    SnapshotErrorCode code() const { return code_; }

  private:
    SnapshotErrorCode code_;
};

struct Snapshot {
    VectorField field;
    double t;
};

void write_snapshot(const VectorField& v, double t, const std::string& path);
Snapshot read_snapshot(const std::string& path);

/// Expected file size for a grid of the given extents.
std::size_t snapshot_size(std::size_t nx, std::size_t ny, std::size_t nz);

// ---------------------------------------------------------------------------
// Slice export for plotting: |v| and log10|v| over a plane, or the maximum of
// |v| over a range of planes.

struct SliceSelector {
    int axis;           // 0 = x, 1 = y, 2 = z; the plane is normal to this axis
    std::size_t first;  // plane index, or first index of the range
    std::size_t last;   // == first for a single plane; inclusive
};

/// Writes `<base>.csv` (|v|), `<base>_log10.csv` and `<base>_coords.txt`.
/// Rows run over the first remaining axis, columns over the second.
/// Throws std::out_of_range for a bad selector.
void export_slice(const VectorField& v, const SliceSelector& selector, const std::string& base);

}  // namespace tornado
