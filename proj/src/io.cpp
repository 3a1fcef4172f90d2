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

#include "tornado/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

namespace tornado {

CsvError::CsvError(std::size_t row, const std::string& message)
    : std::runtime_error("energy csv line " + std::to_string(row) + ": " + message), row_(row) {}

SnapshotError::SnapshotError(SnapshotErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

std::string format_double(double x) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), end);
}

void write_energy_csv(const EnergyTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "t,energy,mynorm\n";
    for (const auto& r : trace.records()) {
        out << format_double(r.t) << ',' << format_double(r.energy) << ',' << format_double(r.mynorm) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

EnergyTrace read_energy_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "t,energy,mynorm") {
        throw CsvError(1, "expected header 't,energy,mynorm'");
    }
    EnergyTrace trace;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::array<double, 3> values{};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (std::size_t col = 0; col < 3; ++col) {
            auto [next, ec] = std::from_chars(p, end, values[col]);
            if (ec != std::errc{}) throw CsvError(row, "malformed number in column " + std::to_string(col + 1));
            p = next;
            if (col < 2) {
                if (p == end || *p != ',') throw CsvError(row, "expected 3 comma-separated values");
                ++p;
            }
        }
        if (p != end) throw CsvError(row, "trailing characters");
        try {
            trace.push(EnergyRecord{values[0], values[1], values[2]});
        } catch (const std::invalid_argument& e) {
            throw CsvError(row, e.what());
        }
    }
    return trace;
}

namespace {

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    const U bits = std::bit_cast<U>(value);
    for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<unsigned char>(bits >> (8 * b)));
}

template <typename T>
T get_le(const unsigned char* p) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    U bits = 0;
    for (std::size_t b = 0; b < sizeof(U); ++b) bits |= static_cast<U>(p[b]) << (8 * b);
    return std::bit_cast<T>(bits);
}

}  // namespace

std::size_t snapshot_size(std::size_t nx, std::size_t ny, std::size_t nz) {
    return kSnapshotHeaderBytes + 8 * 3 * nx * ny * nz;
}

void write_snapshot(const VectorField& v, double t, const std::string& path) {
    const GridSpec& g = v.grid();
    for (std::size_t n : g.extents()) {
        if (n > std::numeric_limits<std::uint32_t>::max()) {
            throw SnapshotError(SnapshotErrorCode::bad_header, "grid too large for snapshot format");
        }
    }
    std::vector<unsigned char> bytes;
    bytes.reserve(snapshot_size(g.nx(), g.ny(), g.nz()));
    bytes.insert(bytes.end(), {'T', 'O', 'R', 'N'});
    put_le<std::uint32_t>(bytes, kSnapshotVersion);
    for (std::size_t n : g.extents()) put_le<std::uint32_t>(bytes, static_cast<std::uint32_t>(n));
    put_le<double>(bytes, g.h());
    for (double o : g.origin()) put_le<double>(bytes, o);
    put_le<double>(bytes, t);
    for (int c = 0; c < 3; ++c) {
        for (double x : v.component(c)) put_le<double>(bytes, x);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError(SnapshotErrorCode::io, "cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SnapshotError(SnapshotErrorCode::io, "write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError(SnapshotErrorCode::io, "cannot open '" + path + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (bytes.size() < 8) throw SnapshotError(SnapshotErrorCode::truncated, "snapshot shorter than its header");
    if (std::memcmp(bytes.data(), "TORN", 4) != 0) {
        throw SnapshotError(SnapshotErrorCode::bad_magic, "'" + path + "' is not a snapshot (bad magic)");
    }
    const auto version = get_le<std::uint32_t>(bytes.data() + 4);
    if (version != kSnapshotVersion) {
        throw SnapshotError(SnapshotErrorCode::bad_version, "unsupported snapshot version " + std::to_string(version));
    }
    if (bytes.size() < kSnapshotHeaderBytes) {
        throw SnapshotError(SnapshotErrorCode::truncated, "snapshot shorter than its header");
    }
    const std::size_t nx = get_le<std::uint32_t>(bytes.data() + 8);
    const std::size_t ny = get_le<std::uint32_t>(bytes.data() + 12);
    const std::size_t nz = get_le<std::uint32_t>(bytes.data() + 16);
    const double h = get_le<double>(bytes.data() + 20);
    const Vec3 origin{get_le<double>(bytes.data() + 28), get_le<double>(bytes.data() + 36),
                      get_le<double>(bytes.data() + 44)};
    const double t = get_le<double>(bytes.data() + 52);

    std::optional<GridSpec> grid;
    try {
        grid.emplace(nx, ny, nz, h, origin);
    } catch (const std::invalid_argument& e) {
        throw SnapshotError(SnapshotErrorCode::bad_header, std::string("invalid snapshot header: ") + e.what());
    }
    const std::size_t expected = snapshot_size(nx, ny, nz);
    if (bytes.size() < expected) {
        throw SnapshotError(SnapshotErrorCode::truncated, "snapshot payload truncated: expected " +
                                                              std::to_string(expected) + " bytes, found " +
                                                              std::to_string(bytes.size()));
    }
    if (bytes.size() > expected) {
        throw SnapshotError(SnapshotErrorCode::trailing, "snapshot has trailing bytes");
    }

    Snapshot snap{VectorField(*grid), t};
    const unsigned char* p = bytes.data() + kSnapshotHeaderBytes;
    for (int c = 0; c < 3; ++c) {
        for (double& x : snap.field.component(c)) {
            x = get_le<double>(p);
            p += 8;
        }
    }
    return snap;
}

void export_slice(const VectorField& v, const SliceSelector& sel, const std::string& base) {
    const GridSpec& g = v.grid();
    if (sel.axis < 0 || sel.axis > 2) throw std::out_of_range("export_slice: axis must be 0, 1 or 2");
    const std::size_t n_axis = g.extent(sel.axis);
    if (sel.first > sel.last || sel.last >= n_axis) {
        throw std::out_of_range("export_slice: plane index out of range (axis has " + std::to_string(n_axis) +
                                " points)");
    }
    const int row_axis = sel.axis == 0 ? 1 : 0;
    const int col_axis = sel.axis == 2 ? 1 : 2;
    const std::size_t rows = g.extent(row_axis);
    const std::size_t cols = g.extent(col_axis);

    std::vector<double> mag(rows * cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double best = 0.0;
            for (std::size_t s = sel.first; s <= sel.last; ++s) {
                Index3 idx{};
                idx[static_cast<std::size_t>(sel.axis)] = s;
                idx[static_cast<std::size_t>(row_axis)] = r;
                idx[static_cast<std::size_t>(col_axis)] = c;
                best = std::max(best, std::sqrt(norm2(v.at(g.linear(idx)))));
            }
            mag[r * cols + c] = best;
        }
    }

    auto write_matrix = [&](const std::string& path, auto transform) {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (c) out << ',';
                out << format_double(transform(mag[r * cols + c]));
            }
            out << '\n';
        }
    };
    write_matrix(base + ".csv", [](double x) { return x; });
    // log10(0) is written as -inf so that empty regions stay distinguishable.
    write_matrix(base + "_log10.csv", [](double x) { return std::log10(x); });

    std::ofstream coords(base + "_coords.txt", std::ios::trunc);
    if (!coords) throw std::runtime_error("cannot write '" + base + "_coords.txt'");
    const char* names = "xyz";
    coords << "plane_axis " << names[sel.axis] << '\n';
    coords << "plane_range " << format_double(g.origin()[static_cast<std::size_t>(sel.axis)] + g.h() * static_cast<double>(sel.first))
           << ' ' << format_double(g.origin()[static_cast<std::size_t>(sel.axis)] + g.h() * static_cast<double>(sel.last))
           << (sel.first == sel.last ? " (single plane)" : " (max over range)") << '\n';
    coords << "rows " << names[row_axis] << ' ' << rows << " from "
           << format_double(g.origin()[static_cast<std::size_t>(row_axis)]) << " step " << format_double(g.h()) << '\n';
    coords << "cols " << names[col_axis] << ' ' << cols << " from "
           << format_double(g.origin()[static_cast<std::size_t>(col_axis)]) << " step " << format_double(g.h()) << '\n';
}

}  // namespace tornado
