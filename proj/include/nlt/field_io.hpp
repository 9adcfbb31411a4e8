#pragma once
// Field persistence.
//
// CSV: header "x,value", one row per node, values printed with 17 significant
// digits so a read-back is bit-identical.
// Binary: "NLTF", uint32 version, uint64 N, double L, N doubles; host byte
// order (little-endian on every supported platform).

#include <cstdint>
#include <filesystem>

#include "nlt/field.hpp"

namespace nlt::io {

inline constexpr std::uint32_t kFieldDumpVersion = 1;

void write_field_csv(const Field& f, const std::filesystem::path& path);
Field read_field_csv(const std::filesystem::path& path, double length);

void write_field_binary(const Field& f, const std::filesystem::path& path);
Field read_field_binary(const std::filesystem::path& path);

}  // namespace nlt::io
