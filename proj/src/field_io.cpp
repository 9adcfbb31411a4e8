#include "nlt/field_io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nlt/error.hpp"

namespace nlt::io {
namespace {

constexpr std::array<char, 4> kMagic{'N', 'L', 'T', 'F'};

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw Error("truncated field dump: " + path.string());
  }
  return v;
}

}  // namespace

void write_field_csv(const Field& f, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::out | std::ios::trunc);
  out.precision(17);
  out << "x,value\n";
  for (std::size_t m = 0; m < f.size(); ++m) out << f.grid.node(m) << ',' << f[m] << '\n';
}

Field read_field_csv(const std::filesystem::path& path, double length) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,value", 0) != 0) {
    throw Error("missing x,value header in " + path.string());
  }
  std::vector<double> v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("malformed CSV row in " + path.string());
    v.push_back(std::stod(line.substr(comma + 1)));
  }
  Grid g(v.size(), length);
  return Field(g, std::move(v));
}

void write_field_binary(const Field& f, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::out | std::ios::binary | std::ios::trunc);
  out.write(kMagic.data(), kMagic.size());
  put(out, kFieldDumpVersion);
  put(out, static_cast<std::uint64_t>(f.size()));
  put(out, f.grid.length());
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
}

Field read_field_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error("not a field dump: " + path.string());
  }
  const auto version = get<std::uint32_t>(in, path);
  if (version != kFieldDumpVersion) {
    throw Error("unsupported field dump version " + std::to_string(version));
  }
  const auto n = get<std::uint64_t>(in, path);
  const auto length = get<double>(in, path);
  Grid g(static_cast<std::size_t>(n), length);
  std::vector<double> v(g.size());
  if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)))) {
    throw Error("truncated field dump: " + path.string());
  }
  return Field(g, std::move(v));
}

}  // namespace nlt::io
