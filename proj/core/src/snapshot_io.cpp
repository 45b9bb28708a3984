#include "gpsplit/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "gpsplit/errors.hpp"
#include "json.hpp"

namespace gpsplit {

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix) {
  return std::filesystem::path(stem.string() + suffix);
}

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(bits);
  return bits;
}

}  // namespace

void write_snapshot(const std::filesystem::path& stem, const Field& f, double t) {
  const Grid& grid = f.grid();
  nlohmann::ordered_json header;
  header["dim"] = grid.dim();
  header["N"] = grid.points();
  header["L"] = grid.half_width();
  header["bc"] = std::string(to_string(grid.bc()));
  header["dtype"] = "c128";
  header["order"] = "row-major";
  header["t"] = t;

  const auto json_path = with_suffix(stem, ".json");
  std::ofstream js(json_path);
  if (!js) throw std::runtime_error("cannot open " + json_path.string() + " for writing");
  js << header.dump(2) << '\n';

  const auto bin_path = with_suffix(stem, ".bin");
  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + bin_path.string() + " for writing");
  std::vector<std::uint64_t> words;
  words.reserve(2 * f.size());
  for (auto z : f.values()) {
    words.push_back(to_little_endian(std::bit_cast<std::uint64_t>(z.real())));
    words.push_back(to_little_endian(std::bit_cast<std::uint64_t>(z.imag())));
  }
  bin.write(reinterpret_cast<const char*>(words.data()),
            static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)));
  if (!bin) throw std::runtime_error("failed writing " + bin_path.string());
}

LoadedSnapshot read_snapshot(const std::filesystem::path& stem) {
  const auto json_path = with_suffix(stem, ".json");
  std::ifstream js(json_path);
  if (!js) throw std::runtime_error("cannot open " + json_path.string());
  nlohmann::json header;
  try {
    js >> header;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(json_path.string() + ": " + e.what());
  }
  if (header.value("dtype", "") != "c128" || header.value("order", "") != "row-major")
    throw ValidationError(json_path.string() + ": unsupported dtype or order");
  const Grid grid(header.at("dim").get<int>(), header.at("L").get<double>(), header.at("N").get<int>(),
                  boundary_kind_from_string(header.at("bc").get<std::string>()));

  const auto bin_path = with_suffix(stem, ".bin");
  std::ifstream bin(bin_path, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + bin_path.string());
  std::vector<std::uint64_t> words(2 * grid.size());
  bin.read(reinterpret_cast<char*>(words.data()),
           static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)));
  if (bin.gcount() != static_cast<std::streamsize>(words.size() * sizeof(std::uint64_t)))
    throw ValidationError(bin_path.string() + ": truncated field data");
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = {std::bit_cast<double>(to_little_endian(words[2 * i])),
                 std::bit_cast<double>(to_little_endian(words[2 * i + 1]))};
  }
  return {Field(grid, std::move(values)), header.value("t", 0.0)};
}

}  // namespace gpsplit
