#include "perc3/config_io.hpp"

#include <array>
#include <bit>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>
#include <vector>

namespace perc3 {

namespace {

constexpr std::array<char, 5> kMagic{'P', 'E', 'R', 'C', '3'};
constexpr std::uint8_t kVersion = 0x01;

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::uint64_t bits = 0;
  if constexpr (sizeof(T) == 8) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) throw FormatError("truncated .perc header");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= std::uint64_t{bytes[i]} << (8 * i);
  if constexpr (sizeof(T) == 8) {
    return std::bit_cast<T>(bits);
  } else {
    return static_cast<T>(bits);
  }
}

}  // namespace

void write_configuration(std::ostream& out, const Configuration& config) {
  out.write(kMagic.data(), kMagic.size());
  out.put(static_cast<char>(kVersion));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(config.n()));
  put_le<std::uint64_t>(out, config.seed());
  put_le<double>(out, config.p());
  const std::size_t nbytes = (config.size() + 7) / 8;
  std::vector<char> bytes(nbytes);
  const auto words = config.words();
  for (std::size_t b = 0; b < nbytes; ++b) bytes[b] = static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFF);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Configuration read_configuration(std::istream& in) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw FormatError("not a .perc file (bad magic)");
  const int version = in.get();
  if (version != kVersion) throw FormatError("unsupported .perc version " + std::to_string(version));
  const auto n = get_le<std::uint32_t>(in);
  const auto seed = get_le<std::uint64_t>(in);
  const auto p = get_le<double>(in);
  if (n > 4096) throw FormatError("implausible half-side " + std::to_string(n));
  const std::size_t side = 2 * std::size_t{n} + 1;
  const std::size_t size = side * side * side;
  const std::size_t nbytes = (size + 7) / 8;
  std::vector<unsigned char> bytes(nbytes);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(nbytes)))
    throw FormatError("truncated .perc bit array");
  if (size % 8 != 0 && (bytes.back() >> (size % 8)) != 0) throw FormatError("non-zero padding bits");
  std::vector<std::uint64_t> words((size + 63) / 64, 0);
  for (std::size_t b = 0; b < nbytes; ++b) words[b / 8] |= std::uint64_t{bytes[b]} << (8 * (b % 8));
  try {
    return Configuration(static_cast<int>(n), p, seed, std::move(words));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

void save_configuration(const std::string& path, const Configuration& config) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + path + " for writing");
  write_configuration(out, config);
  out.flush();
  if (!out) throw std::system_error(errno, std::generic_category(), "write failed for " + path);
}

Configuration load_configuration(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
  return read_configuration(in);
}

}  // namespace perc3
