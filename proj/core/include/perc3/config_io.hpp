#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "perc3/lattice.hpp"

namespace perc3 {

/// Malformed or truncated `.perc` data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `.perc` layout: "PERC3", version byte 0x01, u32 n, u64 seed, f64 p (all
/// little-endian), then ceil((2n+1)^3 / 8) bytes of site bits in index order,
/// bit i in byte i/8 at position i%8 (set = open).
void write_configuration(std::ostream& out, const Configuration& config);
Configuration read_configuration(std::istream& in);

/// File wrappers; I/O failures throw std::system_error, bad content FormatError.
void save_configuration(const std::string& path, const Configuration& config);
Configuration load_configuration(const std::string& path);

}  // namespace perc3
