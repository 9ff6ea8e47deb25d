#pragma once

#include "qdnls/field.hpp"

#include <iosfwd>
#include <string>

namespace qdnls {

// Binary field snapshot:
//   magic "QDNLS1", int32 d, int32 K, int32 c, float64 L (all little-endian),
//   then c * (2K+1)^d (re, im) float64 pairs in canonical mode order.
//
// The stream overloads read/write exactly one snapshot record and leave the
// stream positioned after it; the path overloads additionally reject files
// with trailing bytes.
void write_snapshot(std::ostream& out, const SpectralField& f);
void write_snapshot(const std::string& path, const SpectralField& f);
SpectralField read_snapshot(std::istream& in);
SpectralField read_snapshot(const std::string& path);

} // namespace qdnls
