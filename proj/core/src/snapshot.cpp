#include "qdnls/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace qdnls {

namespace {

constexpr char kMagic[6] = {'Q', 'D', 'N', 'L', 'S', '1'};

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

void write_raw(std::ostream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_raw(std::istream& in, void* p, std::size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw std::runtime_error("snapshot record truncated");
}

} // namespace

void write_snapshot(std::ostream& out, const SpectralField& f) {
    write_raw(out, kMagic, sizeof(kMagic));
    const std::int32_t d = f.lattice().dimension();
    const std::int32_t K = f.lattice().cutoff();
    const std::int32_t c = f.components();
    const double L = f.lattice().period_scale();
    write_raw(out, &d, sizeof(d));
    write_raw(out, &K, sizeof(K));
    write_raw(out, &c, sizeof(c));
    write_raw(out, &L, sizeof(L));

    for (const Complex& z : f.coefficients()) {
        const double re = z.real(), im = z.imag();
        write_raw(out, &re, sizeof(re));
        write_raw(out, &im, sizeof(im));
    }
    if (!out) throw std::runtime_error("snapshot write failed");
}

void write_snapshot(const std::string& path, const SpectralField& f) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open snapshot file for writing: " + path);
    write_snapshot(out, f);
    if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

SpectralField read_snapshot(std::istream& in) {
    char magic[6];
    read_raw(in, magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a field snapshot (bad magic)");

    std::int32_t d = 0, K = 0, c = 0;
    double L = 0.0;
    read_raw(in, &d, sizeof(d));
    read_raw(in, &K, sizeof(K));
    read_raw(in, &c, sizeof(c));
    read_raw(in, &L, sizeof(L));

    FrequencyLattice lattice(d, K, L);
    SpectralField f(lattice, c);
    for (Complex& z : f.coefficients()) {
        double re = 0.0, im = 0.0;
        read_raw(in, &re, sizeof(re));
        read_raw(in, &im, sizeof(im));
        z = Complex(re, im);
    }
    return f;
}

SpectralField read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot file: " + path);
    SpectralField f = read_snapshot(in);
    char extra = 0;
    if (in.read(&extra, 1); in.gcount() != 0)
        throw std::runtime_error("snapshot file has trailing bytes: " + path);
    return f;
}

} // namespace qdnls
