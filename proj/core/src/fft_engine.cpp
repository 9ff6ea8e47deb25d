#include "qdnls/fft_engine.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qdnls::fft {

namespace {

struct PlanKey {
    std::vector<int> dims;
    int sign;
    bool operator<(const PlanKey& o) const {
        if (sign != o.sign) return sign < o.sign;
        return dims < o.dims;
    }
};

struct PlanEntry {
    fftw_plan plan = nullptr;
    fftw_complex* buffer = nullptr;
    std::size_t size = 0;
    ~PlanEntry() {
        if (plan) fftw_destroy_plan(plan);
        if (buffer) fftw_free(buffer);
    }
};

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<PlanKey, PlanEntry>& cache() {
    static std::map<PlanKey, PlanEntry> c;
    return c;
}

PlanEntry& plan_for(const std::vector<int>& dims, int sign) {
    PlanKey key{dims, sign};
    auto& c = cache();
    auto it = c.find(key);
    if (it != c.end()) return it->second;

    std::size_t total = 1;
    for (int n : dims) {
        if (n < 1) throw std::invalid_argument("fft dimension must be positive");
        total *= static_cast<std::size_t>(n);
    }
    PlanEntry& entry = c[std::move(key)];
    entry.size = total;
    entry.buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    if (!entry.buffer) throw std::bad_alloc();
    entry.plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), entry.buffer, entry.buffer,
                               sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!entry.plan) throw std::runtime_error("fftw plan creation failed");
    return entry;
}

} // namespace

void transform(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign) {
    std::size_t total = 1;
    for (int n : dims) total *= static_cast<std::size_t>(n);
    if (data.size() != total) throw std::invalid_argument("fft data size does not match dims");

    std::lock_guard<std::mutex> lock(cache_mutex());
    PlanEntry& entry = plan_for(dims, sign);
    std::memcpy(entry.buffer, data.data(), sizeof(fftw_complex) * total);
    fftw_execute(entry.plan);
    std::memcpy(data.data(), entry.buffer, sizeof(fftw_complex) * total);
}

void transform_1d(std::complex<double>* data, int n, int sign) {
    std::lock_guard<std::mutex> lock(cache_mutex());
    PlanEntry& entry = plan_for({n}, sign);
    std::memcpy(entry.buffer, data, sizeof(fftw_complex) * static_cast<std::size_t>(n));
    fftw_execute(entry.plan);
    std::memcpy(data, entry.buffer, sizeof(fftw_complex) * static_cast<std::size_t>(n));
}

} // namespace qdnls::fft
