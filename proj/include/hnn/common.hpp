#ifndef HNN_COMMON_HPP
#define HNN_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace hnn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Logging goes to stderr only; stdout is reserved for data.
void log_warn(const std::string& msg);
void log_info(const std::string& msg);

// Deterministic RNG. Distributions are implemented on top of the raw
// mt19937_64 stream so that a given seed produces the same values on
// every platform and standard library.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // standard normal via Box-Muller, two raw draws per value
    double normal();

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi);

    uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

// FNV-1a, used for dataset/diagram fingerprints in manifests and checkpoints.
uint64_t fnv1a(const void* data, size_t n, uint64_t h = 14695981039346656037ull);
uint64_t fnv1a_str(const std::string& s, uint64_t h = 14695981039346656037ull);
uint64_t hash_file(const std::string& path);
std::string hex64(uint64_t v);

} // namespace hnn

#endif
