#include "hnn/common.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace hnn {

void log_warn(const std::string& msg) {
    std::fprintf(stderr, "[warn] %s\n", msg.c_str());
}

void log_info(const std::string& msg) {
    std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

double Rng::normal() {
    // rejection-free Box-Muller; u1 nudged away from 0
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw Error("uniform_int: empty range");
    uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    // modulo bias is < 2^-50 for the ranges used here (shuffles, seeds)
    return lo + static_cast<int>(gen_() % span);
}

uint64_t fnv1a(const void* data, size_t n, uint64_t h) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t fnv1a_str(const std::string& s, uint64_t h) {
    return fnv1a(s.data(), s.size(), h);
}

uint64_t hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file for hashing: " + path);
    uint64_t h = 14695981039346656037ull;
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        h = fnv1a(buf.data(), static_cast<size_t>(in.gcount()), h);
    }
    return h;
}

std::string hex64(uint64_t v) {
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(v));
    return std::string(out);
}

} // namespace hnn
