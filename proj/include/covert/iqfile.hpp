#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "covert/common.hpp"

namespace covert {

// Binary IQ capture format:
//   bytes 0..3   magic "CSRL"
//   bytes 4..5   format version (u16, little endian), currently 1
//   bytes 6..13  sample rate (f64, little endian)
//   bytes 14..21 sample count (u64, little endian)
//   then count * 8 bytes of interleaved f32 I, f32 Q
// Metadata (seed, key, pad, symbols, config) travels in a JSON sidecar next
// to the capture.
inline constexpr char kIqMagic[4] = {'C', 'S', 'R', 'L'};
inline constexpr std::uint16_t kIqVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "IQ file code assumes a little-endian host");

struct IqFile {
    double sample_rate = 0.0;
    cvec samples;
};

inline void write_iq(const std::string& path, double sample_rate, const cvec& samples) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInput("write_iq: cannot open " + path);
    f.write(kIqMagic, 4);
    const std::uint16_t ver = kIqVersion;
    f.write(reinterpret_cast<const char*>(&ver), sizeof(ver));
    f.write(reinterpret_cast<const char*>(&sample_rate), sizeof(sample_rate));
    const std::uint64_t count = samples.size();
    f.write(reinterpret_cast<const char*>(&count), sizeof(count));
    for (const auto& s : samples) {
        const float iq[2] = {static_cast<float>(s.real()), static_cast<float>(s.imag())};
        f.write(reinterpret_cast<const char*>(iq), sizeof(iq));
    }
    if (!f) throw InvalidInput("write_iq: write failed for " + path);
}

inline IqFile read_iq(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("read_iq: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, kIqMagic, 4) != 0)
        throw InvalidInput("read_iq: bad magic in " + path);
    std::uint16_t ver = 0;
    f.read(reinterpret_cast<char*>(&ver), sizeof(ver));
    if (!f || ver != kIqVersion) throw InvalidInput("read_iq: unsupported version");
    IqFile out;
    f.read(reinterpret_cast<char*>(&out.sample_rate), sizeof(out.sample_rate));
    std::uint64_t count = 0;
    f.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (!f) throw InvalidInput("read_iq: truncated header");
    out.samples.resize(count);
    for (auto& s : out.samples) {
        float iq[2];
        f.read(reinterpret_cast<char*>(iq), sizeof(iq));
        if (!f) throw InvalidInput("read_iq: truncated payload");
        s = {static_cast<double>(iq[0]), static_cast<double>(iq[1])};
    }
    return out;
}

}  // namespace covert
