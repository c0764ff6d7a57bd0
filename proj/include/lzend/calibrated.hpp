#pragma once

#include <cstdint>
#include <vector>

#include "lzend/archive.hpp"

namespace lzend {

// Parameters of one calibrated-entropy source: a noisy logistic-map orbit
// bipartitioned at `threshold`, optionally smoothed by the five-tap FIR
// filter. Deterministic for a fixed seed.
struct CalibratedSpec {
    std::size_t n_bytes = 0;
    double xi = 0.0;        // noise amplitude, >= 0
    double threshold = 0.5; // bipartition c in [0, 1]
    bool fir = false;
    std::uint64_t seed = 0;
    std::size_t burn_in = 1000;
};

// The logistic-map multiplier. The map runs at the period-doubling
// accumulation point, where the noise amplitude sets how far the orbit is
// smeared across the band cascade, so the bit entropy rate rises smoothly
// and monotonically with xi over the whole 1e-4..2.5e-2 range. (At the
// fully chaotic r = 4 the c = 0.5 bit stream is already incompressible for
// every xi and no trend survives.)
inline constexpr double kLogisticR = 3.5699;

// 8 * n_bytes bits (one 0/1 per element): iterate
// x <- r*x*(1-x) + xi*u, u uniform in [-1, 1], reflecting back into (0, 1),
// discard burn_in iterations, then emit bit = (x >= threshold).
std::vector<std::uint8_t> logistic_bits(const CalibratedSpec& spec);

// F_n = 0.5*S_n + 0.1*(S_{n-1} + ... + S_{n-5}) with S_{-1..-5} = 1;
// output bit = (F_n >= 0.4). Length preserving; every input 1 stays 1.
std::vector<std::uint8_t> fir_filter(const std::vector<std::uint8_t>& bits);

// Bits packed most-significant-bit first.
ByteString pack_bits(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> unpack_bits(const ByteString& bytes, std::size_t bit_count);

// `count` independent strings of spec.n_bytes bytes; string k uses seed + k.
std::vector<ByteString> gen_corpus(const CalibratedSpec& spec, std::size_t count);

} // namespace lzend
