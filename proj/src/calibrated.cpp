#include "lzend/calibrated.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lzend {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double reflect_into_unit(double x) {
    while (x < 0.0 || x > 1.0) {
        if (x < 0.0) x = -x;
        if (x > 1.0) x = 2.0 - x;
    }
    if (x == 0.0) x = 0x1.0p-40;
    if (x == 1.0) x = 1.0 - 0x1.0p-40;
    return x;
}

} // namespace

std::vector<std::uint8_t> logistic_bits(const CalibratedSpec& spec) {
    if (spec.threshold < 0.0 || spec.threshold > 1.0 || spec.xi < 0.0) {
        throw std::invalid_argument("logistic_bits: bad calibration parameters");
    }
    std::mt19937_64 rng(spec.seed);
    double x = reflect_into_unit(uniform01(rng));
    const std::size_t bit_count = spec.n_bytes * 8;
    std::vector<std::uint8_t> bits(bit_count);
    const auto step = [&] {
        const double u = 2.0 * uniform01(rng) - 1.0;
        x = reflect_into_unit(kLogisticR * x * (1.0 - x) + spec.xi * u);
    };
    for (std::size_t k = 0; k < spec.burn_in; ++k) step();
    for (std::size_t k = 0; k < bit_count; ++k) {
        step();
        bits[k] = x >= spec.threshold ? 1 : 0;
    }
    return bits;
}

std::vector<std::uint8_t> fir_filter(const std::vector<std::uint8_t>& bits) {
    std::vector<std::uint8_t> out(bits.size());
    for (std::size_t n = 0; n < bits.size(); ++n) {
        int window = 0;
        for (std::size_t back = 1; back <= 5; ++back) {
            window += back <= n ? bits[n - back] : 1; // sentinel ones before the start
        }
        const double f = 0.5 * bits[n] + 0.1 * window;
        out[n] = f >= 0.4 ? 1 : 0;
    }
    return out;
}

ByteString pack_bits(const std::vector<std::uint8_t>& bits) {
    ByteString out((bits.size() + 7) / 8, '\0');
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k]) out[k / 8] |= static_cast<char>(0x80u >> (k % 8));
    }
    return out;
}

std::vector<std::uint8_t> unpack_bits(const ByteString& bytes, std::size_t bit_count) {
    std::vector<std::uint8_t> bits(bit_count);
    for (std::size_t k = 0; k < bit_count; ++k) {
        bits[k] = (static_cast<std::uint8_t>(bytes[k / 8]) >> (7 - k % 8)) & 1;
    }
    return bits;
}

std::vector<ByteString> gen_corpus(const CalibratedSpec& spec, std::size_t count) {
    std::vector<ByteString> corpus;
    corpus.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        CalibratedSpec s = spec;
        s.seed = spec.seed + k;
        auto bits = logistic_bits(s);
        if (s.fir) bits = fir_filter(bits);
        corpus.push_back(pack_bits(bits));
    }
    return corpus;
}

} // namespace lzend
