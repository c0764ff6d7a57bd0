#pragma once

#include <string_view>

#include "lzend/archive.hpp"

namespace lzend {

// Greedy LZ-End factorization. At each position the longest prefix of the
// remainder that equals a suffix of the already-parsed text ending exactly at
// a prior phrase boundary is taken, ties broken by the smallest source
// ordinal, and extended by one innovation symbol. A match that consumes the
// remainder yields a final phrase with no innovation. Deterministic;
// decompress(parse(t)) == t for every byte string.
Archive parse(std::string_view text);

// Same contract and identical output as parse(), via a plain scan over all
// candidate window starts. Quadratic; usable as the normative reference on
// small inputs.
Archive reference_parse(std::string_view text);

// Parse variant for phrase lists that will be spliced in front of other
// phrases: the final match is capped one symbol short of the remainder so
// every phrase carries an innovation.
Archive parse_embedded(std::string_view text);

// Left-to-right materialization of every phrase.
ByteString decompress(const Archive& a);

// Substring [start, start+count) of decompress(a), resolved by following
// source windows; only symbols on the resolution chain are touched.
// Throws std::out_of_range if the range does not fit.
ByteString extract(const Archive& a, std::size_t start, std::size_t count);

} // namespace lzend
