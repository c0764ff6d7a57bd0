#pragma once

#include <string_view>

#include "lzend/archive.hpp"

namespace lzend {

// Container layout, all integers unsigned LEB128 varints:
//
//   "LZE1"  magic
//   0x01    version
//   flags   bit 0 set iff the final phrase carries an innovation
//   varint  n   (total symbol count)
//   varint  n'  (phrase count)
//   per phrase: varint source+1 (0 = absent), varint length,
//               one raw innovation byte (omitted for the final phrase when
//               flags bit 0 is clear)
//
// Boundaries are not stored; they are rebuilt from the lengths.
ByteString serialize(const Archive& a);

// Exact inverse of serialize(). Throws format_error on bad magic/version or
// trailing bytes, corruption_error (with the byte offset) on truncation,
// overlong or overflowing varints, and any archive invariant violation.
Archive deserialize(std::string_view bytes);

// Byte length of serialize(a); the size measure used for every modification
// ratio.
std::size_t compressed_size(const Archive& a);

} // namespace lzend
