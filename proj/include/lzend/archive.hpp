#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lzend {

// Raw byte data. Symbols are bytes 0..255; std::string is used as a byte buffer.
using ByteString = std::string;

// One LZ-End factor <q, l, s>.
//
// A phrase of length `length` ending with innovation `last` encodes
// `length - 1` symbols copied from the decompressed text ending exactly at the
// end position of phrase `source`, followed by `last`. When `last` is absent
// (allowed only for the final phrase of an archive) all `length` symbols are
// copied. A pure literal has no source and length 1.
struct Phrase {
    static constexpr std::uint32_t kNoSource = 0xFFFFFFFFu;
    static constexpr std::int16_t kNoLast = -1;

    std::uint32_t source = kNoSource;
    std::uint32_t length = 0;
    std::int16_t last = kNoLast; // 0..255 when present

    bool has_source() const { return source != kNoSource; }
    bool has_last() const { return last != kNoLast; }
    std::uint8_t last_byte() const { return static_cast<std::uint8_t>(last); }

    // Number of symbols taken from the source window.
    std::size_t copy_length() const { return length - (has_last() ? 1u : 0u); }

    static Phrase literal(std::uint8_t symbol) {
        Phrase p;
        p.length = 1;
        p.last = static_cast<std::int16_t>(symbol);
        return p;
    }

    // Canonical form: a length-1 phrase with an innovation never keeps a source.
    static Phrase copy(std::uint32_t src, std::uint32_t len, std::uint8_t symbol) {
        if (len == 1) return literal(symbol);
        Phrase p;
        p.source = src;
        p.length = len;
        p.last = static_cast<std::int16_t>(symbol);
        return p;
    }

    // Final phrase whose match consumed the rest of the text (no innovation).
    static Phrase final_copy(std::uint32_t src, std::uint32_t len) {
        Phrase p;
        p.source = src;
        p.length = len;
        return p;
    }

    friend bool operator==(const Phrase&, const Phrase&) = default;
};

// Sorted phrase-end positions (the sparse form of the phrase-end bit vector),
// answering rank/select by binary search.
class BoundaryIndex {
public:
    BoundaryIndex() = default;
    explicit BoundaryIndex(std::vector<std::size_t> ends);

    // Number of phrase ends strictly before position `pos`. For pos < n this is
    // the ordinal of the phrase containing symbol `pos`. Requires pos <= n.
    std::size_t rank(std::size_t pos) const;

    // Position of the last symbol encoded by phrase `ordinal`.
    std::size_t select(std::size_t ordinal) const;

    std::size_t phrase_count() const { return ends_.size(); }
    std::size_t text_length() const { return ends_.empty() ? 0 : ends_.back() + 1; }
    const std::vector<std::size_t>& ends() const { return ends_; }

    friend bool operator==(const BoundaryIndex&, const BoundaryIndex&) = default;

private:
    std::vector<std::size_t> ends_;
};

// A parsed text: the phrase list plus the derived boundary index.
// Value-like and immutable after construction; safe to share across threads.
class Archive {
public:
    Archive() = default;

    // Builds the boundary index and checks every representation invariant.
    // Throws corruption_error on violation. Length-1 phrases carrying both a
    // source and an innovation are normalized to pure literals.
    static Archive from_phrases(std::vector<Phrase> phrases);

    const std::vector<Phrase>& phrases() const { return phrases_; }
    const BoundaryIndex& boundaries() const { return boundaries_; }
    std::size_t phrase_count() const { return phrases_.size(); }
    std::size_t text_length() const { return boundaries_.text_length(); }

    friend bool operator==(const Archive& a, const Archive& b) {
        return a.phrases_ == b.phrases_;
    }

private:
    std::vector<Phrase> phrases_;
    BoundaryIndex boundaries_;
};

} // namespace lzend
