#include "lzend/io.hpp"

#include <cstdint>
#include <utility>

#include "lzend/errors.hpp"

namespace lzend {

namespace {

constexpr char kMagic[4] = {0x4C, 0x5A, 0x45, 0x31}; // "LZE1"
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kFlagFinalInnovation = 0x01;

void put_varint(ByteString& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>(0x80 | (v & 0x7F)));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }
    bool exhausted() const { return pos_ == bytes_.size(); }

    std::uint8_t byte() {
        if (pos_ >= bytes_.size()) {
            throw corruption_error("truncated archive at byte " + std::to_string(pos_));
        }
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }

    std::uint64_t varint() {
        const std::size_t at = pos_;
        std::uint64_t v = 0;
        int shift = 0;
        while (true) {
            const std::uint8_t b = byte();
            if (shift == 63 && (b & 0x7E)) {
                throw corruption_error("varint overflow at byte " + std::to_string(at));
            }
            v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
            if (!(b & 0x80)) {
                if (b == 0 && shift != 0) {
                    throw corruption_error("overlong varint at byte " + std::to_string(at));
                }
                return v;
            }
            shift += 7;
            if (shift > 63) {
                throw corruption_error("varint overflow at byte " + std::to_string(at));
            }
        }
    }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

} // namespace

ByteString serialize(const Archive& a) {
    ByteString out;
    out.reserve(8 + a.phrase_count() * 4);
    out.append(kMagic, 4);
    out.push_back(static_cast<char>(kVersion));
    const bool final_innovation = !a.phrases().empty() && a.phrases().back().has_last();
    out.push_back(static_cast<char>(final_innovation ? kFlagFinalInnovation : 0));
    put_varint(out, a.text_length());
    put_varint(out, a.phrase_count());
    for (std::size_t k = 0; k < a.phrase_count(); ++k) {
        const Phrase& p = a.phrases()[k];
        put_varint(out, p.has_source() ? std::uint64_t{p.source} + 1 : 0);
        put_varint(out, p.length);
        if (p.has_last()) out.push_back(static_cast<char>(p.last_byte()));
    }
    return out;
}

Archive deserialize(std::string_view bytes) {
    Reader r(bytes);
    for (char m : kMagic) {
        if (r.offset() >= bytes.size() || bytes[r.offset()] != m) {
            throw format_error("bad magic at byte " + std::to_string(r.offset()));
        }
        r.byte();
    }
    const std::uint8_t version = r.byte();
    if (version != kVersion) {
        throw format_error("unsupported version " + std::to_string(version));
    }
    const std::uint8_t flags = r.byte();
    if (flags & ~kFlagFinalInnovation) {
        throw format_error("unknown flag bits at byte " + std::to_string(r.offset() - 1));
    }
    const std::uint64_t n = r.varint();
    const std::uint64_t phrase_count = r.varint();
    if (phrase_count > n || n > (std::uint64_t{1} << 40)) {
        throw corruption_error("implausible header counts at byte " +
                               std::to_string(r.offset()));
    }
    std::vector<Phrase> phrases;
    phrases.reserve(phrase_count);
    std::uint64_t total = 0;
    for (std::uint64_t k = 0; k < phrase_count; ++k) {
        const std::size_t at = r.offset();
        const std::uint64_t source_plus1 = r.varint();
        const std::uint64_t length = r.varint();
        if (length == 0 || length > n) {
            throw corruption_error("bad phrase length at byte " + std::to_string(at));
        }
        if (source_plus1 > k) {
            throw corruption_error("forward back-reference at byte " + std::to_string(at));
        }
        Phrase p;
        p.length = static_cast<std::uint32_t>(length);
        if (source_plus1 != 0) p.source = static_cast<std::uint32_t>(source_plus1 - 1);
        const bool want_last = (k + 1 < phrase_count) || (flags & kFlagFinalInnovation);
        if (want_last) p.last = static_cast<std::int16_t>(r.byte());
        phrases.push_back(p);
        total += length;
    }
    if (!r.exhausted()) {
        throw format_error("trailing bytes at byte " + std::to_string(r.offset()));
    }
    if (total != n) {
        throw corruption_error("phrase lengths sum to " + std::to_string(total) +
                               ", header says " + std::to_string(n));
    }
    return Archive::from_phrases(std::move(phrases));
}

std::size_t compressed_size(const Archive& a) { return serialize(a).size(); }

} // namespace lzend
