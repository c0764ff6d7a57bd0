#include "lzend/codec.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lzend/errors.hpp"

namespace lzend {

namespace {

constexpr std::uint32_t kNil = 0;

std::uint32_t load32(const unsigned char* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}

// ---------------------------------------------------------------------------
// Exact longest-common-prefix oracle between two suffixes of the input.
//
// For large inputs a suffix array (radix doubling), its inverse, the Kasai
// LCP array and a blocked range-minimum structure give O(1)-ish queries,
// which keeps highly repetitive inputs (long hash chains, long matches)
// out of quadratic territory. Small inputs just compare bytes.
// ---------------------------------------------------------------------------
class LcpOracle {
public:
    LcpOracle(std::string_view text, bool build_index) : text_(text) {
        if (build_index && text.size() >= 2) build(text);
    }

    std::size_t lcp(std::size_t a, std::size_t b) const {
        const std::size_t n = text_.size();
        if (a == b) return n - a;
        if (!built_) {
            const std::size_t cap = n - std::max(a, b);
            std::size_t l = 0;
            while (l < cap && text_[a + l] == text_[b + l]) ++l;
            return l;
        }
        std::size_t ra = isa_[a], rb = isa_[b];
        if (ra > rb) std::swap(ra, rb);
        return range_min(ra + 1, rb);
    }

private:
    static constexpr std::size_t kBlock = 32;

    void build(std::string_view s) {
        const std::size_t n = s.size();
        std::vector<std::int32_t> sa(n), rnk(n), tmp(n);
        {
            // radix doubling over (rank[i], rank[i+k]) with counting sorts
            std::vector<std::int32_t> cnt;
            for (std::size_t i = 0; i < n; ++i) {
                sa[i] = static_cast<std::int32_t>(i);
                rnk[i] = static_cast<unsigned char>(s[i]);
            }
            std::vector<std::int32_t> order(n);
            for (std::size_t k = 1;; k <<= 1) {
                const std::int32_t classes = 1 + *std::max_element(rnk.begin(), rnk.end());
                // sort by second key
                cnt.assign(static_cast<std::size_t>(classes) + 1, 0);
                for (std::size_t i = 0; i < n; ++i) {
                    const std::int32_t key = (i + k < n) ? rnk[i + k] + 1 : 0;
                    ++cnt[key];
                }
                for (std::size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
                for (std::size_t i = n; i-- > 0;) {
                    const std::int32_t key = (i + k < n) ? rnk[i + k] + 1 : 0;
                    order[--cnt[key]] = static_cast<std::int32_t>(i);
                }
                // stable sort by first key
                cnt.assign(static_cast<std::size_t>(classes) + 1, 0);
                for (std::size_t i = 0; i < n; ++i) ++cnt[rnk[i]];
                for (std::size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
                for (std::size_t i = n; i-- > 0;) {
                    const std::int32_t j = order[i];
                    sa[--cnt[rnk[j]]] = j;
                }
                // recompute ranks
                tmp[sa[0]] = 0;
                bool all_distinct = true;
                for (std::size_t i = 1; i < n; ++i) {
                    const std::size_t x = static_cast<std::size_t>(sa[i - 1]);
                    const std::size_t y = static_cast<std::size_t>(sa[i]);
                    const std::int32_t x2 = (x + k < n) ? rnk[x + k] : -1;
                    const std::int32_t y2 = (y + k < n) ? rnk[y + k] : -1;
                    const bool same = rnk[x] == rnk[y] && x2 == y2;
                    tmp[y] = tmp[x] + (same ? 0 : 1);
                    all_distinct &= !same;
                }
                rnk.swap(tmp);
                if (all_distinct || rnk[sa[n - 1]] == static_cast<std::int32_t>(n) - 1 || k >= n) break;
            }
        }
        isa_.resize(n);
        for (std::size_t i = 0; i < n; ++i) isa_[sa[i]] = static_cast<std::uint32_t>(i);
        // Kasai
        lcp_.assign(n, 0);
        std::size_t h = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (isa_[i] == 0) {
                h = 0;
                continue;
            }
            const std::size_t j = static_cast<std::size_t>(sa[isa_[i] - 1]);
            while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
            lcp_[isa_[i]] = static_cast<std::uint32_t>(h);
            if (h > 0) --h;
        }
        // blocked RMQ: per-block minima plus a sparse table over blocks
        const std::size_t blocks = (n + kBlock - 1) / kBlock;
        block_min_.assign(blocks, std::numeric_limits<std::uint32_t>::max());
        for (std::size_t i = 0; i < n; ++i) {
            block_min_[i / kBlock] = std::min(block_min_[i / kBlock], lcp_[i]);
        }
        levels_ = 1;
        while ((std::size_t{1} << levels_) <= blocks) ++levels_;
        sparse_.assign(levels_, block_min_);
        for (std::size_t lv = 1; lv < levels_; ++lv) {
            const std::size_t span = std::size_t{1} << lv;
            for (std::size_t b = 0; b + span <= blocks; ++b) {
                sparse_[lv][b] = std::min(sparse_[lv - 1][b], sparse_[lv - 1][b + span / 2]);
            }
        }
        built_ = true;
    }

    // min of lcp_[lo..hi], inclusive, lo <= hi
    std::size_t range_min(std::size_t lo, std::size_t hi) const {
        const std::size_t blo = lo / kBlock, bhi = hi / kBlock;
        std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
        if (blo == bhi) {
            for (std::size_t i = lo; i <= hi; ++i) m = std::min(m, lcp_[i]);
            return m;
        }
        for (std::size_t i = lo; i < (blo + 1) * kBlock; ++i) m = std::min(m, lcp_[i]);
        for (std::size_t i = bhi * kBlock; i <= hi; ++i) m = std::min(m, lcp_[i]);
        if (blo + 1 <= bhi - 1) {
            const std::size_t a = blo + 1, b = bhi - 1;
            std::size_t lv = 0;
            while ((std::size_t{2} << lv) <= b - a + 1) ++lv;
            m = std::min(m, std::min(sparse_[lv][a], sparse_[lv][b + 1 - (std::size_t{1} << lv)]));
        }
        return m;
    }

    std::string_view text_;
    bool built_ = false;
    std::vector<std::uint32_t> isa_;
    std::vector<std::uint32_t> lcp_;
    std::vector<std::uint32_t> block_min_;
    std::vector<std::vector<std::uint32_t>> sparse_;
    std::size_t levels_ = 0;
};

struct Candidate {
    std::size_t match_len = 0;           // symbols matched before the innovation
    std::size_t ordinal = Phrase::kNoSource; // phrase whose end the window hits
};

// Shared emission loop; `finder` returns the best (match_len, ordinal) at a
// position given the boundaries so far, `on_boundary` sees each new phrase end.
template <typename Finder, typename BoundaryHook>
Archive run_parse(std::string_view text, Finder&& finder, BoundaryHook&& on_boundary) {
    const std::size_t n = text.size();
    std::vector<Phrase> phrases;
    std::vector<std::size_t> ends;
    std::size_t i = 0;
    while (i < n) {
        const Candidate c = finder(i, ends);
        std::size_t advance;
        if (c.match_len == 0) {
            phrases.push_back(Phrase::literal(static_cast<std::uint8_t>(text[i])));
            advance = 1;
        } else if (i + c.match_len < n) {
            phrases.push_back(Phrase::copy(static_cast<std::uint32_t>(c.ordinal),
                                           static_cast<std::uint32_t>(c.match_len + 1),
                                           static_cast<std::uint8_t>(text[i + c.match_len])));
            advance = c.match_len + 1;
        } else {
            phrases.push_back(Phrase::final_copy(static_cast<std::uint32_t>(c.ordinal),
                                                 static_cast<std::uint32_t>(c.match_len)));
            advance = c.match_len;
        }
        on_boundary(i + advance - 1, ends.size());
        ends.push_back(i + advance - 1);
        i += advance;
    }
    return Archive::from_phrases(std::move(phrases));
}

// Candidate window starts indexed by their leading 4-gram; boundary-ending
// 1/2/3-grams tracked separately so short matches keep the exact smallest
// qualifying ordinal.
class Matcher {
public:
    explicit Matcher(std::string_view text)
        : text_(text),
          data_(reinterpret_cast<const unsigned char*>(text.data())),
          oracle_(text, text.size() >= 4096) {
        const std::size_t n = text.size();
        hash_bits_ = 10;
        while (hash_bits_ < 17 && (std::size_t{1} << hash_bits_) < n) ++hash_bits_;
        head_.assign(std::size_t{1} << hash_bits_, kNil);
        chain_.assign(n >= 4 ? n - 3 : 0, kNil);
        g1_.assign(256, kNil);
        if (n >= 2) g2_.assign(65536, kNil);
    }

    // `cap` bounds the match length (the embedded mode reserves one symbol
    // for the innovation).
    Candidate best(std::size_t i, const std::vector<std::size_t>& ends, std::size_t cap) {
        insert_up_to(i);
        Candidate best{};
        if (cap >= 4) {
            const std::uint32_t gram = load32(data_ + i);
            for (std::uint32_t link = head_[hash(gram)]; link != kNil; link = chain_[link - 1]) {
                const std::size_t k = link - 1;
                if (load32(data_ + k) != gram) continue;
                if (best.match_len > 0 &&
                    data_[k + best.match_len - 1] != data_[i + best.match_len - 1]) {
                    continue; // cannot reach the current best length
                }
                const std::size_t l = std::min(oracle_.lcp(k, i), cap);
                if (l == 0) continue;
                auto it = std::upper_bound(ends.begin(), ends.end(), k + l - 1);
                if (it == ends.begin()) continue;
                const std::size_t ord = static_cast<std::size_t>(it - ends.begin()) - 1;
                const std::size_t e = ends[ord];
                if (e < k) continue;
                const std::size_t m = e - k + 1;
                if (m > best.match_len || (m == best.match_len && ord < best.ordinal)) {
                    best.match_len = m;
                    best.ordinal = ord;
                }
            }
        }
        if (best.match_len <= 3) {
            best = short_match(i, cap);
        }
        return best;
    }

    void on_boundary(std::size_t e, std::size_t ordinal) {
        const std::uint32_t tag = static_cast<std::uint32_t>(ordinal) + 1;
        if (g1_[data_[e]] == kNil) g1_[data_[e]] = tag;
        if (e >= 1) {
            const std::uint32_t key = (std::uint32_t{data_[e - 1]} << 8) | data_[e];
            if (g2_[key] == kNil) g2_[key] = tag;
        }
        if (e >= 2) {
            const std::uint32_t key =
                (std::uint32_t{data_[e - 2]} << 16) | (std::uint32_t{data_[e - 1]} << 8) | data_[e];
            g3_.emplace(key, tag); // keeps the first (= smallest) ordinal
        }
    }

private:
    std::size_t hash(std::uint32_t gram) const {
        return (gram * 2654435761u) >> (32 - hash_bits_);
    }

    void insert_up_to(std::size_t i) {
        while (inserted_ + 4 <= i) {
            const std::size_t h = hash(load32(data_ + inserted_));
            chain_[inserted_] = head_[h];
            head_[h] = static_cast<std::uint32_t>(inserted_) + 1;
            ++inserted_;
        }
    }

    // Longest boundary-ending match of length <= 3, smallest ordinal first.
    Candidate short_match(std::size_t i, std::size_t cap) const {
        if (cap >= 3) {
            const std::uint32_t key =
                (std::uint32_t{data_[i]} << 16) | (std::uint32_t{data_[i + 1]} << 8) | data_[i + 2];
            auto it = g3_.find(key);
            if (it != g3_.end()) return {3, it->second - 1};
        }
        if (cap >= 2) {
            const std::uint32_t key = (std::uint32_t{data_[i]} << 8) | data_[i + 1];
            if (g2_[key] != kNil) return {2, g2_[key] - 1};
        }
        if (cap >= 1 && g1_[data_[i]] != kNil) return {1, g1_[data_[i]] - 1};
        return {};
    }

    std::string_view text_;
    const unsigned char* data_;
    LcpOracle oracle_;
    std::size_t hash_bits_;
    std::size_t inserted_ = 0;
    std::vector<std::uint32_t> head_;
    std::vector<std::uint32_t> chain_;
    std::vector<std::uint32_t> g1_;
    std::vector<std::uint32_t> g2_;
    std::unordered_map<std::uint32_t, std::uint32_t> g3_;
};

} // namespace

namespace {

Archive parse_impl(std::string_view text, bool innovate_all) {
    Matcher matcher(text);
    return run_parse(
        text,
        [&, n = text.size()](std::size_t i, const std::vector<std::size_t>& ends) {
            const std::size_t cap = n - i - (innovate_all ? 1 : 0);
            return matcher.best(i, ends, cap);
        },
        [&](std::size_t e, std::size_t ordinal) { matcher.on_boundary(e, ordinal); });
}

} // namespace

Archive parse(std::string_view text) { return parse_impl(text, false); }

Archive parse_embedded(std::string_view text) { return parse_impl(text, true); }

Archive reference_parse(std::string_view text) {
    const auto* data = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t n = text.size();
    auto no_hook = [](std::size_t, std::size_t) {};
    auto finder = [&](std::size_t i, const std::vector<std::size_t>& ends) {
        Candidate best{};
        for (std::size_t k = 0; k < i; ++k) {
            if (best.match_len > 0 &&
                data[k + best.match_len - 1] != data[i + best.match_len - 1]) {
                continue;
            }
            const std::size_t cap = n - i;
            std::size_t l = 0;
            while (l < cap && data[k + l] == data[i + l]) ++l;
            if (l == 0) continue;
            auto it = std::upper_bound(ends.begin(), ends.end(), k + l - 1);
            if (it == ends.begin()) continue;
            const std::size_t ord = static_cast<std::size_t>(it - ends.begin()) - 1;
            const std::size_t e = ends[ord];
            if (e < k) continue;
            const std::size_t m = e - k + 1;
            if (m > best.match_len || (m == best.match_len && ord < best.ordinal)) {
                best.match_len = m;
                best.ordinal = ord;
            }
        }
        return best;
    };
    return run_parse(text, finder, no_hook);
}

ByteString decompress(const Archive& a) {
    const auto& boundaries = a.boundaries();
    ByteString out;
    out.reserve(a.text_length());
    for (std::size_t k = 0; k < a.phrase_count(); ++k) {
        const Phrase& p = a.phrases()[k];
        if (p.has_source()) {
            const std::size_t copy_len = p.copy_length();
            const std::size_t src_end = boundaries.select(p.source);
            if (copy_len > src_end + 1 || src_end >= out.size()) {
                throw corruption_error("phrase " + std::to_string(k) +
                                       " has a source window outside the decoded text");
            }
            out.append(out, src_end + 1 - copy_len, copy_len);
        }
        if (p.has_last()) out.push_back(static_cast<char>(p.last_byte()));
    }
    return out;
}

ByteString extract(const Archive& a, std::size_t start, std::size_t count) {
    const std::size_t n = a.text_length();
    if (start > n || count > n - start) {
        throw std::out_of_range("extract: range [" + std::to_string(start) + ", +" +
                                std::to_string(count) + ") outside text of length " +
                                std::to_string(n));
    }
    ByteString out;
    out.reserve(count);
    if (count == 0) return out;

    const auto& boundaries = a.boundaries();
    struct Item {
        std::size_t lo, hi; // inclusive text range, or a literal when lo > hi
        std::int16_t byte;
    };
    std::vector<Item> stack;
    stack.push_back({start, start + count - 1, -1});
    while (!stack.empty()) {
        const Item item = stack.back();
        stack.pop_back();
        if (item.byte >= 0) {
            out.push_back(static_cast<char>(item.byte));
            continue;
        }
        if (item.lo > item.hi) continue;
        const std::size_t k = boundaries.rank(item.lo);
        const Phrase& p = a.phrases()[k];
        const std::size_t e = boundaries.select(k);
        const std::size_t hi = std::min(item.hi, e);
        if (hi < item.hi) stack.push_back({hi + 1, item.hi, -1}); // emitted last
        const std::size_t copy_end = p.has_last() ? e - 1 : e;    // may wrap for literals
        if (p.has_last() && hi == e) stack.push_back({0, 0, p.last});
        if (p.has_source() && item.lo <= copy_end && copy_end + 1 != 0) {
            const std::size_t chi = std::min(hi, copy_end);
            if (item.lo <= chi) {
                const std::size_t phrase_start = e + 1 - p.length;
                const std::size_t window_start =
                    boundaries.select(p.source) + 1 - p.copy_length();
                const std::size_t off = window_start - phrase_start; // may wrap; mod arithmetic
                stack.push_back({item.lo + off, chi + off, -1});     // emitted first
            }
        }
    }
    return out;
}

} // namespace lzend
