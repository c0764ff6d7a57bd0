#pragma once

// Test-only reference machinery, independent of the library's code paths:
// a brute-force parser that enumerates every boundary-ending suffix, plain
// splicing, and a dependency check straight from the copy semantics.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lzend/archive.hpp"

namespace oracle {

// Greedy factorization by exhaustive enumeration: at each position try every
// (boundary, window length) pair, longest match first, smallest source
// ordinal on ties.
inline lzend::Archive brute_parse(const std::string& text) {
    using lzend::Phrase;
    const std::size_t n = text.size();
    std::vector<Phrase> phrases;
    std::vector<std::size_t> ends;
    std::size_t i = 0;
    while (i < n) {
        std::size_t best_m = 0, best_ord = SIZE_MAX;
        for (std::size_t ord = 0; ord < ends.size(); ++ord) {
            const std::size_t e = ends[ord];
            const std::size_t max_m = std::min(e + 1, n - i);
            for (std::size_t m = max_m; m >= 1; --m) {
                if (text.compare(i, m, text, e + 1 - m, m) == 0) {
                    if (m > best_m) {
                        best_m = m;
                        best_ord = ord;
                    }
                    break; // longer windows at this boundary already tried
                }
            }
        }
        std::size_t advance;
        if (best_m == 0) {
            phrases.push_back(Phrase::literal(static_cast<std::uint8_t>(text[i])));
            advance = 1;
        } else if (i + best_m < n) {
            phrases.push_back(Phrase::copy(static_cast<std::uint32_t>(best_ord),
                                           static_cast<std::uint32_t>(best_m + 1),
                                           static_cast<std::uint8_t>(text[i + best_m])));
            advance = best_m + 1;
        } else {
            phrases.push_back(Phrase::final_copy(static_cast<std::uint32_t>(best_ord),
                                                 static_cast<std::uint32_t>(best_m)));
            advance = best_m;
        }
        ends.push_back(i + advance - 1);
        i += advance;
    }
    return lzend::Archive::from_phrases(std::move(phrases));
}

inline std::string splice(const std::string& text, std::size_t i, std::size_t j,
                          const std::string& payload) {
    std::string out = text.substr(0, i);
    out += payload;
    out += text.substr(j);
    return out;
}

// Ordinals depending on the target phrases [x, xe), straight from the copy
// semantics: source ordinal among the targets, or source window touching the
// targets' symbol extent.
inline std::vector<std::size_t> brute_dependents(const lzend::Archive& a, std::size_t x,
                                                 std::size_t xe) {
    std::vector<std::size_t> deps;
    if (x == xe) return deps;
    const auto& b = a.boundaries();
    const std::size_t lo = x == 0 ? 0 : b.select(x - 1) + 1;
    const std::size_t hi = b.select(xe - 1);
    for (std::size_t o = xe; o < a.phrase_count(); ++o) {
        const auto& p = a.phrases()[o];
        if (!p.has_source()) continue;
        if (p.source >= x && p.source < xe) {
            deps.push_back(o);
            continue;
        }
        const std::size_t wh = b.select(p.source);
        const std::size_t wl = wh + 1 - p.copy_length();
        if (wl <= hi && wh >= lo) deps.push_back(o);
    }
    return deps;
}

// Random byte strings over alphabets of various sizes; small alphabets make
// richer phrase structure.
inline std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
    static constexpr int kAlphabets[] = {1, 2, 3, 4, 16, 256};
    const int alphabet = kAlphabets[rng() % (sizeof(kAlphabets) / sizeof(int))];
    const std::size_t len = rng() % (max_len + 1);
    std::string s(len, '\0');
    for (auto& c : s) c = static_cast<char>('a' + rng() % alphabet);
    return s;
}

} // namespace oracle
