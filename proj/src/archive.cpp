#include "lzend/archive.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "lzend/errors.hpp"

namespace lzend {

BoundaryIndex::BoundaryIndex(std::vector<std::size_t> ends) : ends_(std::move(ends)) {}

std::size_t BoundaryIndex::rank(std::size_t pos) const {
    if (pos > text_length()) {
        throw std::out_of_range("rank: position " + std::to_string(pos) +
                                " past text length " + std::to_string(text_length()));
    }
    return static_cast<std::size_t>(
        std::lower_bound(ends_.begin(), ends_.end(), pos) - ends_.begin());
}

std::size_t BoundaryIndex::select(std::size_t ordinal) const {
    if (ordinal >= ends_.size()) {
        throw std::out_of_range("select: phrase ordinal " + std::to_string(ordinal) +
                                " out of range (" + std::to_string(ends_.size()) + " phrases)");
    }
    return ends_[ordinal];
}

Archive Archive::from_phrases(std::vector<Phrase> phrases) {
    std::vector<std::size_t> ends;
    ends.reserve(phrases.size());
    std::size_t pos = 0;
    for (std::size_t k = 0; k < phrases.size(); ++k) {
        Phrase& p = phrases[k];
        if (p.length == 0) {
            throw corruption_error("phrase " + std::to_string(k) + " has zero length");
        }
        if (p.length == 1 && p.has_last() && p.has_source()) {
            p.source = Phrase::kNoSource; // canonical literal form
        }
        if (!p.has_last() && k + 1 != phrases.size()) {
            throw corruption_error("phrase " + std::to_string(k) +
                                   " lacks an innovation but is not the final phrase");
        }
        if (!p.has_source()) {
            if (!p.has_last() || p.length != 1) {
                throw corruption_error("phrase " + std::to_string(k) +
                                       " has no source but is not a single literal");
            }
        } else {
            if (p.source >= k) {
                throw corruption_error("phrase " + std::to_string(k) +
                                       " references phrase " + std::to_string(p.source) +
                                       " which is not strictly earlier");
            }
            const std::size_t copy_len = p.copy_length();
            const std::size_t src_end = ends[p.source];
            if (copy_len > src_end + 1) {
                throw corruption_error("phrase " + std::to_string(k) + " copy window of " +
                                       std::to_string(copy_len) +
                                       " symbols underflows the text start");
            }
        }
        pos += p.length;
        ends.push_back(pos - 1);
    }
    Archive a;
    a.phrases_ = std::move(phrases);
    a.boundaries_ = BoundaryIndex(std::move(ends));
    return a;
}

} // namespace lzend
