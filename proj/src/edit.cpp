#include "lzend/edit.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "lzend/codec.hpp"
#include "lzend/errors.hpp"

namespace lzend {

namespace {

// Target phrase range [x, xe) for an edit [i, j); xe == x when i == j == n.
struct TargetSpan {
    std::size_t x;        // first target ordinal
    std::size_t xe;       // first ordinal past the targets
    std::size_t extent_lo; // first symbol covered by the targets
    std::size_t extent_hi; // last symbol covered by the targets
};

TargetSpan target_span(const Archive& a, std::size_t i, std::size_t j) {
    const auto& b = a.boundaries();
    const std::size_t n = a.text_length();
    TargetSpan t{};
    if (j > i) {
        t.x = b.rank(i);
        t.xe = b.rank(j - 1) + 1;
    } else if (i < n) {
        t.x = b.rank(i);
        t.xe = t.x + 1;
    } else if (n > 0 && !a.phrases().back().has_last()) {
        // appending after an innovation-free final phrase: that phrase shape
        // is only legal at the very end, so it joins the target span
        t.x = a.phrase_count() - 1;
        t.xe = a.phrase_count();
    } else {
        t.x = t.xe = a.phrase_count();
        return t;
    }
    t.extent_lo = t.x == 0 ? 0 : b.select(t.x - 1) + 1;
    t.extent_hi = b.select(t.xe - 1);
    return t;
}

// Semantic source window [lo, hi] of a phrase with a source.
std::pair<std::size_t, std::size_t> source_window(const Archive& a, const Phrase& p) {
    const std::size_t hi = a.boundaries().select(p.source);
    return {hi + 1 - p.copy_length(), hi};
}

// Last `count` symbols of p's content as a phrase (a window suffix ending at
// the same boundary, keeping the innovation).
Phrase clamp_tail(const Phrase& p, std::size_t count) {
    assert(count >= 1 && count <= p.length);
    if (count == p.length) return p;
    assert(p.has_last());
    return Phrase::copy(p.source, static_cast<std::uint32_t>(count), p.last_byte());
}

// Emits phrases decoding text[lo..hi] using only references that survive the
// edit. `hi` always lands on a pre-edit phrase end. Copies of target phrases
// whose own source lies among the targets are expanded recursively.
void emit_range(const Archive& a, std::size_t lo, std::size_t hi, const TargetSpan& t,
                std::vector<Phrase>& run, bool top_level, EditStats* stats) {
    const auto& b = a.boundaries();
    std::size_t cursor = lo;
    while (cursor <= hi) {
        const std::size_t u = b.rank(cursor);
        const std::size_t eu = b.select(u);
        assert(eu <= hi);
        const Phrase& pu = a.phrases()[u];
        const std::size_t piece = eu - cursor + 1;
        if (u < t.x) {
            run.push_back(clamp_tail(pu, piece));
        } else {
            assert(u < t.xe);
            if (stats && top_level) ++stats->target_phrase_reads;
            if (!pu.has_source() || pu.source < t.x) {
                run.push_back(clamp_tail(pu, piece));
            } else {
                // chained target reference: re-derive the copied window
                assert(pu.has_last()); // a target followed by a dependent cannot be final
                if (piece > 1) {
                    const std::size_t eq = b.select(pu.source);
                    emit_range(a, eq + 1 - (piece - 1), eq, t, run, false, stats);
                }
                run.push_back(Phrase::literal(pu.last_byte()));
            }
        }
        cursor = eu + 1;
    }
}

std::vector<Phrase> replacement_run(const Archive& a, std::size_t d, const TargetSpan& t,
                                    EditStats* stats) {
    const Phrase& p = a.phrases()[d];
    const auto [win_lo, win_hi] = source_window(a, p);
    std::vector<Phrase> run;
    const std::size_t mid_hi = std::min(win_hi, t.extent_hi);
    if (stats && win_lo < t.extent_lo) ++stats->target_phrase_reads; // prefix piece
    emit_range(a, win_lo, mid_hi, t, run, true, stats);
    if (win_hi > mid_hi) {
        // window continues past the targets; keep referencing the dependent's
        // own source (its boundary survives, adjust_pointers redirects it)
        if (stats) ++stats->target_phrase_reads;
        const std::size_t copy_len = win_hi - mid_hi;
        Phrase tail;
        tail.source = p.source;
        tail.length = static_cast<std::uint32_t>(copy_len + (p.has_last() ? 1 : 0));
        tail.last = p.last;
        run.push_back(tail);
    } else if (p.has_last()) {
        if (stats) ++stats->target_phrase_reads;
        run.push_back(Phrase::literal(p.last_byte()));
    }
    return run;
}

std::size_t instrumented_upper_bound(const std::vector<std::size_t>& v, std::size_t key,
                                     std::size_t& comparisons) {
    std::size_t lo = 0, hi = v.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        ++comparisons;
        if (v[mid] <= key) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo;
}

} // namespace

DependentSet find_dependent_phrases(const Archive& a, std::size_t first_target,
                                    std::size_t past_targets, std::size_t scan_from,
                                    EditStats* stats) {
    if (first_target > past_targets || past_targets > a.phrase_count()) {
        throw std::invalid_argument("find_dependent_phrases: bad target range");
    }
    DependentSet dep;
    if (scan_from == SIZE_MAX) scan_from = past_targets;
    if (first_target == past_targets) {
        if (stats) stats->scan_visits += a.phrase_count() - std::min(scan_from, a.phrase_count());
        return dep; // no targets, nothing can depend on them
    }
    const auto& b = a.boundaries();
    const std::size_t extent_lo =
        first_target == 0 ? 0 : b.select(first_target - 1) + 1;
    const std::size_t extent_hi = b.select(past_targets - 1);
    for (std::size_t o = scan_from; o < a.phrase_count(); ++o) {
        if (stats) ++stats->scan_visits;
        if (o < past_targets) continue;
        const Phrase& p = a.phrases()[o];
        if (!p.has_source()) continue;
        bool dependent = p.source >= first_target && p.source < past_targets;
        if (!dependent) {
            const auto [lo, hi] = source_window(a, p);
            dependent = lo <= extent_hi && hi >= extent_lo;
        }
        if (dependent) dep.ordinals.push_back(o);
    }
    if (stats) stats->dependent_count = dep.ordinals.size();
    return dep;
}

ReplacementTable find_replacement_phrases(const Archive& a, std::size_t i, std::size_t j,
                                          const DependentSet& dep, EditStats* stats) {
    ReplacementTable rep;
    rep.runs.reserve(dep.ordinals.size());
    if (dep.ordinals.empty()) return rep;
    const TargetSpan t = target_span(a, i, j);
    for (std::size_t d : dep.ordinals) {
        rep.runs.push_back(replacement_run(a, d, t, stats));
    }
    return rep;
}

std::vector<Phrase> encode_str(const Archive& a, std::size_t i, std::size_t j,
                               const ByteString& payload) {
    const std::size_t n = a.text_length();
    if (i > j || j > n) throw std::invalid_argument("encode_str: bad range");
    const TargetSpan t = target_span(a, i, j);
    if (t.x == t.xe) {
        return parse(payload).phrases(); // pure append, no fringes
    }
    const std::size_t first = t.extent_lo;
    const std::size_t last = t.extent_hi;
    ByteString extended;
    extended.reserve((i - first) + payload.size() + (last + 1 - j));
    extended = extract(a, first, i - first);
    extended += payload;
    extended += extract(a, j, last + 1 - j);
    // phrases spliced in front of survivors must all carry innovations
    const bool survivors_follow = t.xe < a.phrase_count();
    return (survivors_follow ? parse_embedded(extended) : parse(extended)).phrases();
}

void adjust_pointers(std::vector<Phrase>& spliced, std::size_t first_target,
                     std::size_t removed, std::size_t inserted, const DependentSet& dep,
                     const ReplacementTable& rep, EditStats* stats) {
    // cumulative net growth of the replacement runs, for the binary search
    std::vector<std::size_t> net(dep.ordinals.size());
    for (std::size_t k = 0; k < net.size(); ++k) {
        net[k] = (k ? net[k - 1] : 0) + rep.runs[k].size() - 1;
    }
    const std::size_t past_targets = first_target + removed;
    for (std::size_t pos = first_target + inserted; pos < spliced.size(); ++pos) {
        Phrase& p = spliced[pos];
        if (!p.has_source() || p.source < first_target) continue;
        const std::size_t q = p.source;
        if (q < past_targets) {
            throw corruption_error("adjust_pointers: surviving phrase still references "
                                   "removed target " + std::to_string(q));
        }
        std::size_t growth = 0;
        if (!dep.ordinals.empty()) {
            std::size_t comparisons = 0;
            const std::size_t idx = instrumented_upper_bound(dep.ordinals, q, comparisons);
            if (stats) {
                ++stats->adjust_lookups;
                stats->adjust_max_comparisons =
                    std::max(stats->adjust_max_comparisons, comparisons);
            }
            growth = idx ? net[idx - 1] : 0;
        }
        const std::size_t shifted = q + inserted + growth - removed;
        if (shifted >= spliced.size() || shifted >= pos) {
            throw corruption_error("adjust_pointers: back-reference of phrase " +
                                   std::to_string(pos) + " lands out of range");
        }
        p.source = static_cast<std::uint32_t>(shifted);
    }
}

Archive modify(const Archive& a, const EditRequest& req, EditStats* stats) {
    const std::size_t n = a.text_length();
    if (req.begin > req.end || req.end > n) {
        throw std::invalid_argument("modify: bad edit range [" + std::to_string(req.begin) +
                                    ", " + std::to_string(req.end) + ") on text of length " +
                                    std::to_string(n));
    }
    if (req.begin == req.end && req.payload.empty()) return a; // identity

    const std::size_t i = req.begin, j = req.end;
    const TargetSpan t = target_span(a, i, j);
    const std::size_t scan_from = a.boundaries().rank(j);

    const DependentSet dep = find_dependent_phrases(a, t.x, t.xe, scan_from, stats);
    const ReplacementTable rep = find_replacement_phrases(a, i, j, dep, stats);
    std::vector<Phrase> comp = encode_str(a, i, j, req.payload);

    std::vector<Phrase> spliced;
    spliced.reserve(t.x + comp.size() + (a.phrase_count() - t.xe) + 8);
    spliced.insert(spliced.end(), a.phrases().begin(), a.phrases().begin() + t.x);
    for (Phrase p : comp) {
        if (p.has_source()) p.source += static_cast<std::uint32_t>(t.x);
        spliced.push_back(p);
    }
    std::size_t next_dep = 0;
    for (std::size_t o = t.xe; o < a.phrase_count(); ++o) {
        if (next_dep < dep.ordinals.size() && dep.ordinals[next_dep] == o) {
            const auto& run = rep.runs[next_dep];
            spliced.insert(spliced.end(), run.begin(), run.end());
            ++next_dep;
        } else {
            spliced.push_back(a.phrases()[o]);
        }
    }
    adjust_pointers(spliced, t.x, t.xe - t.x, comp.size(), dep, rep, stats);
    return Archive::from_phrases(std::move(spliced));
}

} // namespace lzend
