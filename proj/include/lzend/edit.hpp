#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lzend/archive.hpp"

namespace lzend {

// Replace the symbols [begin, end) of the decoded text with `payload`,
// without decompressing the archive. begin == end inserts, an empty payload
// deletes, both together are a no-op.
struct EditRequest {
    std::size_t begin = 0;
    std::size_t end = 0;
    ByteString payload;
};

// Ascending ordinals of the phrases that depend on at least one symbol of the
// edited span; all strictly past the last target phrase.
struct DependentSet {
    std::vector<std::size_t> ordinals;
};

// Replacement phrases per dependent, parallel to DependentSet::ordinals.
// Each run decodes to exactly the dependent's content and its final phrase
// keeps the dependent's original end position.
struct ReplacementTable {
    std::vector<std::vector<Phrase>> runs;
};

// Counters exposed for the complexity checks.
struct EditStats {
    std::size_t scan_visits = 0;         // phrases visited by the dependent scan
    std::size_t target_phrase_reads = 0; // per-dependent window pieces examined
    std::size_t adjust_lookups = 0;      // binary searches in adjust_pointers
    std::size_t adjust_max_comparisons = 0; // worst comparisons in one lookup
    std::size_t dependent_count = 0;
};

// Rewrites dependents, re-encodes the edited
// span (plus the fringes of the boundary target phrases) as a standalone
// parse, splices, and corrects back-references. Returns a fully valid archive;
// the input is untouched. Throws std::invalid_argument on a bad range.
Archive modify(const Archive& a, const EditRequest& req, EditStats* stats = nullptr);

// One scan over the ordinals past the targets [first_target, past_targets),
// emitting every phrase whose source ordinal lies among the targets or whose
// source window intersects the targets' symbol extent. `scan_from` widens the
// scan start (modify passes the phrase containing the first kept symbol);
// emission is always restricted to ordinals >= past_targets.
DependentSet find_dependent_phrases(const Archive& a, std::size_t first_target,
                                    std::size_t past_targets,
                                    std::size_t scan_from = SIZE_MAX,
                                    EditStats* stats = nullptr);

// Builds each dependent's replacement run: clamped copies of the surviving
// phrases covering the window portion before the targets, copies of the
// overlapped target phrases (chained target references expanded down to
// phrases sourced outside the target span), and a tail phrase for any window
// remainder past the targets, or a literal carrying the innovation.
ReplacementTable find_replacement_phrases(const Archive& a, std::size_t i, std::size_t j,
                                          const DependentSet& dep, EditStats* stats = nullptr);

// Re-encodes prefix-fringe || payload || suffix-fringe as its own parse, with
// no back-reference into `a`. The fringes are the symbols of the first and
// last target phrase outside [i, j).
std::vector<Phrase> encode_str(const Archive& a, std::size_t i, std::size_t j,
                               const ByteString& payload);

// Corrects back-references in an already-spliced phrase list: sources past
// the targets shift by inserted - removed plus the net growth of every
// replacement run at or before them (binary search over cumulative run
// sizes), so references to a dependent land on its final replacement phrase.
// Phrases [first_target, first_target + inserted) are the fresh payload
// encoding and are left alone. Throws corruption_error if a source would
// land inside the removed target range.
void adjust_pointers(std::vector<Phrase>& spliced, std::size_t first_target,
                     std::size_t removed, std::size_t inserted, const DependentSet& dep,
                     const ReplacementTable& rep, EditStats* stats = nullptr);

} // namespace lzend
