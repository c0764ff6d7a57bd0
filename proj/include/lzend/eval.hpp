#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lzend/archive.hpp"

namespace lzend {

enum class Operation { Insert, Delete, Replace };
enum class PayloadClass { Low, Medium, High };

const char* to_string(Operation op);
const char* to_string(PayloadClass c);

// One modification-ratio measurement. `parameter` is the edit index for the
// incremental runs and the size or position fraction for the sweeps.
struct MrRecord {
    std::string file;
    Operation op;
    PayloadClass payload;
    double parameter;
    double mr;
};

struct Corpus {
    std::vector<std::pair<std::string, ByteString>> files;
};

// compressed_size(after) / compressed_size(parse(edited_plaintext)).
// Throws std::logic_error if `after` does not decode to `edited_plaintext`,
// so every measurement doubles as a correctness check.
double modification_ratio(const Archive& after, const ByteString& edited_plaintext);

// low: repeated 'a'. high: seeded uniform bytes. medium: random blocks each
// emitted twice, block size tuned until a reference-scale probe compresses to
// 0.45..0.55 of its raw size (config_error when no block size qualifies).
ByteString make_payload(PayloadClass c, std::size_t size, std::uint64_t seed);

// 100 edits per (file, operation, payload class), each 0.5% of the original
// file size at a seeded uniform position, MR recorded after every edit.
std::vector<MrRecord> run_incremental(const Corpus& corpus, std::uint64_t seed,
                                      std::size_t edits_per_op = 100);

// Single edits swept over size fractions 0.05..0.95 (step 0.05), averaged
// over seeded trials; replacements use a payload as large as the removed span.
std::vector<MrRecord> run_sizes(const Corpus& corpus, std::uint64_t seed,
                                std::size_t trials = 10);

// Single 0.5%-sized edits at start positions 0.05..0.95 of the file length.
std::vector<MrRecord> run_positions(const Corpus& corpus, std::uint64_t seed,
                                    std::size_t trials = 10);

// CSV: header `file,operation,payload,parameter,mr`, rows ordered by
// (file, operation, payload, parameter), six fractional digits.
std::string emit_report(std::vector<MrRecord> records);

// Corpus sources.
Corpus load_corpus_dir(const std::string& dir);
Corpus calibrated_corpus(std::uint64_t seed, std::size_t strings_per_xi = 10,
                         std::size_t n_bytes = 50000);

// Deterministic prose-like filler for corpus experiments.
ByteString english_like_text(std::size_t bytes, std::uint64_t seed);

} // namespace lzend
