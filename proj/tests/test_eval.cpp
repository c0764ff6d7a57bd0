#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <random>

#include "lzend/calibrated.hpp"
#include "lzend/codec.hpp"
#include "lzend/edit.hpp"
#include "lzend/eval.hpp"
#include "lzend/io.hpp"

using namespace lzend;

TEST_CASE("null edit has modification ratio exactly one") {
    const ByteString text = english_like_text(4000, 1);
    const Archive a = parse(text);
    CHECK(modification_ratio(modify(a, EditRequest{10, 10, ""}), text) == 1.0);
}

TEST_CASE("modification_ratio guards its oracle") {
    const ByteString text = english_like_text(500, 2);
    const Archive a = parse(text);
    CHECK_THROWS_AS(modification_ratio(a, text + "x"), std::logic_error);
}

TEST_CASE("low payloads are repeated 'a' bytes") {
    CHECK(make_payload(PayloadClass::Low, 4, 0) == "aaaa");
    CHECK(make_payload(PayloadClass::Low, 0, 0) == "");
}

TEST_CASE("high payloads barely compress") {
    const ByteString p = make_payload(PayloadClass::High, 10000, 3);
    const double ratio = static_cast<double>(compressed_size(parse(p))) / 10000.0;
    CHECK(ratio >= 0.95);
}

TEST_CASE("medium payloads land in the half-size window") {
    const ByteString p = make_payload(PayloadClass::Medium, 10000, 4);
    REQUIRE(p.size() == 10000);
    const double ratio = static_cast<double>(compressed_size(parse(p))) / 10000.0;
    CHECK(ratio >= 0.45);
    CHECK(ratio <= 0.55);
    // small payloads inherit the block size tuned at probe scale
    CHECK(make_payload(PayloadClass::Medium, 250, 4).size() == 250);
}

TEST_CASE("zero edits yield an empty record list") {
    Corpus corpus;
    corpus.files.emplace_back("tiny", english_like_text(2000, 5));
    CHECK(run_incremental(corpus, 1, 0).empty());
}

TEST_CASE("incremental runs are deterministic and well formed") {
    Corpus corpus;
    corpus.files.emplace_back("sample", english_like_text(3000, 6));
    const auto records = run_incremental(corpus, 42, 5);
    CHECK(records.size() == 5 * 3 * 3);
    for (const auto& r : records) {
        CHECK(r.mr > 0.0);
        CHECK(std::isfinite(r.mr));
    }
    const auto again = run_incremental(corpus, 42, 5);
    CHECK(emit_report(records) == emit_report(again));
}

TEST_CASE("size sweep emits one averaged record per fraction") {
    Corpus corpus;
    corpus.files.emplace_back("sample", english_like_text(2000, 8));
    const auto records = run_sizes(corpus, 7, 2);
    CHECK(records.size() == 19 * 3 * 3);
}

TEST_CASE("position sweep emits one averaged record per fraction") {
    Corpus corpus;
    corpus.files.emplace_back("sample", english_like_text(2000, 9));
    const auto records = run_positions(corpus, 7, 2);
    CHECK(records.size() == 19 * 3 * 3);
}

TEST_CASE("emit_report formatting and ordering") {
    CHECK(emit_report({}) == "file,operation,payload,parameter,mr\n");
    std::vector<MrRecord> records{{"f", Operation::Insert, PayloadClass::Low, 1.0, 1.5}};
    CHECK(emit_report(records) ==
          "file,operation,payload,parameter,mr\nf,insert,low,1.000000,1.500000\n");
    // rows come out sorted regardless of input order
    std::vector<MrRecord> shuffled{
        {"b", Operation::Delete, PayloadClass::High, 0.1, 2.0},
        {"a", Operation::Insert, PayloadClass::Low, 0.2, 1.0},
        {"a", Operation::Insert, PayloadClass::Low, 0.1, 1.0},
    };
    const std::string csv = emit_report(shuffled);
    CHECK(csv.find("a,insert,low,0.100000") < csv.find("a,insert,low,0.200000"));
    CHECK(csv.find("a,insert") < csv.find("b,delete"));
}

namespace {

double mean_mr(const std::vector<MrRecord>& records, Operation op) {
    double sum = 0;
    int n = 0;
    for (const auto& r : records) {
        if (r.op == op) {
            sum += r.mr;
            ++n;
        }
    }
    return sum / n;
}

} // namespace

TEST_CASE("incremental trends: insertion hurts less than deletion, low entropy hurts most") {
    CalibratedSpec low;
    low.n_bytes = 20000;
    low.xi = 0.0005;
    low.seed = 555;
    CalibratedSpec high = low;
    high.xi = 0.025;

    Corpus corpus;
    corpus.files.emplace_back("low_xi", pack_bits(logistic_bits(low)));
    corpus.files.emplace_back("high_xi", pack_bits(logistic_bits(high)));
    const auto records = run_incremental(corpus, 33, 25);

    std::map<std::string, std::pair<double, int>> by_file;
    for (const auto& r : records) {
        by_file[r.file].first += r.mr;
        by_file[r.file].second += 1;
    }
    const double low_mean = by_file["low_xi"].first / by_file["low_xi"].second;
    const double high_mean = by_file["high_xi"].first / by_file["high_xi"].second;
    CHECK(low_mean > high_mean);

    CHECK(mean_mr(records, Operation::Insert) < mean_mr(records, Operation::Delete));
}

TEST_CASE("position sweeps keep deletion and replacement nearly identical") {
    CalibratedSpec spec;
    spec.n_bytes = 25000;
    spec.xi = 0.0025;
    spec.seed = 777;
    Corpus corpus;
    corpus.files.emplace_back("cal", pack_bits(logistic_bits(spec)));
    const auto records = run_positions(corpus, 44, 3);
    std::map<int, double> del, rep;
    std::map<int, int> cnt;
    for (const auto& r : records) {
        const int p = static_cast<int>(std::llround(r.parameter * 100));
        if (r.op == Operation::Delete) del[p] += r.mr;
        if (r.op == Operation::Replace) rep[p] += r.mr;
        cnt[p] += 1;
    }
    for (const auto& [p, d] : del) {
        const double a = d / 3.0;       // three payload classes
        const double b = rep[p] / 3.0;
        CHECK(std::fabs(a - b) / b <= 0.05);
    }
}

TEST_CASE("english-like text is deterministic and word shaped") {
    const ByteString a = english_like_text(5000, 11);
    CHECK(a == english_like_text(5000, 11));
    CHECK(a.size() == 5000);
    CHECK(a.find("the") != ByteString::npos);
    const double ratio =
        static_cast<double>(compressed_size(parse(a))) / static_cast<double>(a.size());
    CHECK(ratio < 0.9); // compresses like text, not noise
}
