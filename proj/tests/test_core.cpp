#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include "lzend/archive.hpp"
#include "lzend/codec.hpp"
#include "lzend/errors.hpp"
#include "oracle.hpp"

using namespace lzend;

namespace {

BoundaryIndex make_index(std::vector<std::size_t> ends) { return BoundaryIndex(std::move(ends)); }

Archive abab() { return parse("abab"); }
Archive abcabd() { return parse("abcabd"); }

} // namespace

TEST_CASE("rank counts ends strictly before the position") {
    const BoundaryIndex b = make_index({0, 1, 3});
    CHECK(b.rank(0) == 0);
    CHECK(b.rank(2) == 2);
    CHECK(b.rank(3) == 2);
    CHECK(b.rank(4) == 3);
    CHECK_THROWS_AS(b.rank(5), std::out_of_range);
}

TEST_CASE("select returns the end position of a phrase") {
    const BoundaryIndex b = make_index({0, 1, 3});
    CHECK(b.select(0) == 0);
    CHECK(b.select(2) == 3);
    CHECK_THROWS_AS(make_index({5}).select(1), std::out_of_range);
}

TEST_CASE("parse of the worked micro examples") {
    CHECK(parse("").phrase_count() == 0);
    CHECK(parse("").text_length() == 0);

    const Archive a = abab();
    REQUIRE(a.phrase_count() == 3);
    CHECK(a.phrases()[0] == Phrase::literal('a'));
    CHECK(a.phrases()[1] == Phrase::literal('b'));
    CHECK(a.phrases()[2] == Phrase::final_copy(1, 2));
    CHECK(a.boundaries().ends() == std::vector<std::size_t>{0, 1, 3});

    const Archive b = abcabd();
    REQUIRE(b.phrase_count() == 4);
    CHECK(b.phrases()[0] == Phrase::literal('a'));
    CHECK(b.phrases()[1] == Phrase::literal('b'));
    CHECK(b.phrases()[2] == Phrase::literal('c'));
    CHECK(b.phrases()[3] == Phrase::copy(1, 3, 'd'));
    CHECK(b.boundaries().ends() == std::vector<std::size_t>{0, 1, 2, 5});

    // the same examples through the brute-force enumerator
    CHECK(oracle::brute_parse("abab") == a);
    CHECK(oracle::brute_parse("abcabd") == b);
}

TEST_CASE("decompress inverts the worked examples") {
    CHECK(decompress(parse("")) == "");
    CHECK(decompress(abab()) == "abab");
    CHECK(decompress(abcabd()) == "abcabd");
}

TEST_CASE("decompress rejects a malformed source window") {
    std::vector<Phrase> ps;
    ps.push_back(Phrase::literal('a'));
    ps.push_back(Phrase::copy(0, 3, 'b')); // copies 2 symbols, only 1 exists
    CHECK_THROWS_AS(Archive::from_phrases(std::move(ps)), corruption_error);
}

TEST_CASE("extract matches the substring oracle on the examples") {
    CHECK(extract(abab(), 0, 0) == "");
    CHECK(extract(abcabd(), 3, 3) == "abd");
    CHECK(extract(abab(), 2, 2) == "ab");
    CHECK_THROWS_AS(extract(abab(), 3, 2), std::out_of_range);
    CHECK_THROWS_AS(extract(abab(), 5, 0), std::out_of_range);
}

TEST_CASE("round trip over random byte strings") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 400; ++it) {
        const std::string t = oracle::random_text(rng, it % 5 == 0 ? 10000 : 500);
        const Archive a = parse(t);
        CHECK(decompress(a) == t);
    }
}

TEST_CASE("fast parser and reference parser produce identical archives") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        const std::string t = oracle::random_text(rng, 600);
        CHECK(parse(t) == reference_parse(t));
    }
    // a couple of larger ones
    for (int it = 0; it < 6; ++it) {
        const std::string t = oracle::random_text(rng, 4000);
        CHECK(parse(t) == reference_parse(t));
    }
}

TEST_CASE("reference parser matches the brute-force enumerator") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 150; ++it) {
        const std::string t = oracle::random_text(rng, 160);
        CHECK(reference_parse(t) == oracle::brute_parse(t));
    }
}

TEST_CASE("extract equals the decompressed substring everywhere") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 60; ++it) {
        const std::string t = oracle::random_text(rng, 800);
        const Archive a = parse(t);
        const std::string full = decompress(a);
        for (int q = 0; q < 30; ++q) {
            const std::size_t start = t.empty() ? 0 : rng() % (t.size() + 1);
            const std::size_t len = rng() % (t.size() - start + 1);
            CHECK(extract(a, start, len) == full.substr(start, len));
        }
    }
}

TEST_CASE("boundary consistency of rank and select") {
    std::mt19937_64 rng(19);
    for (int it = 0; it < 40; ++it) {
        const std::string t = oracle::random_text(rng, 400);
        const Archive a = parse(t);
        const auto& b = a.boundaries();
        for (std::size_t k = 0; k < a.phrase_count(); ++k) {
            CHECK(b.rank(b.select(k)) == k);
            CHECK(b.rank(b.select(k) + 1) == k + 1);
        }
    }
}

TEST_CASE("greedy optimality: no match part extends by one and still ends on a boundary") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 60; ++it) {
        const std::string t = oracle::random_text(rng, 256);
        const Archive a = parse(t);
        const auto& ends = a.boundaries().ends();
        std::size_t pos = 0;
        for (std::size_t k = 0; k < a.phrase_count(); ++k) {
            const Phrase& p = a.phrases()[k];
            const std::size_t want = p.copy_length() + 1; // one longer than the match part
            bool extendable = false;
            for (std::size_t ord = 0; ord < k && !extendable; ++ord) {
                const std::size_t e = ends[ord];
                if (e + 1 < want || want > t.size() - pos) continue;
                extendable = t.compare(pos, want, t, e + 1 - want, want) == 0;
            }
            CHECK_FALSE(extendable);
            pos += p.length;
        }
    }
}

TEST_CASE("single-symbol text yields far fewer phrases than random bytes") {
    std::mt19937_64 rng(29);
    for (std::size_t m : {64u, 256u, 1024u, 4096u}) {
        const std::string ones(m, 'a');
        std::string random(m, '\0');
        for (auto& c : random) c = static_cast<char>(rng() & 0xFF);
        CHECK(parse(ones).phrase_count() < parse(random).phrase_count());
    }
}

TEST_CASE("archives validate back-references and innovation placement") {
    // non-final phrase without innovation
    {
        std::vector<Phrase> ps{Phrase::literal('a'), Phrase::final_copy(0, 1),
                               Phrase::literal('b')};
        CHECK_THROWS_AS(Archive::from_phrases(std::move(ps)), corruption_error);
    }
    // forward reference
    {
        std::vector<Phrase> ps{Phrase::copy(0, 2, 'a')};
        CHECK_THROWS_AS(Archive::from_phrases(std::move(ps)), corruption_error);
    }
    // zero length
    {
        Phrase z;
        z.length = 0;
        z.last = 'a';
        std::vector<Phrase> ps{z};
        CHECK_THROWS_AS(Archive::from_phrases(std::move(ps)), corruption_error);
    }
    // length-1 copy with innovation normalizes to a literal
    {
        std::vector<Phrase> ps{Phrase::literal('a')};
        Phrase p;
        p.source = 0;
        p.length = 1;
        p.last = 'b';
        ps.push_back(p);
        const Archive a = Archive::from_phrases(std::move(ps));
        CHECK(a.phrases()[1] == Phrase::literal('b'));
    }
}

TEST_CASE("embedded parse keeps an innovation on every phrase") {
    std::mt19937_64 rng(97);
    for (int it = 0; it < 200; ++it) {
        const std::string t = oracle::random_text(rng, 400);
        const Archive a = parse_embedded(t);
        CHECK(decompress(a) == t);
        for (const Phrase& p : a.phrases()) CHECK(p.has_last());
    }
    // where the plain parse ends with a consumed match, the embedded one differs
    const Archive plain = parse("abab");
    const Archive embedded = parse_embedded("abab");
    CHECK_FALSE(plain.phrases().back().has_last());
    CHECK(embedded.phrases().back().has_last());
}

TEST_CASE("duplicate phrases are accepted by the decoder") {
    std::vector<Phrase> ps{Phrase::literal('a'), Phrase::literal('a'), Phrase::copy(0, 2, 'a'),
                           Phrase::copy(0, 2, 'a')};
    const Archive a = Archive::from_phrases(std::move(ps));
    CHECK(decompress(a) == "aaaaaa");
}
