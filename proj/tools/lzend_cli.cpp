#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lzend/calibrated.hpp"
#include "lzend/codec.hpp"
#include "lzend/edit.hpp"
#include "lzend/errors.hpp"
#include "lzend/eval.hpp"
#include "lzend/io.hpp"

namespace {

using lzend::ByteString;

ByteString read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return ByteString((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const ByteString& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

ByteString decode_hex(const std::string& hex) {
    if (hex.size() % 2) throw std::invalid_argument("hex payload has odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
    };
    ByteString out(hex.size() / 2, '\0');
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = static_cast<char>(nibble(hex[2 * k]) << 4 | nibble(hex[2 * k + 1]));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LZ-End compression with local decoding and local editing"};
    app.require_subcommand(1);

    // compress / decompress
    std::string in_path, out_path;
    auto* compress = app.add_subcommand("compress", "parse a file into an archive");
    compress->add_option("in", in_path)->required();
    compress->add_option("out", out_path)->required();
    auto* decompress_cmd = app.add_subcommand("decompress", "decode an archive");
    decompress_cmd->add_option("in", in_path)->required();
    decompress_cmd->add_option("out", out_path)->required();

    // extract
    std::size_t start = 0, len = 0;
    std::string extract_out;
    auto* extract_cmd = app.add_subcommand("extract", "decode a range without full decompression");
    extract_cmd->add_option("in", in_path)->required();
    extract_cmd->add_option("--start", start)->required();
    extract_cmd->add_option("--len", len)->required();
    extract_cmd->add_option("--out", extract_out);

    // edit
    std::size_t at = 0, end = 0;
    std::string insert_file, insert_hex;
    bool empty_payload = false;
    auto* edit_cmd = app.add_subcommand("edit", "splice bytes into an archive in place");
    edit_cmd->add_option("in", in_path)->required();
    edit_cmd->add_option("--at", at)->required();
    edit_cmd->add_option("--end", end)->required();
    auto* opt_file = edit_cmd->add_option("--insert-file", insert_file);
    auto* opt_hex = edit_cmd->add_option("--insert-hex", insert_hex);
    auto* opt_empty = edit_cmd->add_flag("--empty", empty_payload);
    opt_file->excludes(opt_hex)->excludes(opt_empty);
    opt_hex->excludes(opt_empty);

    // gen
    std::size_t gen_bytes = 0, gen_count = 0;
    double gen_xi = 0.0, gen_c = 0.5;
    std::uint64_t gen_seed = 0;
    bool gen_fir = false;
    std::string out_dir;
    auto* gen_cmd = app.add_subcommand("gen", "generate calibrated-entropy strings");
    gen_cmd->add_option("--bytes", gen_bytes)->required();
    gen_cmd->add_option("--count", gen_count)->required();
    gen_cmd->add_option("--xi", gen_xi)->required();
    gen_cmd->add_option("--c", gen_c)->required();
    gen_cmd->add_option("--seed", gen_seed)->required();
    gen_cmd->add_flag("--fir", gen_fir);
    gen_cmd->add_option("--out-dir", out_dir)->required();

    // eval
    std::string mode, corpus_dir, csv_path;
    std::uint64_t eval_seed = 0;
    bool calibrated = false;
    auto* eval_cmd = app.add_subcommand("eval", "measure modification ratios");
    eval_cmd->add_option("mode", mode)->required()->check(CLI::IsMember({"incremental", "sizes", "positions"}));
    eval_cmd->add_option("--corpus", corpus_dir);
    eval_cmd->add_option("--seed", eval_seed)->required();
    eval_cmd->add_option("--out", csv_path)->required();
    eval_cmd->add_flag("--calibrated", calibrated);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compress->parsed()) {
            write_file(out_path, lzend::serialize(lzend::parse(read_file(in_path))));
        } else if (decompress_cmd->parsed()) {
            write_file(out_path, lzend::decompress(lzend::deserialize(read_file(in_path))));
        } else if (extract_cmd->parsed()) {
            const ByteString piece = lzend::extract(lzend::deserialize(read_file(in_path)), start, len);
            if (extract_out.empty()) {
                std::fwrite(piece.data(), 1, piece.size(), stdout);
            } else {
                write_file(extract_out, piece);
            }
        } else if (edit_cmd->parsed()) {
            if (!*opt_file && !*opt_hex && !*opt_empty) {
                std::cerr << "edit: one of --insert-file/--insert-hex/--empty is required\n";
                return 2;
            }
            lzend::EditRequest req;
            req.begin = at;
            req.end = end;
            if (*opt_file) req.payload = read_file(insert_file);
            if (*opt_hex) req.payload = decode_hex(insert_hex);
            write_file(in_path, lzend::serialize(lzend::modify(lzend::deserialize(read_file(in_path)), req)));
        } else if (gen_cmd->parsed()) {
            lzend::CalibratedSpec spec;
            spec.n_bytes = gen_bytes;
            spec.xi = gen_xi;
            spec.threshold = gen_c;
            spec.fir = gen_fir;
            spec.seed = gen_seed;
            std::filesystem::create_directories(out_dir);
            const auto strings = lzend::gen_corpus(spec, gen_count);
            for (std::size_t k = 0; k < strings.size(); ++k) {
                char name[64];
                std::snprintf(name, sizeof name, "cal_xi%g_%zu.bin", gen_xi, k);
                write_file((std::filesystem::path(out_dir) / name).string(), strings[k]);
            }
        } else if (eval_cmd->parsed()) {
            lzend::Corpus corpus;
            if (!corpus_dir.empty()) corpus = lzend::load_corpus_dir(corpus_dir);
            if (calibrated) {
                lzend::Corpus cal = lzend::calibrated_corpus(eval_seed);
                for (auto& f : cal.files) corpus.files.push_back(std::move(f));
            }
            if (corpus.files.empty()) {
                std::cerr << "eval: no corpus files (pass --corpus and/or --calibrated)\n";
                return 2;
            }
            std::vector<lzend::MrRecord> records;
            if (mode == "incremental") records = lzend::run_incremental(corpus, eval_seed);
            if (mode == "sizes") records = lzend::run_sizes(corpus, eval_seed);
            if (mode == "positions") records = lzend::run_positions(corpus, eval_seed);
            write_file(csv_path, lzend::emit_report(std::move(records)));
        }
    } catch (const lzend::format_error& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const lzend::corruption_error& e) {
        std::cerr << "corruption error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
