#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include "dacalign/alignment_io.hpp"
#include "dacalign/dac.hpp"
#include "dacalign/document.hpp"
#include "dacalign/error.hpp"
#include "dacalign/evaluation.hpp"
#include "dacalign/lexical.hpp"
#include "dacalign/simulator.hpp"

namespace dacalign::cli {

namespace {

struct InputFlags {
    std::string src;
    std::string tgt;
    std::string src_emb;
    std::string tgt_emb;
    std::size_t dim = 0;
    std::string out;
};

struct AlignFlags {
    InputFlags io;
    DacConfig config;
    std::string scorer = "gale-church";
    std::string ttable;
    std::string beads = "default";
    bool no_dac = false;
    bool verbose = false;
};

struct SimulateFlags {
    std::vector<std::size_t> n;
    std::vector<double> r;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 42;
    bool exact = false;
    std::size_t jobs = 1;
    std::string out;
};

struct EvaluateFlags {
    std::string test;
    std::string gold;
    bool delimiters = false;
};

// Writes to --out when given, otherwise to the caller's stream.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw IoError("cannot open output file " + path);
            }
            stream_ = file_.get();
        }
    }

    std::ostream& stream() { return *stream_; }

    void finish() {
        stream_->flush();
        if (!*stream_) {
            throw IoError("error writing output");
        }
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

EmbeddingMatrix load_checked(const std::string& path, std::size_t dim, const char* flag,
                             const std::vector<std::string>* sentences, const char* doc_flag) {
    if (path.empty()) {
        throw ValidationError(std::string(flag) + " is required");
    }
    if (dim == 0) {
        throw ValidationError("--dim is required and must be positive");
    }
    EmbeddingMatrix m = load_embeddings(path, dim);
    if (sentences && m.rows() != sentences->size()) {
        throw ValidationError(fmt::format("{} has {} rows but {} has {} sentences", flag, m.rows(), doc_flag,
                                          sentences->size()));
    }
    return m;
}

void add_mining_flags(CLI::App* cmd, DacConfig& config) {
    cmd->add_option("--threshold", config.cos_threshold, "Minimum cosine for mined 1-1 pairs")
        ->check(CLI::Range(-1.0, 1.0));
    cmd->add_option("--knn", config.k_nn, "Neighbors in the margin denominators")->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

void add_embedding_flags(CLI::App* cmd, InputFlags& io) {
    cmd->add_option("--src-emb", io.src_emb, "Source embeddings: raw little-endian float32, row-major");
    cmd->add_option("--tgt-emb", io.tgt_emb, "Target embeddings: raw little-endian float32, row-major");
    cmd->add_option("--dim", io.dim, "Embedding dimension");
}

int cmd_align(const AlignFlags& flags, std::ostream& out, std::ostream& err) {
    auto src_sentences = read_sentences(flags.io.src);
    auto tgt_sentences = read_sentences(flags.io.tgt);

    DacConfig config = flags.config;
    config.beads = flags.beads == "extended" ? BeadSet::extended() : BeadSet::standard();
    validate(config);

    std::unique_ptr<BeadScorer> scorer;
    if (flags.scorer == "lexical") {
        if (flags.ttable.empty()) {
            throw ValidationError("--ttable is required with --scorer lexical");
        }
        TTable table = load_ttable(std::filesystem::path(flags.ttable));
        scorer = std::make_unique<LexicalScorer>(tokenize_all(src_sentences), tokenize_all(tgt_sentences), table);
    } else {
        scorer = std::make_unique<GaleChurchScorer>(char_lengths(src_sentences), char_lengths(tgt_sentences));
    }

    AlignmentSet alignment;
    if (flags.no_dac) {
        Chunk whole{{0, src_sentences.size()}, {0, tgt_sentences.size()}};
        ChunkAlignment full = align_chunk(whole, *scorer, config.beads);
        alignment = {std::move(full.beads), src_sentences.size(), tgt_sentences.size()};
    } else {
        auto src = load_checked(flags.io.src_emb, flags.io.dim, "--src-emb", &src_sentences, "--src");
        auto tgt = load_checked(flags.io.tgt_emb, flags.io.dim, "--tgt-emb", &tgt_sentences, "--tgt");
        DacResult result = dac_align(src, tgt, *scorer, config);
        if (flags.verbose) {
            fmt::print(err, "delimiters: {} global, {} local; chunks: {} ({} full, {} banded, {} split)\n",
                       result.delimiters.size(), result.local_delimiters.size(), result.stats.chunks,
                       result.stats.full_chunks, result.stats.banded_chunks, result.stats.recursive_splits);
            fmt::print(err, "mining: {:.3f}s; alignment: {:.3f}s\n", result.stats.mining_seconds,
                       result.stats.alignment_seconds);
        }
        alignment = std::move(result.alignment);
    }

    Output output(flags.io.out, out);
    write_alignment(output.stream(), alignment);
    output.finish();
    return kOk;
}

int cmd_delimiters(const InputFlags& io, const DacConfig& config, std::ostream& out) {
    std::optional<std::vector<std::string>> src_sentences;
    std::optional<std::vector<std::string>> tgt_sentences;
    if (!io.src.empty()) {
        src_sentences = read_sentences(io.src);
    }
    if (!io.tgt.empty()) {
        tgt_sentences = read_sentences(io.tgt);
    }
    auto src = load_checked(io.src_emb, io.dim, "--src-emb", src_sentences ? &*src_sentences : nullptr, "--src");
    auto tgt = load_checked(io.tgt_emb, io.dim, "--tgt-emb", tgt_sentences ? &*tgt_sentences : nullptr, "--tgt");
    auto delimiters = mine_hard_delimiters(src, tgt, config);

    Output output(io.out, out);
    write_delimiters(output.stream(), delimiters);
    output.finish();
    return kOk;
}

int cmd_simulate(const SimulateFlags& flags, std::ostream& out) {
    for (std::size_t n : flags.n) {
        sim::validate({n, 0.5, flags.trials, flags.seed});
    }
    for (double r : flags.r) {
        sim::validate({1, r, flags.trials, flags.seed});
    }
    auto rows = sim::sweep(flags.n, flags.r, flags.trials, flags.seed, flags.exact, flags.jobs);
    Output output(flags.out, out);
    sim::write_csv(output.stream(), rows);
    output.finish();
    return kOk;
}

int cmd_evaluate(const EvaluateFlags& flags, std::ostream& out) {
    AlignmentSet gold = read_alignment_file(flags.gold);
    if (auto v = validate_alignment_set(gold)) {
        throw ValidationError("--gold: " + v->message);
    }
    Prf prf;
    if (flags.delimiters) {
        prf = delimiter_prf(read_delimiters_file(flags.test), gold);
    } else {
        AlignmentSet test = read_alignment_file(flags.test);
        if (auto v = validate_alignment_set(test)) {
            throw ValidationError("--test: " + v->message);
        }
        prf = strict_prf(test, gold);
    }
    fmt::print(out, "{:.4f}\t{:.4f}\t{:.4f}\n", prf.precision, prf.recall, prf.f1);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Divide-and-conquer sentence alignment with embedding-mined hard delimiters"};
    app.name("dacalign");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    AlignFlags align;
    auto* align_cmd = app.add_subcommand("align", "Align two sentence-per-line documents");
    align_cmd->add_option("--src", align.io.src, "Source sentences, one per line")->required();
    align_cmd->add_option("--tgt", align.io.tgt, "Target sentences, one per line")->required();
    add_embedding_flags(align_cmd, align.io);
    add_mining_flags(align_cmd, align.config);
    align_cmd->add_option("--scorer", align.scorer, "Bead scorer")
        ->check(CLI::IsMember({"gale-church", "lexical"}));
    align_cmd->add_option("--ttable", align.ttable, "Translation table `src tgt prob` (lexical scorer)");
    align_cmd->add_option("--beads", align.beads, "Bead set: default (up to 2-2) or extended (up to 1-5/5-1)")
        ->check(CLI::IsMember({"default", "extended"}));
    align_cmd->add_option("--max-chunk", align.config.max_chunk, "Largest chunk side aligned with the full DP")
        ->check(CLI::PositiveNumber);
    align_cmd->add_option("--band", align.config.band, "Band half-width around anchors for oversized chunks");
    align_cmd->add_option("--max-depth", align.config.max_depth, "Maximum re-mining depth inside chunks");
    align_cmd->add_option("--out", align.io.out, "Output alignment file (default: standard output)");
    align_cmd->add_flag("--no-dac", align.no_dac, "Skip delimiter mining; run the DP on the whole documents");
    align_cmd->add_flag("--verbose", align.verbose, "Report delimiter counts and timings on standard error");

    InputFlags mine;
    DacConfig mine_config;
    auto* mine_cmd = app.add_subcommand("delimiters", "Print mined hard delimiters: i, j, cosine, margin");
    mine_cmd->add_option("--src", mine.src, "Source sentences (optional; checks the embedding row count)");
    mine_cmd->add_option("--tgt", mine.tgt, "Target sentences (optional; checks the embedding row count)");
    add_embedding_flags(mine_cmd, mine);
    add_mining_flags(mine_cmd, mine_config);
    mine_cmd->add_option("--out", mine.out, "Output file (default: standard output)");

    SimulateFlags simulate;
    auto* sim_cmd = app.add_subcommand("simulate", "Expected maximum chunk size by Monte Carlo; CSV n,r,mean,stderr");
    sim_cmd->add_option("--n", simulate.n, "Total alignments (comma-separated list)")->required()->delimiter(',');
    sim_cmd->add_option("--r", simulate.r, "1-to-1 ratio (comma-separated list)")->required()->delimiter(',');
    sim_cmd->add_option("--trials", simulate.trials, "Monte Carlo trials per (n, r)")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", simulate.seed, "Random seed");
    sim_cmd->add_flag("--exact", simulate.exact, "Exhaustive enumeration instead of sampling (n <= 20)");
    sim_cmd->add_option("--jobs", simulate.jobs, "Worker threads (output does not depend on it)")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--out", simulate.out, "Output CSV file (default: standard output)");

    EvaluateFlags evaluate;
    auto* eval_cmd = app.add_subcommand("evaluate", "Strict precision, recall and F1 against a gold alignment");
    eval_cmd->add_option("--test", evaluate.test, "Alignment to score (or delimiter listing with --delimiters)")
        ->required();
    eval_cmd->add_option("--gold", evaluate.gold, "Gold alignment")->required();
    eval_cmd->add_flag("--delimiters", evaluate.delimiters, "Score a delimiter listing against gold hard delimiters");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("dacalign");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (align_cmd->parsed()) {
            return cmd_align(align, out, err);
        }
        if (mine_cmd->parsed()) {
            return cmd_delimiters(mine, mine_config, out);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(simulate, out);
        }
        return cmd_evaluate(evaluate, out);
    } catch (const IoError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kIoError;
    } catch (const ValidationError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kUsageError;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kIoError;
    }
}

}  // namespace dacalign::cli
