#include "dacalign/dac.hpp"

#include <algorithm>
#include <chrono>

#include "dacalign/error.hpp"
#include "dacalign/parallel.hpp"

namespace dacalign {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool oversized(const Chunk& chunk, const DacConfig& config) {
    return chunk.src.size() > config.max_chunk || chunk.tgt.size() > config.max_chunk;
}

ChunkResult align_piece(const Chunk& chunk, const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                        const BeadScorer& scorer, const DacConfig& config, std::size_t depth) {
    if (oversized(chunk, config)) {
        return recurse_or_band(chunk, src, tgt, scorer, config, depth);
    }
    ChunkResult result;
    result.alignment = align_chunk(chunk, scorer, config.beads);
    result.stats.full_chunks = 1;
    return result;
}

// Fixed beads and chunk alignments ordered by where each piece starts.
std::vector<Bead> concatenate(const std::vector<Bead>& fixed_beads,
                              const std::vector<ChunkAlignment>& chunk_alignments) {
    struct Piece {
        std::size_t src_start;
        std::size_t tgt_start;
        const Bead* fixed;
        const ChunkAlignment* chunk;
    };
    std::vector<Piece> pieces;
    pieces.reserve(fixed_beads.size() + chunk_alignments.size());
    for (const Bead& bead : fixed_beads) {
        pieces.push_back({bead.src.begin, bead.tgt.begin, &bead, nullptr});
    }
    for (const ChunkAlignment& ca : chunk_alignments) {
        pieces.push_back({ca.chunk.src.begin, ca.chunk.tgt.begin, nullptr, &ca});
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        return a.src_start < b.src_start || (a.src_start == b.src_start && a.tgt_start < b.tgt_start);
    });

    std::vector<Bead> out;
    for (const Piece& piece : pieces) {
        if (piece.fixed) {
            out.push_back(*piece.fixed);
        } else {
            out.insert(out.end(), piece.chunk->beads.begin(), piece.chunk->beads.end());
        }
    }
    return out;
}

}  // namespace

void validate(const DacConfig& config) {
    if (!(config.cos_threshold >= -1.0 && config.cos_threshold <= 1.0)) {
        throw ValidationError("--threshold must lie in [-1, 1]");
    }
    if (config.k_nn == 0) {
        throw ValidationError("--knn must be positive");
    }
    if (config.max_chunk == 0) {
        throw ValidationError("--max-chunk must be positive");
    }
    if (config.jobs == 0) {
        throw ValidationError("--jobs must be positive");
    }
}

DacStats& DacStats::operator+=(const DacStats& other) {
    chunks += other.chunks;
    recursive_splits += other.recursive_splits;
    banded_chunks += other.banded_chunks;
    full_chunks += other.full_chunks;
    mining_seconds += other.mining_seconds;
    alignment_seconds += other.alignment_seconds;
    return *this;
}

MiningResult mine_hard_delimiters(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, const Chunk& chunk,
                                  const DacConfig& config, std::size_t jobs) {
    MiningResult result;
    if (chunk.src.empty() || chunk.tgt.empty()) {
        return result;
    }
    const bool whole = chunk.src.size() == src.rows() && chunk.tgt.size() == tgt.rows();
    EmbeddingMatrix local_src = whole ? EmbeddingMatrix() : src.slice(chunk.src);
    EmbeddingMatrix local_tgt = whole ? EmbeddingMatrix() : tgt.slice(chunk.tgt);
    const EmbeddingMatrix& s = whole ? src : local_src;
    const EmbeddingMatrix& t = whole ? tgt : local_tgt;

    // Small chunks cannot supply k_nn neighbors; use as many as exist.
    const std::size_t k = std::min({config.k_nn, s.rows(), t.rows()});
    auto candidates = mine_candidates(s, t, k, config.cos_threshold, jobs);
    auto chain = longest_monotone_chain(std::move(candidates));
    auto delimiters = select_hard_delimiters(chain, s.rows(), t.rows());

    for (auto& c : chain) {
        c.src += chunk.src.begin;
        c.tgt += chunk.tgt.begin;
    }
    for (auto& d : delimiters) {
        d.src_idx += chunk.src.begin;
        d.tgt_idx += chunk.tgt.begin;
    }
    result.chain = std::move(chain);
    result.delimiters = std::move(delimiters);
    return result;
}

std::vector<Delimiter> mine_hard_delimiters(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                            const DacConfig& config) {
    validate(config);
    if (src.rows() > 0 && tgt.rows() > 0 && src.dim() != tgt.dim()) {
        throw ValidationError("source and target embeddings differ in dimension");
    }
    Chunk whole{{0, src.rows()}, {0, tgt.rows()}};
    return mine_hard_delimiters(src, tgt, whole, config, config.jobs).delimiters;
}

ChunkResult recurse_or_band(const Chunk& chunk, const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                            const BeadScorer& scorer, const DacConfig& config, std::size_t depth) {
    ChunkResult result;
    MiningResult mined = mine_hard_delimiters(src, tgt, chunk, config, 1);

    if (!mined.delimiters.empty() && depth < config.max_depth) {
        Segmentation seg = segment(chunk, mined.delimiters);
        std::vector<ChunkAlignment> pieces;
        pieces.reserve(seg.chunks.size());
        result.delimiters = mined.delimiters;
        result.stats.recursive_splits = 1;
        for (const Chunk& sub : seg.chunks) {
            ChunkResult part = align_piece(sub, src, tgt, scorer, config, depth + 1);
            result.stats += part.stats;
            result.delimiters.insert(result.delimiters.end(), part.delimiters.begin(), part.delimiters.end());
            pieces.push_back(std::move(part.alignment));
        }
        std::sort(result.delimiters.begin(), result.delimiters.end(),
                  [](const Delimiter& a, const Delimiter& b) { return a.src_idx < b.src_idx; });

        result.alignment.chunk = chunk;
        result.alignment.beads = concatenate(seg.fixed_beads, pieces);
        if (auto v = validate_chunk_beads(result.alignment.beads, chunk)) {
            throw ValidationError("internal error: recursive alignment is invalid: " + v->message);
        }
        result.alignment.cost = alignment_cost(result.alignment.beads, scorer);
        return result;
    }

    if (mined.chain.empty()) {
        result.alignment = align_chunk(chunk, scorer, config.beads);
        result.stats.full_chunks = 1;
        return result;
    }
    std::vector<Anchor> anchors;
    anchors.reserve(mined.chain.size());
    for (const Candidate& c : mined.chain) {
        anchors.push_back({c.src, c.tgt});
    }
    result.alignment = banded_align(chunk, scorer, config.beads, anchors, config.band);
    result.stats.banded_chunks = 1;
    return result;
}

AlignmentSet merge(const std::vector<Bead>& fixed_beads, const std::vector<ChunkAlignment>& chunk_alignments,
                   std::size_t n_src, std::size_t n_tgt) {
    AlignmentSet out{concatenate(fixed_beads, chunk_alignments), n_src, n_tgt};
    if (auto v = validate_alignment_set(out)) {
        throw ValidationError("coverage violation: " + v->message);
    }
    return out;
}

DacResult dac_align(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, const BeadScorer& scorer,
                    const DacConfig& config) {
    validate(config);
    if (src.rows() != scorer.source_size() || tgt.rows() != scorer.target_size()) {
        throw ValidationError("embedding rows (" + std::to_string(src.rows()) + ", " + std::to_string(tgt.rows()) +
                              ") do not match sentence counts (" + std::to_string(scorer.source_size()) + ", " +
                              std::to_string(scorer.target_size()) + ")");
    }

    DacResult result;
    auto start = Clock::now();
    result.delimiters = mine_hard_delimiters(src, tgt, config);
    result.stats.mining_seconds = seconds_since(start);

    start = Clock::now();
    Segmentation seg = segment(src.rows(), tgt.rows(), result.delimiters);
    std::vector<ChunkResult> parts(seg.chunks.size());
    parallel_for(seg.chunks.size(), config.jobs, [&](std::size_t c) {
        parts[c] = align_piece(seg.chunks[c], src, tgt, scorer, config, 0);
    });

    std::vector<ChunkAlignment> pieces;
    pieces.reserve(parts.size());
    for (auto& part : parts) {
        result.stats += part.stats;
        result.local_delimiters.insert(result.local_delimiters.end(), part.delimiters.begin(),
                                       part.delimiters.end());
        pieces.push_back(std::move(part.alignment));
    }
    result.stats.chunks = seg.chunks.size();
    result.alignment = merge(seg.fixed_beads, pieces, src.rows(), tgt.rows());
    result.stats.alignment_seconds = seconds_since(start);
    return result;
}

}  // namespace dacalign
