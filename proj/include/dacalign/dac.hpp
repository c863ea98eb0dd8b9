#pragma once

#include <cstddef>
#include <vector>

#include "dacalign/core.hpp"
#include "dacalign/dp_aligner.hpp"
#include "dacalign/embed.hpp"
#include "dacalign/miner.hpp"

namespace dacalign {

struct DacConfig {
    double cos_threshold = 0.6;
    std::size_t k_nn = 4;
    /// Chunks with more sentences than this on either side are re-mined or banded.
    std::size_t max_chunk = 200;
    std::size_t band = 10;
    std::size_t max_depth = 3;
    /// Worker threads for k-NN rows and chunk alignment. Output does not depend on it.
    std::size_t jobs = 1;
    BeadSet beads = BeadSet::standard();
};

/// Throws ValidationError naming the offending field.
void validate(const DacConfig& config);

struct DacStats {
    std::size_t chunks = 0;          // chunks produced by the global segmentation
    std::size_t recursive_splits = 0;
    std::size_t banded_chunks = 0;
    std::size_t full_chunks = 0;     // chunks aligned with the unrestricted DP
    double mining_seconds = 0.0;     // global delimiter mining
    double alignment_seconds = 0.0;  // segmentation, chunk alignment (incl. local re-mining) and merge

    DacStats& operator+=(const DacStats& other);
};

struct DacResult {
    AlignmentSet alignment;
    /// Hard delimiters from the global pass.
    std::vector<Delimiter> delimiters;
    /// Hard delimiters found by re-mining inside oversized chunks.
    std::vector<Delimiter> local_delimiters;
    DacStats stats;
};

/// Candidate mining, longest monotone chain and the triple rule over the rows in
/// `chunk`. Returned indices are document-global. Empty when either side is empty.
struct MiningResult {
    std::vector<Candidate> chain;
    std::vector<Delimiter> delimiters;
};
MiningResult mine_hard_delimiters(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, const Chunk& chunk,
                                  const DacConfig& config, std::size_t jobs = 1);

/// Whole-document mining, as used by dac_align's global pass.
std::vector<Delimiter> mine_hard_delimiters(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                            const DacConfig& config);

struct ChunkResult {
    ChunkAlignment alignment;
    std::vector<Delimiter> delimiters;
    DacStats stats;
};

/// Aligns an oversized chunk: re-mines hard delimiters inside it and recurses while
/// depth < max_depth; otherwise bands the DP around the local monotone chain, or
/// runs the full DP when there are no anchors.
ChunkResult recurse_or_band(const Chunk& chunk, const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                            const BeadScorer& scorer, const DacConfig& config, std::size_t depth);

/// Concatenates fixed beads and chunk alignments in document order. Throws
/// ValidationError naming the first gap or overlap.
AlignmentSet merge(const std::vector<Bead>& fixed_beads, const std::vector<ChunkAlignment>& chunk_alignments,
                   std::size_t n_src, std::size_t n_tgt);

/// Divide-and-conquer alignment of a document pair. Embedding row counts must match
/// the scorer's document sizes.
DacResult dac_align(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, const BeadScorer& scorer,
                    const DacConfig& config);

}  // namespace dacalign
