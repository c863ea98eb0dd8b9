#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dacalign {

/// Half-open range [begin, end) of 0-based sentence indices.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    constexpr std::size_t size() const { return end - begin; }
    constexpr bool empty() const { return begin == end; }

    friend constexpr bool operator==(const Span&, const Span&) = default;
    friend constexpr auto operator<=>(const Span&, const Span&) = default;
};

/// Number of source and target sentences in a bead, e.g. {2, 1} for a 2-to-1 bead.
struct BeadType {
    std::size_t src = 0;
    std::size_t tgt = 0;

    bool is_null() const { return src == 0 || tgt == 0; }

    friend constexpr bool operator==(const BeadType&, const BeadType&) = default;
    friend constexpr auto operator<=>(const BeadType&, const BeadType&) = default;
};

std::string to_string(BeadType type);

/// One alignment unit: a contiguous source span paired with a contiguous target span.
///
/// Either span may be empty (a null bead), but not both. The position of an empty
/// span carries no meaning.
struct Bead {
    Span src;
    Span tgt;

    BeadType type() const { return {src.size(), tgt.size()}; }
    bool is_null() const { return src.empty() || tgt.empty(); }

    /// Same spans on both sides. Positions of empty spans are ignored.
    bool same_spans(const Bead& other) const;

    friend bool operator==(const Bead&, const Bead&) = default;
};

inline Bead one_to_one(std::size_t i, std::size_t j) { return {{i, i + 1}, {j, j + 1}}; }

/// Ordered, non-crossing bead sequence partitioning [0, n_src) and [0, n_tgt).
struct AlignmentSet {
    std::vector<Bead> beads;
    std::size_t n_src = 0;
    std::size_t n_tgt = 0;

    friend bool operator==(const AlignmentSet&, const AlignmentSet&) = default;
};

/// A 1-to-1 pair used as a hard split point, with its similarity evidence.
struct Delimiter {
    std::size_t src_idx = 0;
    std::size_t tgt_idx = 0;
    double cosine = 0.0;
    double margin = 0.0;
};

/// Rectangular sub-problem: a source range paired with a target range.
struct Chunk {
    Span src;
    Span tgt;

    bool empty() const { return src.empty() && tgt.empty(); }

    friend bool operator==(const Chunk&, const Chunk&) = default;
};

struct Violation {
    std::size_t bead_index = 0;
    std::string message;
};

/// Checks the partition and monotonicity invariants of an AlignmentSet.
///
/// Returns nothing when the set is valid; otherwise the first violated invariant,
/// with the offending bead index (beads.size() for trailing coverage gaps).
std::optional<Violation> validate_alignment_set(const AlignmentSet& alignment);

/// As above, additionally requiring every bead type to be in `allowed`.
std::optional<Violation> validate_alignment_set(const AlignmentSet& alignment,
                                                const std::vector<BeadType>& allowed);

/// Same check restricted to a chunk: beads must exactly partition the chunk's ranges.
std::optional<Violation> validate_chunk_beads(const std::vector<Bead>& beads, const Chunk& chunk);

/// True iff delimiters are strictly increasing in both coordinates.
bool is_strictly_monotone(const std::vector<Delimiter>& delimiters);

}  // namespace dacalign
