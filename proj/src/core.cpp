#include "dacalign/core.hpp"

#include <algorithm>

namespace dacalign {

std::string to_string(BeadType type) {
    return std::to_string(type.src) + "-" + std::to_string(type.tgt);
}

bool Bead::same_spans(const Bead& other) const {
    auto side_equal = [](const Span& a, const Span& b) {
        return (a.empty() && b.empty()) || a == b;
    };
    return side_equal(src, other.src) && side_equal(tgt, other.tgt);
}

namespace {

// Walks beads in order against the expected cursors; shared by the document and chunk checks.
std::optional<Violation> check_partition(const std::vector<Bead>& beads, Span src_range, Span tgt_range) {
    std::size_t s = src_range.begin;
    std::size_t t = tgt_range.begin;

    auto side = [](const Span& span, std::size_t& cursor, std::size_t limit, const char* name,
                   std::size_t k) -> std::optional<Violation> {
        if (span.empty()) {
            return std::nullopt;
        }
        if (span.begin > span.end) {
            return Violation{k, std::string(name) + " span reversed at bead " + std::to_string(k)};
        }
        if (span.begin < cursor) {
            return Violation{k, std::string(name) + " overlap at bead " + std::to_string(k)};
        }
        if (span.begin > cursor) {
            return Violation{k, std::string(name) + " index " + std::to_string(cursor) +
                                    " uncovered (gap before bead " + std::to_string(k) + ")"};
        }
        if (span.end > limit) {
            return Violation{k, std::string(name) + " index " + std::to_string(limit) +
                                    " out of range at bead " + std::to_string(k)};
        }
        cursor = span.end;
        return std::nullopt;
    };

    for (std::size_t k = 0; k < beads.size(); ++k) {
        const Bead& bead = beads[k];
        if (bead.src.empty() && bead.tgt.empty()) {
            return Violation{k, "empty bead at " + std::to_string(k)};
        }
        if (auto v = side(bead.src, s, src_range.end, "source", k)) {
            return v;
        }
        if (auto v = side(bead.tgt, t, tgt_range.end, "target", k)) {
            return v;
        }
    }
    if (s < src_range.end) {
        return Violation{beads.size(), "source index " + std::to_string(s) + " uncovered"};
    }
    if (t < tgt_range.end) {
        return Violation{beads.size(), "target index " + std::to_string(t) + " uncovered"};
    }
    return std::nullopt;
}

}  // namespace

std::optional<Violation> validate_alignment_set(const AlignmentSet& alignment) {
    return check_partition(alignment.beads, {0, alignment.n_src}, {0, alignment.n_tgt});
}

std::optional<Violation> validate_alignment_set(const AlignmentSet& alignment,
                                                const std::vector<BeadType>& allowed) {
    if (auto v = validate_alignment_set(alignment)) {
        return v;
    }
    for (std::size_t k = 0; k < alignment.beads.size(); ++k) {
        BeadType type = alignment.beads[k].type();
        if (std::find(allowed.begin(), allowed.end(), type) == allowed.end()) {
            return Violation{k, "bead type " + to_string(type) + " not allowed at bead " + std::to_string(k)};
        }
    }
    return std::nullopt;
}

std::optional<Violation> validate_chunk_beads(const std::vector<Bead>& beads, const Chunk& chunk) {
    return check_partition(beads, chunk.src, chunk.tgt);
}

bool is_strictly_monotone(const std::vector<Delimiter>& delimiters) {
    for (std::size_t k = 1; k < delimiters.size(); ++k) {
        if (delimiters[k].src_idx <= delimiters[k - 1].src_idx ||
            delimiters[k].tgt_idx <= delimiters[k - 1].tgt_idx) {
            return false;
        }
    }
    return true;
}

}  // namespace dacalign
