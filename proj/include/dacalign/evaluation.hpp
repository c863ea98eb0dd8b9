#pragma once

#include <vector>

#include "dacalign/core.hpp"

namespace dacalign {

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// P, R and F1 from counts; any 0/0 ratio is 0.
Prf prf_from_counts(std::size_t correct, std::size_t predicted, std::size_t reference);

/// Strict alignment metrics: null beads are dropped from both sides, and a test bead
/// is correct only if gold has a bead with identical source and target spans.
/// Throws ValidationError when the two sets cover different document sizes.
Prf strict_prf(const AlignmentSet& test, const AlignmentSet& gold);

/// 1-to-1 gold beads whose preceding and following beads are both 1-to-1.
std::vector<Delimiter> true_hard_delimiters(const AlignmentSet& gold);

/// Exact (i, j) matching of found delimiters against true_hard_delimiters(gold).
Prf delimiter_prf(const std::vector<Delimiter>& found, const AlignmentSet& gold);

}  // namespace dacalign
