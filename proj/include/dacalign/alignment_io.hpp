#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dacalign/core.hpp"

namespace dacalign {

// Alignment text format: one bead per line, `i1,i2,...:j1,j2,...` with ascending
// 0-based indices. An empty side is the empty string (`:3` is 0-to-1, `2:` is 1-to-0).

/// Formats one bead, e.g. "3,4:5".
std::string format_bead(const Bead& bead);

void write_alignment(std::ostream& out, const AlignmentSet& alignment);

/// Parses beads; n_src and n_tgt are set to one past the largest index on each side.
/// Empty spans are placed at the running cursor of their side. Does not validate coverage.
AlignmentSet read_alignment(std::istream& in);
AlignmentSet read_alignment_file(const std::filesystem::path& path);

/// Delimiter listing: `i<TAB>j<TAB>cosine<TAB>margin`, scores with 6 decimals.
void write_delimiters(std::ostream& out, const std::vector<Delimiter>& delimiters);

/// Reads a delimiter listing; only the first two columns are required.
std::vector<Delimiter> read_delimiters(std::istream& in);
std::vector<Delimiter> read_delimiters_file(const std::filesystem::path& path);

}  // namespace dacalign
