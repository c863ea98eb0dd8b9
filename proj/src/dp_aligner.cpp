#include "dacalign/dp_aligner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "dacalign/error.hpp"

namespace dacalign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint8_t kNoBack = std::numeric_limits<std::uint8_t>::max();

// Allowed lattice columns per row: row i covers nodes (i, lo[i]) .. (i, hi[i]).
struct RowRanges {
    std::vector<std::size_t> lo;
    std::vector<std::size_t> hi;
};

RowRanges full_ranges(std::size_t ns, std::size_t nt) {
    return {std::vector<std::size_t>(ns + 1, 0), std::vector<std::size_t>(ns + 1, nt)};
}

// DP over the lattice nodes (i, j) = sentences consumed on each side of the chunk.
// Costs are kept for the last max_src + 1 rows only; backpointers for all allowed nodes.
ChunkAlignment solve(const Chunk& chunk, const BeadScorer& scorer, const BeadSet& beads, const RowRanges& ranges) {
    const std::size_t ns = chunk.src.size();
    const std::size_t nt = chunk.tgt.size();
    const auto& types = beads.types();
    const std::size_t window = beads.max_src() + 1;

    std::vector<std::vector<double>> cost_rows(window);
    std::vector<std::vector<std::uint8_t>> back(ns + 1);

    auto cost_at = [&](std::size_t i, std::size_t j) -> double {
        if (j < ranges.lo[i] || j > ranges.hi[i]) {
            return kInf;
        }
        return cost_rows[i % window][j - ranges.lo[i]];
    };

    for (std::size_t i = 0; i <= ns; ++i) {
        const std::size_t lo = ranges.lo[i];
        const std::size_t hi = ranges.hi[i];
        auto& row_cost = cost_rows[i % window];
        auto& row_back = back[i];
        row_cost.assign(hi - lo + 1, kInf);
        row_back.assign(hi - lo + 1, kNoBack);

        for (std::size_t j = lo; j <= hi; ++j) {
            if (i == 0 && j == 0) {
                row_cost[0] = 0.0;
                continue;
            }
            double best = kInf;
            std::uint8_t best_type = kNoBack;
            for (std::size_t t = 0; t < types.size(); ++t) {
                const BeadType type = types[t];
                if (type.src > i || type.tgt > j) {
                    continue;
                }
                double prev = cost_at(i - type.src, j - type.tgt);
                if (prev == kInf) {
                    continue;
                }
                Span src{chunk.src.begin + i - type.src, chunk.src.begin + i};
                Span tgt{chunk.tgt.begin + j - type.tgt, chunk.tgt.begin + j};
                double c = scorer.cost(src, tgt);
                if (std::isnan(c)) {
                    continue;
                }
                double total = prev + c;
                if (total < best) {
                    best = total;
                    best_type = static_cast<std::uint8_t>(t);
                }
            }
            row_cost[j - lo] = best;
            row_back[j - lo] = best_type;
        }
    }

    ChunkAlignment out;
    out.chunk = chunk;
    out.cost = cost_at(ns, nt);
    if (out.cost == kInf) {
        throw ValidationError("no finite-cost alignment exists for chunk");
    }
    std::size_t i = ns;
    std::size_t j = nt;
    while (i > 0 || j > 0) {
        const BeadType type = types[back[i][j - ranges.lo[i]]];
        out.beads.push_back({{chunk.src.begin + i - type.src, chunk.src.begin + i},
                             {chunk.tgt.begin + j - type.tgt, chunk.tgt.begin + j}});
        i -= type.src;
        j -= type.tgt;
    }
    std::reverse(out.beads.begin(), out.beads.end());
    return out;
}

void check_chunk(const Chunk& chunk, const BeadScorer& scorer) {
    if (chunk.src.begin > chunk.src.end || chunk.tgt.begin > chunk.tgt.end ||
        chunk.src.end > scorer.source_size() || chunk.tgt.end > scorer.target_size()) {
        throw ValidationError("chunk lies outside the scored documents");
    }
}

// Lattice nodes along a piecewise-linear path from (0,0) through each anchor bead to (ns, nt).
struct Point {
    std::size_t x;
    std::size_t y;
};

std::vector<Point> guide_path(const Chunk& chunk, const std::vector<Anchor>& anchors) {
    std::vector<Point> path{{0, 0}};
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        const Anchor& a = anchors[k];
        if (a.src < chunk.src.begin || a.src >= chunk.src.end || a.tgt < chunk.tgt.begin || a.tgt >= chunk.tgt.end) {
            throw ValidationError("anchor (" + std::to_string(a.src) + ", " + std::to_string(a.tgt) +
                                  ") lies outside the chunk");
        }
        if (k > 0 && (a.src <= anchors[k - 1].src || a.tgt <= anchors[k - 1].tgt)) {
            throw ValidationError("anchors are not strictly monotone at index " + std::to_string(k));
        }
        std::size_t x = a.src - chunk.src.begin;
        std::size_t y = a.tgt - chunk.tgt.begin;
        path.push_back({x, y});
        path.push_back({x + 1, y + 1});
    }
    path.push_back({chunk.src.size(), chunk.tgt.size()});
    return path;
}

RowRanges band_ranges(const Chunk& chunk, const std::vector<Anchor>& anchors, std::size_t band) {
    const std::size_t ns = chunk.src.size();
    const std::size_t nt = chunk.tgt.size();
    const auto path = guide_path(chunk, anchors);

    // Lowest and highest y of the guide path at each integer x.
    std::vector<double> path_lo(ns + 1, kInf);
    std::vector<double> path_hi(ns + 1, -kInf);
    // Convex hull per row of the unit-step staircase that follows the path.
    std::vector<std::size_t> stair_lo(ns + 1, nt);
    std::vector<std::size_t> stair_hi(ns + 1, 0);

    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const Point p = path[s];
        const Point q = path[s + 1];
        const std::size_t dx = q.x - p.x;
        const std::size_t dy = q.y - p.y;
        if (dx == 0) {
            path_lo[p.x] = std::min(path_lo[p.x], double(p.y));
            path_hi[p.x] = std::max(path_hi[p.x], double(q.y));
        } else {
            for (std::size_t x = p.x; x <= q.x; ++x) {
                double y = double(p.y) + double(dy) * double(x - p.x) / double(dx);
                path_lo[x] = std::min(path_lo[x], y);
                path_hi[x] = std::max(path_hi[x], y);
            }
        }
        const std::size_t steps = std::max(dx, dy);
        for (std::size_t t = 0; t <= steps; ++t) {
            std::size_t x = p.x;
            std::size_t y = p.y;
            if (steps > 0) {
                x += (2 * t * dx + steps) / (2 * steps);
                y += (2 * t * dy + steps) / (2 * steps);
            }
            stair_lo[x] = std::min(stair_lo[x], y);
            stair_hi[x] = std::max(stair_hi[x], y);
        }
    }

    // A node (i, j) is within Chebyshev distance `band` of the path iff some path point
    // with x in [i - band, i + band] has y in [j - band, j + band]. The path is monotone,
    // so those y values span [path_lo(i - band), path_hi(i + band)].
    RowRanges ranges{std::vector<std::size_t>(ns + 1), std::vector<std::size_t>(ns + 1)};
    const double b = double(band);
    for (std::size_t i = 0; i <= ns; ++i) {
        std::size_t left = i >= band ? i - band : 0;
        std::size_t right = std::min(ns, i + band);
        double lo = std::ceil(path_lo[left] - b - 1e-9);
        double hi = std::floor(path_hi[right] + b + 1e-9);
        std::size_t row_lo = lo <= 0.0 ? 0 : std::min(nt, static_cast<std::size_t>(lo));
        std::size_t row_hi = hi <= 0.0 ? 0 : std::min(nt, static_cast<std::size_t>(hi));
        ranges.lo[i] = std::min(row_lo, stair_lo[i]);
        ranges.hi[i] = std::max(row_hi, stair_hi[i]);
    }
    return ranges;
}

}  // namespace

BeadSet::BeadSet(std::vector<BeadType> types) : types_(std::move(types)) {
    for (BeadType required : {BeadType{1, 1}, BeadType{1, 0}, BeadType{0, 1}}) {
        if (!contains(required)) {
            throw ValidationError("bead set must contain " + to_string(required));
        }
    }
    if (types_.size() >= kNoBack) {
        throw ValidationError("too many bead types");
    }
    for (BeadType type : types_) {
        if (type.src == 0 && type.tgt == 0) {
            throw ValidationError("bead type 0-0 is not allowed");
        }
        max_src_ = std::max(max_src_, type.src);
        max_tgt_ = std::max(max_tgt_, type.tgt);
    }
}

BeadSet BeadSet::standard() {
    return BeadSet({{1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}});
}

BeadSet BeadSet::extended() {
    return BeadSet({{1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1}, {1, 4}, {4, 1}, {1, 5}, {5, 1}});
}

bool BeadSet::contains(BeadType type) const {
    return std::find(types_.begin(), types_.end(), type) != types_.end();
}

ChunkAlignment align_chunk(const Chunk& chunk, const BeadScorer& scorer, const BeadSet& beads) {
    check_chunk(chunk, scorer);
    return solve(chunk, scorer, beads, full_ranges(chunk.src.size(), chunk.tgt.size()));
}

ChunkAlignment banded_align(const Chunk& chunk, const BeadScorer& scorer, const BeadSet& beads,
                            const std::vector<Anchor>& anchors, std::size_t band) {
    check_chunk(chunk, scorer);
    return solve(chunk, scorer, beads, band_ranges(chunk, anchors, band));
}

double alignment_cost(const std::vector<Bead>& beads, const BeadScorer& scorer) {
    double total = 0.0;
    for (const Bead& bead : beads) {
        total += scorer.cost(bead.src, bead.tgt);
    }
    return total;
}

}  // namespace dacalign
