#include "dacalign/embed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "dacalign/error.hpp"
#include "dacalign/parallel.hpp"

namespace dacalign {

namespace {

float from_little_endian(const unsigned char* bytes) {
    std::uint32_t bits = std::uint32_t(bytes[0]) | (std::uint32_t(bytes[1]) << 8) |
                         (std::uint32_t(bytes[2]) << 16) | (std::uint32_t(bytes[3]) << 24);
    return std::bit_cast<float>(bits);
}

void to_little_endian(float value, unsigned char* bytes) {
    auto bits = std::bit_cast<std::uint32_t>(value);
    for (int b = 0; b < 4; ++b) {
        bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
    }
}

bool better(const Neighbor& a, const Neighbor& b) {
    return a.score > b.score || (a.score == b.score && a.index < b.index);
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::size_t dim, std::vector<float> values)
    : dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) {
        throw ValidationError("embedding dimension must be positive");
    }
    if (values_.size() % dim_ != 0) {
        throw SizeMismatchError("embedding value count " + std::to_string(values_.size()) +
                                " is not a multiple of dim " + std::to_string(dim_));
    }
    rows_ = values_.size() / dim_;
    zero_flags_.assign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        float* row = values_.data() + i * dim_;
        double sq = 0.0;
        for (std::size_t d = 0; d < dim_; ++d) {
            sq += double(row[d]) * double(row[d]);
        }
        if (sq == 0.0 || !std::isfinite(sq)) {
            std::fill(row, row + dim_, 0.0f);
            zero_flags_[i] = 1;
            zero_rows_.push_back(i);
            continue;
        }
        double inv = 1.0 / std::sqrt(sq);
        for (std::size_t d = 0; d < dim_; ++d) {
            row[d] = static_cast<float>(row[d] * inv);
        }
    }
}

EmbeddingMatrix EmbeddingMatrix::slice(Span range) const {
    if (range.end > rows_ || range.begin > range.end) {
        throw ValidationError("embedding slice out of range");
    }
    EmbeddingMatrix out;
    out.rows_ = range.size();
    out.dim_ = dim_;
    out.values_.assign(values_.begin() + range.begin * dim_, values_.begin() + range.end * dim_);
    out.zero_flags_.assign(zero_flags_.begin() + range.begin, zero_flags_.begin() + range.end);
    for (std::size_t i = 0; i < out.rows_; ++i) {
        if (out.zero_flags_[i]) {
            out.zero_rows_.push_back(i);
        }
    }
    return out;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path, std::size_t dim) {
    if (dim == 0) {
        throw ValidationError("--dim must be positive");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open embedding file " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("error reading embedding file " + path.string());
    }
    const std::size_t row_bytes = 4 * dim;
    if (bytes.size() % row_bytes != 0) {
        throw SizeMismatchError("size mismatch: embedding file " + path.string() + " has " + std::to_string(bytes.size()) +
                                " bytes, not a multiple of 4*dim = " + std::to_string(row_bytes));
    }
    std::vector<float> values(bytes.size() / 4);
    for (std::size_t k = 0; k < values.size(); ++k) {
        values[k] = from_little_endian(bytes.data() + 4 * k);
    }
    return EmbeddingMatrix(dim, std::move(values));
}

void save_embeddings(const std::filesystem::path& path, std::size_t dim, std::span<const float> values) {
    if (dim == 0 || values.size() % dim != 0) {
        throw SizeMismatchError("value count is not a multiple of dim");
    }
    std::vector<unsigned char> bytes(values.size() * 4);
    for (std::size_t k = 0; k < values.size(); ++k) {
        to_little_endian(values[k], bytes.data() + 4 * k);
    }
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("cannot write embedding file " + path.string());
    }
}

double dot(std::span<const float> u, std::span<const float> v) {
    // Four independent accumulators; the summation order is fixed, so results are reproducible.
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n = u.size();
    std::size_t d = 0;
    for (; d + 4 <= n; d += 4) {
        acc[0] += double(u[d]) * v[d];
        acc[1] += double(u[d + 1]) * v[d + 1];
        acc[2] += double(u[d + 2]) * v[d + 2];
        acc[3] += double(u[d + 3]) * v[d + 3];
    }
    for (; d < n; ++d) {
        acc[0] += double(u[d]) * v[d];
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double cosine(std::span<const float> u, std::span<const float> v) {
    if (u.size() != v.size()) {
        throw ValidationError("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                              std::to_string(v.size()) + ")");
    }
    double uu = dot(u, u);
    double vv = dot(v, v);
    if (uu == 0.0 || vv == 0.0) {
        return 0.0;
    }
    double c = dot(u, v) / std::sqrt(uu * vv);
    return std::clamp(c, -1.0, 1.0);
}

double row_cosine(const EmbeddingMatrix& a, std::size_t i, const EmbeddingMatrix& b, std::size_t j) {
    if (a.is_zero(i) || b.is_zero(j)) {
        return 0.0;
    }
    return std::clamp(dot(a.row(i), b.row(j)), -1.0, 1.0);
}

std::vector<std::vector<Neighbor>> knn(const EmbeddingMatrix& queries, const EmbeddingMatrix& keys,
                                       std::size_t k, std::size_t jobs) {
    if (queries.dim() != keys.dim()) {
        throw ValidationError("knn: dimension mismatch (" + std::to_string(queries.dim()) + " vs " +
                              std::to_string(keys.dim()) + ")");
    }
    if (k == 0 || k > keys.rows()) {
        throw ValidationError("knn: k = " + std::to_string(k) + " out of range [1, " +
                              std::to_string(keys.rows()) + "]");
    }

    std::vector<std::vector<Neighbor>> result(queries.rows());
    parallel_for(queries.rows(), jobs, [&](std::size_t q) {
        auto& best = result[q];
        best.reserve(k + 1);
        const bool zero_query = queries.is_zero(q);
        for (std::size_t j = 0; j < keys.rows(); ++j) {
            double score = zero_query ? 0.0 : row_cosine(queries, q, keys, j);
            Neighbor candidate{j, score};
            if (best.size() == k && !better(candidate, best.back())) {
                continue;
            }
            auto pos = std::upper_bound(best.begin(), best.end(), candidate, better);
            best.insert(pos, candidate);
            if (best.size() > k) {
                best.pop_back();
            }
        }
    });
    return result;
}

}  // namespace dacalign
