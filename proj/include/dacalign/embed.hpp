#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "dacalign/core.hpp"

namespace dacalign {

/// Row-per-sentence embedding vectors, unit-normalized on construction.
///
/// Rows whose raw vector is all zero stay zero and are listed in `zero_rows()`;
/// they have cosine 0 with everything.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;

    /// `values` is row-major with `values.size() == rows * dim`.
    EmbeddingMatrix(std::size_t dim, std::vector<float> values);

    std::size_t rows() const { return rows_; }
    std::size_t dim() const { return dim_; }

    std::span<const float> row(std::size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }

    bool is_zero(std::size_t i) const { return zero_flags_[i] != 0; }
    const std::vector<std::size_t>& zero_rows() const { return zero_rows_; }

    /// Copy of the rows in `range`.
    EmbeddingMatrix slice(Span range) const;

    const std::vector<float>& values() const { return values_; }

private:
    std::size_t rows_ = 0;
    std::size_t dim_ = 0;
    std::vector<float> values_;
    std::vector<char> zero_flags_;
    std::vector<std::size_t> zero_rows_;
};

/// Reads raw little-endian float32 rows (no header). Throws SizeMismatchError when
/// the file size is not a multiple of 4 * dim, IoError when it cannot be read.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path, std::size_t dim);

/// Writes rows as raw little-endian float32, the format read by load_embeddings.
void save_embeddings(const std::filesystem::path& path, std::size_t dim, std::span<const float> values);

/// Cosine similarity; 0 if either vector is zero. Throws ValidationError on size mismatch.
double cosine(std::span<const float> u, std::span<const float> v);

/// Dot product of two equal-length rows, accumulated in double.
double dot(std::span<const float> u, std::span<const float> v);

/// Cosine of two rows of normalized matrices (a plain dot product, clamped to [-1, 1]).
double row_cosine(const EmbeddingMatrix& a, std::size_t i, const EmbeddingMatrix& b, std::size_t j);

struct Neighbor {
    std::size_t index = 0;
    double score = 0.0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Exact top-k keys by cosine for every query row, best first; ties go to the smaller key index.
std::vector<std::vector<Neighbor>> knn(const EmbeddingMatrix& queries, const EmbeddingMatrix& keys,
                                       std::size_t k, std::size_t jobs = 1);

}  // namespace dacalign
