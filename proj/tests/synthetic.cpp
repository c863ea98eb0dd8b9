#include "synthetic.hpp"

#include <algorithm>
#include <random>

namespace testkit {

namespace {

using Rng = std::mt19937_64;

std::vector<float> gaussian(std::size_t dim, Rng& rng) {
    std::normal_distribution<float> normal(0.0f, 1.0f);
    std::vector<float> v(dim);
    for (auto& x : v) {
        x = normal(rng);
    }
    return v;
}

std::string random_text(std::size_t length, Rng& rng) {
    std::uniform_int_distribution<int> letter('a', 'z');
    std::uniform_int_distribution<int> word_len(2, 9);
    std::string out;
    std::size_t next_space = word_len(rng);
    while (out.size() < length) {
        if (out.size() == next_space) {
            out.push_back(' ');
            next_space += 1 + word_len(rng);
        } else {
            out.push_back(char(letter(rng)));
        }
    }
    if (!out.empty() && out.back() == ' ') {
        out.back() = 'x';
    }
    return out;
}

// Splits `total` characters into `parts` positive lengths.
std::vector<std::size_t> split_length(std::size_t total, std::size_t parts, Rng& rng) {
    std::vector<std::size_t> out(parts, 0);
    if (parts == 0) {
        return out;
    }
    std::uniform_real_distribution<double> share(0.3, 1.0);
    std::vector<double> w(parts);
    double sum = 0;
    for (auto& x : w) {
        x = share(rng);
        sum += x;
    }
    for (std::size_t p = 0; p < parts; ++p) {
        out[p] = std::max<std::size_t>(1, std::size_t(double(total) * w[p] / sum + 0.5));
    }
    return out;
}

}  // namespace

std::vector<float> random_matrix(std::size_t rows, std::size_t dim, double zero_fraction, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<float> value(-1.0f, 1.0f);
    std::bernoulli_distribution zero(zero_fraction);
    std::vector<float> out(rows * dim);
    for (std::size_t r = 0; r < rows; ++r) {
        bool z = zero(rng);
        for (std::size_t c = 0; c < dim; ++c) {
            out[r * dim + c] = z ? 0.0f : value(rng);
        }
    }
    return out;
}

SyntheticPair make_synthetic(const SyntheticOptions& options) {
    Rng rng(options.seed);
    std::bernoulli_distribution is_one(options.one_to_one);
    std::discrete_distribution<int> other({0.3, 0.3, 0.15, 0.15, 0.1});
    const dacalign::BeadType others[] = {{1, 2}, {2, 1}, {1, 0}, {0, 1}, {2, 2}};
    std::uniform_int_distribution<std::size_t> sentence_len(20, 120);
    std::normal_distribution<double> len_noise(0.0, options.length_noise);
    std::normal_distribution<float> normal(0.0f, 1.0f);

    SyntheticPair pair;
    std::vector<float> src_vals;
    std::vector<float> tgt_vals;
    const std::size_t d = options.dim;

    auto emit = [&](std::vector<float>& vals, const std::vector<float>& meaning, double weight) {
        auto own = gaussian(d, rng);
        for (std::size_t c = 0; c < d; ++c) {
            float base = weight > 0.999 ? meaning[c] : float(weight) * meaning[c] + own[c];
            vals.push_back(base + float(options.noise) * normal(rng));
        }
    };

    for (std::size_t b = 0; b < options.beads; ++b) {
        dacalign::BeadType type = is_one(rng) ? dacalign::BeadType{1, 1} : others[other(rng)];
        dacalign::Bead bead{{pair.src.size(), pair.src.size() + type.src},
                            {pair.tgt.size(), pair.tgt.size() + type.tgt}};
        auto meaning = gaussian(d, rng);

        if (type.is_null()) {
            for (std::size_t s = 0; s < type.src; ++s) {
                pair.src.push_back(random_text(sentence_len(rng), rng));
                src_vals.insert(src_vals.end(), meaning.begin(), meaning.end());
                meaning = gaussian(d, rng);
            }
            for (std::size_t t = 0; t < type.tgt; ++t) {
                pair.tgt.push_back(random_text(sentence_len(rng), rng));
                tgt_vals.insert(tgt_vals.end(), meaning.begin(), meaning.end());
                meaning = gaussian(d, rng);
            }
        } else {
            std::size_t src_total = 0;
            for (std::size_t s = 0; s < type.src; ++s) {
                src_total += sentence_len(rng);
            }
            double factor = std::max(0.5, 1.0 + len_noise(rng));
            std::size_t tgt_total = std::max<std::size_t>(type.tgt, std::size_t(double(src_total) * factor));
            for (std::size_t len : split_length(src_total, type.src, rng)) {
                pair.src.push_back(random_text(len, rng));
                emit(src_vals, meaning, type.src == 1 ? 1.0 : 0.5);
            }
            for (std::size_t len : split_length(tgt_total, type.tgt, rng)) {
                pair.tgt.push_back(random_text(len, rng));
                emit(tgt_vals, meaning, type.tgt == 1 ? 1.0 : 0.5);
            }
        }
        pair.gold.beads.push_back(bead);
    }
    pair.gold.n_src = pair.src.size();
    pair.gold.n_tgt = pair.tgt.size();
    pair.src_emb = dacalign::EmbeddingMatrix(d, std::move(src_vals));
    pair.tgt_emb = dacalign::EmbeddingMatrix(d, std::move(tgt_vals));
    return pair;
}

}  // namespace testkit
