#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dacalign/dp_aligner.hpp"

namespace dacalign {

/// Word translation table p(target token | source token), read from a file.
class TTable {
public:
    static constexpr double kDefaultFloor = 1e-6;

    explicit TTable(double floor = kDefaultFloor);

    /// Stores p(tgt | src). Throws ValidationError unless 0 < prob <= 1.
    void set(std::string_view src, std::string_view tgt, double prob);

    /// Stored probability, or the floor for unseen pairs.
    double lookup(std::string_view src, std::string_view tgt) const;

    /// Calls fn(src, tgt, prob) for every stored entry.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (const auto& [k, p] : entries_) {
            auto tab = k.find('\t');
            fn(std::string_view(k).substr(0, tab), std::string_view(k).substr(tab + 1), p);
        }
    }

    double floor() const { return floor_; }
    std::size_t size() const { return entries_.size(); }

private:
    static std::string key(std::string_view src, std::string_view tgt);

    double floor_;
    std::unordered_map<std::string, double> entries_;
};

/// Parses `src tgt prob` lines (space or tab separated). Later duplicates win.
/// Throws ParseError with the line number on malformed or out-of-range entries.
TTable load_ttable(std::istream& in, double floor = TTable::kDefaultFloor);
TTable load_ttable(const std::filesystem::path& path, double floor = TTable::kDefaultFloor);

using TokenList = std::vector<std::string>;

/// Whitespace tokenization.
TokenList tokenize(std::string_view sentence);

/// Bag-of-words bead cost with a NULL source slot and no length term:
///   -log prior - sum_t log( (floor + sum_s p(t|s)) / (|src tokens| + 1) )
/// Null beads (either side empty) cost only -log prior.
double lexical_bead_cost(const std::vector<TokenList>& src_sentences, const std::vector<TokenList>& tgt_sentences,
                         const TTable& table, const BeadPriors& priors);

/// Lexical BeadScorer over two tokenized documents.
class LexicalScorer : public BeadScorer {
public:
    LexicalScorer(std::vector<TokenList> src_doc, std::vector<TokenList> tgt_doc, const TTable& table,
                  BeadPriors priors = BeadPriors::defaults());

    double cost(Span src, Span tgt) const override;
    std::size_t source_size() const override { return src_ids_.size(); }
    std::size_t target_size() const override { return tgt_ids_.size(); }

private:
    double prob(std::uint32_t src, std::uint32_t tgt) const;

    std::vector<std::vector<std::uint32_t>> src_ids_;
    std::vector<std::vector<std::uint32_t>> tgt_ids_;
    std::unordered_map<std::uint64_t, double> table_;
    double floor_;
    BeadPriors priors_;
};

}  // namespace dacalign
