#include "dacalign/lexical.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <span>

#include "dacalign/error.hpp"

namespace dacalign {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// -sum_t log((floor + sum_s p(t|s)) / (|S| + 1)); `prob` looks up p(t|s) or the floor.
template <typename SrcRange, typename TgtRange, typename Prob>
double token_cost(const SrcRange& src_sentences, const TgtRange& tgt_sentences, double floor, Prob&& prob) {
    std::size_t src_count = 0;
    for (const auto& sentence : src_sentences) {
        src_count += sentence.size();
    }
    const double normalizer = 1.0 / double(src_count + 1);
    double cost = 0.0;
    for (const auto& tgt_sentence : tgt_sentences) {
        for (const auto& t : tgt_sentence) {
            double mass = floor;
            for (const auto& src_sentence : src_sentences) {
                for (const auto& s : src_sentence) {
                    mass += prob(s, t);
                }
            }
            cost -= std::log(mass * normalizer);
        }
    }
    return cost;
}

}  // namespace

TTable::TTable(double floor) : floor_(floor) {
    if (!(floor > 0.0)) {
        throw ValidationError("t-table floor must be positive");
    }
}

std::string TTable::key(std::string_view src, std::string_view tgt) {
    std::string k;
    k.reserve(src.size() + tgt.size() + 1);
    k.append(src);
    k.push_back('\t');
    k.append(tgt);
    return k;
}

void TTable::set(std::string_view src, std::string_view tgt, double prob) {
    if (!(prob > 0.0 && prob <= 1.0)) {
        throw ValidationError("probability " + std::to_string(prob) + " outside (0, 1]");
    }
    entries_[key(src, tgt)] = prob;
}

double TTable::lookup(std::string_view src, std::string_view tgt) const {
    auto it = entries_.find(key(src, tgt));
    return it == entries_.end() ? floor_ : it->second;
}

TTable load_ttable(std::istream& in, double floor) {
    TTable table(floor);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        TokenList fields = tokenize(line);
        if (fields.empty()) {
            continue;
        }
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields (source target probability), got " + std::to_string(fields.size()),
                             line_no);
        }
        const std::string& p = fields[2];
        double prob = 0.0;
        auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), prob);
        if (ec != std::errc() || ptr != p.data() + p.size()) {
            throw ParseError("malformed probability '" + p + "'", line_no);
        }
        if (!(prob > 0.0 && prob <= 1.0)) {
            throw ParseError("probability " + p + " outside (0, 1]", line_no);
        }
        table.set(fields[0], fields[1], prob);
    }
    return table;
}

TTable load_ttable(const std::filesystem::path& path, double floor) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open t-table " + path.string());
    }
    return load_ttable(in, floor);
}

TokenList tokenize(std::string_view sentence) {
    TokenList tokens;
    std::size_t k = 0;
    while (k < sentence.size()) {
        while (k < sentence.size() && is_space(sentence[k])) {
            ++k;
        }
        std::size_t start = k;
        while (k < sentence.size() && !is_space(sentence[k])) {
            ++k;
        }
        if (k > start) {
            tokens.emplace_back(sentence.substr(start, k - start));
        }
    }
    return tokens;
}

double lexical_bead_cost(const std::vector<TokenList>& src_sentences, const std::vector<TokenList>& tgt_sentences,
                         const TTable& table, const BeadPriors& priors) {
    const BeadType type{src_sentences.size(), tgt_sentences.size()};
    double prior_cost = priors.cost(type);
    if (type.is_null()) {
        return prior_cost;
    }
    return prior_cost + token_cost(src_sentences, tgt_sentences, table.floor(),
                                   [&](const std::string& s, const std::string& t) { return table.lookup(s, t); });
}

LexicalScorer::LexicalScorer(std::vector<TokenList> src_doc, std::vector<TokenList> tgt_doc, const TTable& table,
                             BeadPriors priors)
    : floor_(table.floor()), priors_(std::move(priors)) {
    std::unordered_map<std::string, std::uint32_t> src_vocab;
    std::unordered_map<std::string, std::uint32_t> tgt_vocab;
    auto intern = [](std::unordered_map<std::string, std::uint32_t>& vocab, const std::string& token) {
        return vocab.try_emplace(token, static_cast<std::uint32_t>(vocab.size())).first->second;
    };
    for (const auto& sentence : src_doc) {
        auto& ids = src_ids_.emplace_back();
        for (const auto& token : sentence) {
            ids.push_back(intern(src_vocab, token));
        }
    }
    for (const auto& sentence : tgt_doc) {
        auto& ids = tgt_ids_.emplace_back();
        for (const auto& token : sentence) {
            ids.push_back(intern(tgt_vocab, token));
        }
    }
    // Only pairs that can occur in these documents are kept; walk whichever side is smaller.
    auto keep = [&](std::uint32_t s_id, std::uint32_t t_id, double p) {
        table_[(std::uint64_t(s_id) << 32) | t_id] = p;
    };
    if (table.size() < src_vocab.size() * tgt_vocab.size()) {
        table.for_each([&](std::string_view s, std::string_view t, double p) {
            auto si = src_vocab.find(std::string(s));
            auto ti = tgt_vocab.find(std::string(t));
            if (si != src_vocab.end() && ti != tgt_vocab.end()) {
                keep(si->second, ti->second, p);
            }
        });
    } else {
        for (const auto& [s, s_id] : src_vocab) {
            for (const auto& [t, t_id] : tgt_vocab) {
                double p = table.lookup(s, t);
                if (p != floor_) {
                    keep(s_id, t_id, p);
                }
            }
        }
    }
}

double LexicalScorer::prob(std::uint32_t src, std::uint32_t tgt) const {
    auto it = table_.find((std::uint64_t(src) << 32) | tgt);
    return it == table_.end() ? floor_ : it->second;
}

double LexicalScorer::cost(Span src, Span tgt) const {
    const BeadType type{src.size(), tgt.size()};
    double prior_cost = priors_.cost(type);
    if (type.is_null()) {
        return prior_cost;
    }
    std::span<const std::vector<std::uint32_t>> src_sentences(src_ids_.data() + src.begin, src.size());
    std::span<const std::vector<std::uint32_t>> tgt_sentences(tgt_ids_.data() + tgt.begin, tgt.size());
    return prior_cost + token_cost(src_sentences, tgt_sentences, floor_,
                                   [&](std::uint32_t s, std::uint32_t t) { return prob(s, t); });
}

}  // namespace dacalign
