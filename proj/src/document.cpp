#include "dacalign/document.hpp"

#include <fstream>
#include <istream>

#include "dacalign/error.hpp"

namespace dacalign {

std::vector<std::string> read_sentences(std::istream& in) {
    std::vector<std::string> sentences;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        sentences.push_back(std::move(line));
    }
    return sentences;
}

std::vector<std::string> read_sentences(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_sentences(in);
}

std::size_t utf8_length(std::string_view text) {
    std::size_t count = 0;
    for (unsigned char c : text) {
        if ((c & 0xC0) != 0x80) {
            ++count;
        }
    }
    return count;
}

std::vector<std::size_t> char_lengths(const std::vector<std::string>& sentences) {
    std::vector<std::size_t> lengths;
    lengths.reserve(sentences.size());
    for (const auto& s : sentences) {
        lengths.push_back(utf8_length(s));
    }
    return lengths;
}

std::vector<TokenList> tokenize_all(const std::vector<std::string>& sentences) {
    std::vector<TokenList> out;
    out.reserve(sentences.size());
    for (const auto& s : sentences) {
        out.push_back(tokenize(s));
    }
    return out;
}

}  // namespace dacalign
