#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dacalign/lexical.hpp"

namespace dacalign {

/// One sentence per line, UTF-8. A trailing CR is stripped from each line.
std::vector<std::string> read_sentences(std::istream& in);
std::vector<std::string> read_sentences(const std::filesystem::path& path);

/// Number of Unicode code points in a UTF-8 string (continuation bytes are not counted).
std::size_t utf8_length(std::string_view text);

std::vector<std::size_t> char_lengths(const std::vector<std::string>& sentences);

std::vector<TokenList> tokenize_all(const std::vector<std::string>& sentences);

}  // namespace dacalign
