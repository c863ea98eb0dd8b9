#include "dacalign/alignment_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "dacalign/error.hpp"

namespace dacalign {

namespace {

void append_span(std::string& out, const Span& span) {
    for (std::size_t i = span.begin; i < span.end; ++i) {
        if (i != span.begin) {
            out += ',';
        }
        out += std::to_string(i);
    }
}

std::size_t parse_index(std::string_view text, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("bad sentence index '" + std::string(text) + "'", line_no);
    }
    return value;
}

double parse_score(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("bad score '" + std::string(text) + "'", line_no);
    }
    return value;
}

// An empty side becomes an empty span at `cursor`.
Span parse_side(std::string_view text, std::size_t cursor, std::size_t line_no) {
    if (text.empty()) {
        return {cursor, cursor};
    }
    Span span{};
    bool first = true;
    while (true) {
        auto comma = text.find(',');
        std::size_t idx = parse_index(text.substr(0, comma), line_no);
        if (first) {
            span = {idx, idx + 1};
            first = false;
        } else if (idx != span.end) {
            throw ParseError("indices must be ascending and contiguous", line_no);
        } else {
            span.end = idx + 1;
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return span;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

}  // namespace

std::string format_bead(const Bead& bead) {
    std::string out;
    append_span(out, bead.src);
    out += ':';
    append_span(out, bead.tgt);
    return out;
}

void write_alignment(std::ostream& out, const AlignmentSet& alignment) {
    for (const Bead& bead : alignment.beads) {
        out << format_bead(bead) << '\n';
    }
}

AlignmentSet read_alignment(std::istream& in) {
    AlignmentSet result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos || line.find(':', colon + 1) != std::string::npos) {
            throw ParseError("expected exactly one ':'", line_no);
        }
        std::string_view view(line);
        Bead bead{parse_side(view.substr(0, colon), result.n_src, line_no),
                  parse_side(view.substr(colon + 1), result.n_tgt, line_no)};
        if (bead.src.empty() && bead.tgt.empty()) {
            throw ParseError("bead with both sides empty", line_no);
        }
        result.n_src = std::max(result.n_src, bead.src.end);
        result.n_tgt = std::max(result.n_tgt, bead.tgt.end);
        result.beads.push_back(bead);
    }
    return result;
}

AlignmentSet read_alignment_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_alignment(in);
}

void write_delimiters(std::ostream& out, const std::vector<Delimiter>& delimiters) {
    char buf[128];
    for (const Delimiter& d : delimiters) {
        std::snprintf(buf, sizeof buf, "%zu\t%zu\t%.6f\t%.6f\n", d.src_idx, d.tgt_idx, d.cosine, d.margin);
        out << buf;
    }
}

std::vector<Delimiter> read_delimiters(std::istream& in) {
    std::vector<Delimiter> result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view view(line);
        while (true) {
            auto tab = view.find('\t');
            fields.push_back(view.substr(0, tab));
            if (tab == std::string_view::npos) {
                break;
            }
            view.remove_prefix(tab + 1);
        }
        if (fields.size() < 2) {
            throw ParseError("expected at least two tab-separated columns", line_no);
        }
        Delimiter d;
        d.src_idx = parse_index(fields[0], line_no);
        d.tgt_idx = parse_index(fields[1], line_no);
        if (fields.size() >= 4) {
            d.cosine = parse_score(fields[2], line_no);
            d.margin = parse_score(fields[3], line_no);
        }
        result.push_back(d);
    }
    return result;
}

std::vector<Delimiter> read_delimiters_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_delimiters(in);
}

}  // namespace dacalign
