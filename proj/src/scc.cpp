#include "scc.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace mpc {

namespace {

struct RawGenerator {
    std::string x_token;
    std::string y_token;
    DecimalValue x_value;
    DecimalValue y_value;
    SparseColumn boundary;
    long line = 0;
};

struct LineReader {
    std::istream& in;
    long line_no = 0;

    // Next significant line: skips blanks and '#' comments, strips a
    // trailing CR so CRLF input is accepted.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            std::size_t i = 0;
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
            if (i == raw.size() || raw[i] == '#') continue;
            out = raw;
            return true;
        }
        return false;
    }
};

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) tokens.push_back(s.substr(start, i - start));
    }
    return tokens;
}

bool parse_count(const std::string& token, long long& out) {
    if (token.empty()) return false;
    long long v = 0;
    for (char ch : token) {
        if (ch < '0' || ch > '9') return false;
        v = v * 10 + (ch - '0');
        if (v > 2'000'000'000LL) return false;
    }
    out = v;
    return true;
}

// Ranks per axis, with one representative token per distinct value.
struct AxisRanks {
    std::vector<DecimalValue> values;  // sorted ascending, distinct
    std::vector<std::string> tokens;

    index_t rank_of(const DecimalValue& v) const {
        auto it = std::lower_bound(values.begin(), values.end(), v,
                                   [](const DecimalValue& a, const DecimalValue& b) {
                                       return compare(a, b) < 0;
                                   });
        return static_cast<index_t>(it - values.begin());
    }
};

AxisRanks build_ranks(const std::vector<std::vector<RawGenerator>>& blocks, bool x_axis) {
    std::vector<std::pair<const DecimalValue*, const std::string*>> entries;
    for (const auto& block : blocks)
        for (const RawGenerator& g : block)
            entries.emplace_back(x_axis ? &g.x_value : &g.y_value,
                                 x_axis ? &g.x_token : &g.y_token);
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return compare(*a.first, *b.first) < 0;
    });
    AxisRanks ranks;
    for (const auto& [value, token] : entries) {
        if (!ranks.values.empty() && compare(ranks.values.back(), *value) == 0) continue;
        ranks.values.push_back(*value);
        ranks.tokens.push_back(*token);
    }
    return ranks;
}

}  // namespace

ChainComplex parse_scc(std::istream& in) {
    LineReader reader{in};
    std::string line;

    if (!reader.next(line) || split_tokens(line) != std::vector<std::string>{"scc2020"})
        throw ParseError("expected the magic line 'scc2020'", reader.line_no == 0 ? 1 : reader.line_no);

    if (!reader.next(line))
        throw ParseError("unexpected end of file: expected the number of parameters",
                         reader.line_no + 1);
    {
        auto tokens = split_tokens(line);
        long long params = -1;
        if (tokens.size() != 1 || !parse_count(tokens[0], params))
            throw ParseError("expected the number of parameters", reader.line_no);
        if (params != 2)
            throw ParseError("number of parameters must be 2, got " + tokens[0],
                             reader.line_no);
    }

    if (!reader.next(line))
        throw ParseError("unexpected end of file: expected the block size list",
                         reader.line_no + 1);
    std::vector<long long> sizes;
    for (const std::string& token : split_tokens(line)) {
        long long v = 0;
        if (!parse_count(token, v))
            throw ParseError("malformed block size '" + token + "'", reader.line_no);
        sizes.push_back(v);
    }
    if (sizes.empty()) throw ParseError("block size list is empty", reader.line_no);

    const std::size_t num_blocks = sizes.size();
    std::vector<std::vector<RawGenerator>> blocks(num_blocks);
    for (std::size_t b = 0; b < num_blocks; ++b) {
        blocks[b].reserve(static_cast<std::size_t>(sizes[b]));
        for (long long g = 0; g < sizes[b]; ++g) {
            if (!reader.next(line))
                throw ParseError("unexpected end of file: block " + std::to_string(b) +
                                     " announces " + std::to_string(sizes[b]) +
                                     " generators but only " + std::to_string(g) +
                                     " were found",
                                 reader.line_no + 1);
            const std::size_t semi = line.find(';');
            if (semi == std::string::npos)
                throw ParseError("generator line is missing ';'", reader.line_no);
            if (line.find(';', semi + 1) != std::string::npos)
                throw ParseError("generator line contains more than one ';'",
                                 reader.line_no, static_cast<long>(line.find(';', semi + 1)) + 1);

            RawGenerator gen;
            gen.line = reader.line_no;
            auto grade_tokens = split_tokens(line.substr(0, semi));
            if (grade_tokens.size() != 2)
                throw ParseError("expected exactly 2 grade entries before ';', got " +
                                     std::to_string(grade_tokens.size()),
                                 reader.line_no);
            gen.x_token = grade_tokens[0];
            gen.y_token = grade_tokens[1];
            if (!DecimalValue::parse(gen.x_token, gen.x_value))
                throw ParseError("malformed grade token '" + gen.x_token + "'", reader.line_no);
            if (!DecimalValue::parse(gen.y_token, gen.y_value))
                throw ParseError("malformed grade token '" + gen.y_token + "'", reader.line_no);

            auto index_tokens = split_tokens(line.substr(semi + 1));
            if (b + 1 == num_blocks && !index_tokens.empty())
                throw ParseError("boundary indices are not allowed in the lowest block",
                                 reader.line_no, static_cast<long>(semi) + 2);
            for (const std::string& token : index_tokens) {
                long long v = 0;
                if (!parse_count(token, v))
                    throw ParseError("malformed boundary index '" + token + "'",
                                     reader.line_no);
                if (v >= sizes[b + 1])
                    throw ParseError("boundary index " + token +
                                         " out of range for the next block of size " +
                                         std::to_string(sizes[b + 1]),
                                     reader.line_no);
                if (!gen.boundary.empty()) {
                    if (gen.boundary.back() == v)
                        throw ParseError("duplicate boundary index " + token, reader.line_no);
                    if (gen.boundary.back() > v)
                        throw ParseError("boundary indices must be strictly ascending",
                                         reader.line_no);
                }
                gen.boundary.push_back(static_cast<index_t>(v));
            }
            blocks[b].push_back(std::move(gen));
        }
    }
    if (reader.next(line))
        throw ParseError("unexpected content after the last block", reader.line_no);

    const AxisRanks x_ranks = build_ranks(blocks, true);
    const AxisRanks y_ranks = build_ranks(blocks, false);

    ChainComplex c;
    c.scale.x_tokens = x_ranks.tokens;
    c.scale.y_tokens = y_ranks.tokens;
    c.tokens.resize(num_blocks);
    std::vector<std::vector<long>> lines(num_blocks);
    std::vector<std::vector<Grade>> grades(num_blocks);
    for (std::size_t b = 0; b < num_blocks; ++b) {
        grades[b].reserve(blocks[b].size());
        for (const RawGenerator& g : blocks[b]) {
            grades[b].push_back(Grade{x_ranks.rank_of(g.x_value), y_ranks.rank_of(g.y_value)});
            c.tokens[b].push_back(TokenPair{g.x_token, g.y_token});
            lines[b].push_back(g.line);
        }
    }
    if (num_blocks == 1) {
        c.lone_block_grades = grades[0];
    } else {
        c.matrices.resize(num_blocks - 1);
        for (std::size_t b = 0; b + 1 < num_blocks; ++b) {
            GradedMatrix& m = c.matrices[b];
            m.n_rows = static_cast<index_t>(blocks[b + 1].size());
            m.col_grades = grades[b];
            m.row_grades = grades[b + 1];
            m.columns.reserve(blocks[b].size());
            for (RawGenerator& g : blocks[b]) m.columns.push_back(std::move(g.boundary));
        }
    }

    const auto perms = colex_normalize(c);
    for (std::size_t b = 0; b < num_blocks; ++b) {
        std::vector<long> permuted(lines[b].size());
        for (std::size_t pos = 0; pos < perms[b].size(); ++pos)
            permuted[pos] = lines[b][perms[b][pos]];
        lines[b].swap(permuted);
    }

    // Homogeneity, reported against the offending generator's source line.
    for (std::size_t b = 0; b < c.matrices.size(); ++b) {
        const GradedMatrix& m = c.matrices[b];
        for (std::size_t j = 0; j < m.columns.size(); ++j)
            for (index_t r : m.columns[j])
                if (!leq(m.row_grades[r], m.col_grades[j]))
                    throw ParseError(
                        "homogeneity violation: generator grade does not dominate the grade "
                        "of boundary entry " +
                            std::to_string(r),
                        lines[b][j]);
    }
    validate(c, /*check_composition=*/true);
    return c;
}

ChainComplex parse_scc(const std::string& text) {
    std::istringstream in(text);
    return parse_scc(in);
}

void write_scc(const ChainComplex& c, std::ostream& out) {
    out << "scc2020\n2\n";
    const std::size_t blocks = c.num_blocks();
    if (blocks == 0) {
        out << "0\n";
        return;
    }
    for (std::size_t b = 0; b < blocks; ++b) out << (b ? " " : "") << c.block_size(b);
    out << "\n";
    for (std::size_t b = 0; b < blocks; ++b) {
        const bool lowest = b + 1 == blocks;
        for (std::size_t i = 0; i < c.block_size(b); ++i) {
            out << c.token_x(b, i) << ' ' << c.token_y(b, i) << " ;";
            if (!lowest)
                for (index_t r : c.matrices[b].columns[i]) out << ' ' << r;
            out << '\n';
        }
    }
}

std::string write_scc(const ChainComplex& c) {
    std::ostringstream out;
    write_scc(c, out);
    return out.str();
}

}  // namespace mpc
