#include "chain_complex.hpp"

#include <algorithm>
#include <numeric>

namespace mpc {

std::size_t ChainComplex::block_size(std::size_t b) const {
    if (b < matrices.size()) return matrices[b].columns.size();
    if (!matrices.empty()) return static_cast<std::size_t>(matrices.back().n_rows);
    return lone_block_grades.size();
}

const std::vector<Grade>& ChainComplex::block_grades(std::size_t b) const {
    if (b < matrices.size()) return matrices[b].col_grades;
    if (!matrices.empty()) return matrices.back().row_grades;
    return lone_block_grades;
}

std::size_t ChainComplex::total_generators() const {
    std::size_t total = 0;
    for (std::size_t b = 0; b < num_blocks(); ++b) total += block_size(b);
    return total;
}

std::string ChainComplex::token_x(std::size_t b, std::size_t i) const {
    if (b < tokens.size() && i < tokens[b].size() && !tokens[b][i].x.empty())
        return tokens[b][i].x;
    return scale.render_x(block_grades(b)[i].x);
}

std::string ChainComplex::token_y(std::size_t b, std::size_t i) const {
    if (b < tokens.size() && i < tokens[b].size() && !tokens[b][i].y.empty())
        return tokens[b][i].y;
    return scale.render_y(block_grades(b)[i].y);
}

bool ChainComplex::structurally_equal(const ChainComplex& other) const {
    if (num_blocks() != other.num_blocks()) return false;
    if (matrices != other.matrices) return false;
    for (std::size_t b = 0; b < num_blocks(); ++b) {
        if (block_grades(b) != other.block_grades(b)) return false;
        for (std::size_t i = 0; i < block_size(b); ++i) {
            if (token_x(b, i) != other.token_x(b, i)) return false;
            if (token_y(b, i) != other.token_y(b, i)) return false;
        }
    }
    return true;
}

void validate(const ChainComplex& c, bool check_composition) {
    const std::size_t k = c.matrices.size();
    for (const GradedMatrix& m : c.matrices) validate(m);
    for (std::size_t b = 0; b + 1 < k; ++b) {
        if (c.matrices[b].row_grades != c.matrices[b + 1].col_grades)
            throw ValidationError("row grades of block " + std::to_string(b) +
                                  " do not match the next block's column grades");
    }
    if (!c.tokens.empty() && c.tokens.size() != c.num_blocks())
        throw ValidationError("token table does not match block count");
    for (std::size_t b = 0; b < c.tokens.size(); ++b)
        if (c.tokens[b].size() != c.block_size(b))
            throw ValidationError("token table of block " + std::to_string(b) +
                                  " does not match its generator count");
    if (!check_composition) return;
    SparseColumn acc, scratch;
    for (std::size_t b = 0; b + 1 < k; ++b) {
        const GradedMatrix& upper = c.matrices[b];
        const GradedMatrix& lower = c.matrices[b + 1];
        for (std::size_t j = 0; j < upper.columns.size(); ++j) {
            acc.clear();
            for (index_t r : upper.columns[j]) add_into(acc, lower.columns[r], scratch);
            if (!acc.empty())
                throw ValidationError("boundary of boundary is non-zero at block " +
                                      std::to_string(b) + " column " + std::to_string(j));
        }
    }
}

std::vector<std::vector<index_t>> colex_normalize(ChainComplex& c) {
    const std::size_t blocks = c.num_blocks();
    std::vector<std::vector<index_t>> perms(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::vector<Grade>& grades = c.block_grades(b);
        std::vector<index_t> order(grades.size());
        std::iota(order.begin(), order.end(), index_t(0));
        std::stable_sort(order.begin(), order.end(), [&](index_t l, index_t r) {
            return colex_less(grades[l], grades[r]);
        });

        std::vector<index_t> inverse(order.size());
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            inverse[order[pos]] = static_cast<index_t>(pos);

        auto permute_grades = [&](std::vector<Grade>& g) {
            std::vector<Grade> next(order.size());
            for (std::size_t pos = 0; pos < order.size(); ++pos) next[pos] = g[order[pos]];
            g.swap(next);
        };

        if (b < c.matrices.size()) {
            GradedMatrix& m = c.matrices[b];
            std::vector<SparseColumn> cols(order.size());
            for (std::size_t pos = 0; pos < order.size(); ++pos)
                cols[pos] = std::move(m.columns[order[pos]]);
            m.columns.swap(cols);
            permute_grades(m.col_grades);
        } else if (!c.matrices.empty()) {
            // handled below as the rows of the last matrix
        } else {
            permute_grades(c.lone_block_grades);
        }
        if (b > 0) {
            GradedMatrix& m = c.matrices[b - 1];
            permute_grades(m.row_grades);
            for (SparseColumn& col : m.columns) {
                for (index_t& r : col) r = inverse[r];
                std::sort(col.begin(), col.end());
            }
        }
        if (b < c.tokens.size() && !c.tokens[b].empty()) {
            std::vector<TokenPair> next(order.size());
            for (std::size_t pos = 0; pos < order.size(); ++pos)
                next[pos] = std::move(c.tokens[b][order[pos]]);
            c.tokens[b].swap(next);
        }
        perms[b] = std::move(order);
    }
    for (const GradedMatrix& m : c.matrices) validate(m);
    return perms;
}

}  // namespace mpc
