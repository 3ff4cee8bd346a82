#include "graded_matrix.hpp"

#include <cassert>

namespace mpc {

std::string ParseError::format(const std::string& what, long line, long column) {
    if (line <= 0) return what;
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    s += ": " + what;
    return s;
}

void add_column(GradedMatrix& m, index_t src, index_t dst, SparseColumn& scratch) {
    assert(src != dst);
    assert(leq(m.col_grades[src], m.col_grades[dst]));
    add_into(m.columns[dst], m.columns[src], scratch);
}

bool is_local(const GradedMatrix& m, index_t j) {
    const index_t p = pivot(m.columns[j]);
    if (p < 0) return false;
    return m.row_grades[p] == m.col_grades[j];
}

void validate(const GradedMatrix& m) {
    if (m.col_grades.size() != m.columns.size())
        throw ValidationError("column grade count does not match column count");
    if (m.row_grades.size() != static_cast<std::size_t>(m.n_rows))
        throw ValidationError("row grade count does not match row count");
    for (std::size_t i = 1; i < m.row_grades.size(); ++i)
        if (colex_less(m.row_grades[i], m.row_grades[i - 1]))
            throw ValidationError("row grades are not in colexicographic order");
    for (std::size_t j = 1; j < m.col_grades.size(); ++j)
        if (colex_less(m.col_grades[j], m.col_grades[j - 1]))
            throw ValidationError("column grades are not in colexicographic order");
    for (std::size_t j = 0; j < m.columns.size(); ++j) {
        const SparseColumn& c = m.columns[j];
        if (!strictly_ascending(c))
            throw ValidationError("column " + std::to_string(j) +
                                  " support is not strictly ascending");
        for (index_t r : c) {
            if (r < 0 || r >= m.n_rows)
                throw ValidationError("column " + std::to_string(j) +
                                      " references row " + std::to_string(r) +
                                      " out of range");
            if (!leq(m.row_grades[r], m.col_grades[j]))
                throw ValidationError("column " + std::to_string(j) +
                                      " supports row " + std::to_string(r) +
                                      " of incomparable or larger grade");
        }
    }
}

void LabelTable::resize_like(const std::vector<std::size_t>& block_sizes) {
    labels.assign(block_sizes.size(), {});
    partner.assign(block_sizes.size(), {});
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        labels[b].assign(block_sizes[b], Label::Unlabeled);
        partner[b].assign(block_sizes[b], index_t(-1));
    }
}

}  // namespace mpc
