#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparse.hpp"

namespace mpc {

// Input is structurally malformed (grammar, ranges, homogeneity). Carries a
// 1-based source line when the problem maps to one.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what, long line = 0, long column = 0)
        : std::runtime_error(format(what, line, column)), line(line), column(column) {}
    long line;
    long column;

private:
    static std::string format(const std::string& what, long line, long column);
};

// Input parses but violates a chain-complex invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Homomorphism of free bigraded modules: sparse GF(2) columns plus a grade
// per column and per row. Rows and columns are kept in colexicographic
// order of their grades.
struct GradedMatrix {
    index_t n_rows = 0;
    std::vector<SparseColumn> columns;
    std::vector<Grade> col_grades;
    std::vector<Grade> row_grades;

    index_t n_cols() const { return static_cast<index_t>(columns.size()); }

    friend bool operator==(const GradedMatrix&, const GradedMatrix&) = default;
};

// dst <- dst + src. Every addition the algorithms perform is
// grade-preserving, gr(src) <= gr(dst); asserted here.
void add_column(GradedMatrix& m, index_t src, index_t dst, SparseColumn& scratch);

// Non-zero column whose pivot row carries the column's own grade. The zero
// column is not local: it has no pivot to pair with.
bool is_local(const GradedMatrix& m, index_t j);

// Sizes, colex order of grades, ascending supports in range, homogeneity.
// Throws ValidationError on failure.
void validate(const GradedMatrix& m);

enum class Label : std::uint8_t { Unlabeled, Global, LocalPositive, LocalNegative };

// Per-generator classification produced by local reduction, plus the
// local-pair partner map. Blocks are indexed from the highest dimension
// down, matching ChainComplex.
struct LabelTable {
    // labels[b][i]: label of generator i of block b.
    std::vector<std::vector<Label>> labels;
    // partner[b][i]: paired generator in the adjacent block, -1 if none.
    // A LocalNegative generator pairs with its pivot row one block down the
    // boundary direction (block b+1); a LocalPositive one with the column
    // owning it (block b-1). The two directions form an involution.
    std::vector<std::vector<index_t>> partner;

    void resize_like(const std::vector<std::size_t>& block_sizes);
};

}  // namespace mpc
