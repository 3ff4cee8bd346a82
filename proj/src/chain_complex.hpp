#pragma once

#include <cstddef>
#include <vector>

#include "graded_matrix.hpp"

namespace mpc {

// Chain complex of free bigraded modules. Blocks of generators are ordered
// from the highest dimension down to dimension 0, matching the file layout;
// matrices[b] is the boundary map from block b into block b+1. Consecutive
// matrices share a basis: row grades of matrices[b] equal column grades of
// matrices[b+1].
struct ChainComplex {
    std::vector<GradedMatrix> matrices;
    // Authoritative only when there is a single block (no matrices).
    std::vector<Grade> lone_block_grades;
    // Original grade text, one vector per block aligned with generator
    // order. Entries of synthesized generators are empty and render through
    // the scale instead.
    std::vector<std::vector<TokenPair>> tokens;
    GradeScale scale;

    std::size_t num_blocks() const {
        return matrices.empty() ? tokens.size() : matrices.size() + 1;
    }
    std::size_t block_size(std::size_t b) const;
    const std::vector<Grade>& block_grades(std::size_t b) const;
    int dim_of_block(std::size_t b) const { return static_cast<int>(num_blocks() - 1 - b); }
    std::size_t block_of_dim(int dim) const { return num_blocks() - 1 - static_cast<std::size_t>(dim); }
    std::size_t total_generators() const;

    // Grade text of one generator: its own token when present, otherwise the
    // scale's rendering of the rank.
    std::string token_x(std::size_t b, std::size_t i) const;
    std::string token_y(std::size_t b, std::size_t i) const;

    bool structurally_equal(const ChainComplex& other) const;
};

// Structural invariants: matrix consistency across blocks, colex orders,
// homogeneity, and (optionally) that consecutive boundaries compose to zero.
void validate(const ChainComplex& c, bool check_composition = true);

// Stable-sorts every block into colexicographic grade order and rewires the
// adjacent matrices. Returns one permutation per block with
// perm[b][new_index] = old_index. Ties keep input order. Throws ParseError
// on a homogeneity violation.
std::vector<std::vector<index_t>> colex_normalize(ChainComplex& c);

}  // namespace mpc
