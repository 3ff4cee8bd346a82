#pragma once

#include <cstdint>

#include "chain_complex.hpp"

namespace mpc {

struct BlockLabelCounts {
    std::size_t global = 0;
    std::size_t local_positive = 0;
    std::size_t local_negative = 0;
};

struct ChunkStats {
    std::vector<BlockLabelCounts> blocks;
    std::uint64_t column_additions = 0;
    double local_reduction_seconds = 0;
    double compression_seconds = 0;
    double removal_seconds = 0;
};

struct MultiChunkOptions {
    int threads = 1;  // <= 0: all available cores
};

// Phase I on the boundary matrix of block b. Labels every still-unlabeled
// column Global or LocalNegative and marks the pivot row of each local pair
// LocalPositive; columns already labeled (clearing from the block above) are
// skipped. All column additions stay inside one chunk of equal grade, so
// chunks run in parallel. Returns the number of column additions performed.
std::uint64_t local_reduction(GradedMatrix& m, LabelTable& labels, std::size_t b,
                              int threads = 1);

// Phase II on the boundary matrix of block b. Eliminates local generators
// from the boundary of every Global column, always removing the local entry
// of maximal index first: LocalNegative rows are dropped, LocalPositive rows
// are cancelled by adding the paired LocalNegative column of the same
// matrix. Global columns are independent and run in parallel. Returns the
// number of column additions performed.
std::uint64_t compress(GradedMatrix& m, const LabelTable& labels, std::size_t b,
                       int threads = 1);

// Phase III: the submatrix of Global columns and Global rows, reindexed.
GradedMatrix remove_local(const GradedMatrix& m, const LabelTable& labels, std::size_t b);

struct MultiChunkResult {
    ChainComplex complex;
    LabelTable labels;
    ChunkStats stats;
};

// The full three-phase compression. Phase I runs over the matrices in
// decreasing dimension so that local pairs found in one block clear columns
// of the next. The output complex has the same length, is homotopy
// equivalent to the input, and is the smallest complex quasi-isomorphic to
// it (one generator per homology event at each grade and level).
MultiChunkResult multi_chunk(const ChainComplex& in, const MultiChunkOptions& opts = {});

}  // namespace mpc
