#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "chain_complex.hpp"

namespace mpc::testkit {

// Extent of the closed grid hull: ranks 0..x-1 and 0..y-1 cover every grade
// of the complex. Grades strictly below rank 0 carry nothing.
std::pair<index_t, index_t> hull_extent(const ChainComplex& c);

// Pointwise homology dimensions at grade z, one entry per block, computed
// by plain Gaussian elimination on the slice of generators with grade <= z.
std::vector<int> homology_dims(const ChainComplex& c, Grade z);

struct DeltaGamma {
    int delta = 0;  // homology events at exactly this grade
    int gamma = 0;  // generators at exactly this grade
};

// Per block: the number of homology classes created or destroyed exactly at
// z, against the number of generators entering at z. Computed by one
// left-to-right reduction per boundary matrix with the below-z generators
// ordered first.
std::vector<DeltaGamma> delta_gamma(const ChainComplex& c, Grade z);

// Homology, delta and gamma per block over the whole hull. cell(x, y)
// indexes the tables.
struct GridTable {
    index_t x_extent = 0;
    index_t y_extent = 0;
    std::vector<std::vector<int>> homology;  // [cell][block]
    std::vector<std::vector<int>> delta;
    std::vector<std::vector<int>> gamma;

    std::size_t cell(index_t x, index_t y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(x_extent) + x;
    }
};

GridTable build_grid_table(const ChainComplex& c);

// A bigraded module presented cell by cell: dimensions over the hull plus
// the two single-step structure maps out of each cell. Basis vectors are
// identified with bit positions, so module dimensions are capped at 64.
struct PointwiseModule {
    index_t x_extent = 0;
    index_t y_extent = 0;
    std::vector<int> dims;                            // [cell]
    std::vector<std::vector<std::uint64_t>> map_x;    // [cell][source basis] -> mask at (x+1, y)
    std::vector<std::vector<std::uint64_t>> map_y;    // [cell][source basis] -> mask at (x, y+1)

    std::size_t cell(index_t x, index_t y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(x_extent) + x;
    }
    int dim(index_t x, index_t y) const {
        if (x < 0 || y < 0) return 0;
        return dims[cell(std::min(x, x_extent - 1), std::min(y, y_extent - 1))];
    }
};

// Cokernel of a presentation, evaluated over an explicit hull.
PointwiseModule module_from_presentation(const GradedMatrix& pres, index_t x_extent,
                                         index_t y_extent);

// Homology of a complex at one dimension, evaluated over an explicit hull.
PointwiseModule module_from_homology(const ChainComplex& c, int homology_dim,
                                     index_t x_extent, index_t y_extent);

// Minimal generator and relation counts of the module at z, read off the
// two-variable Koszul complex (signs are trivial over GF(2)).
std::pair<int, int> koszul_betti(const PointwiseModule& m, Grade z);

// Pointwise dimension of the cokernel of the presentation restricted to
// grades <= z.
int coker_dim(const GradedMatrix& pres, Grade z);

// Triangulated (width x height) grid mesh with independent uniform integer
// vertex bigrades drawn from the seed; edges and triangles take the
// coordinatewise maximum of their vertices. Output is one-critical,
// homogeneous and colex-ordered.
ChainComplex gen_lower_star(int width, int height, std::uint64_t seed);

// A bar of `cubes` unit cubes, each split into six tetrahedra around its
// main diagonal, graded the same way. Yields a chain complex of length 3.
ChainComplex gen_lower_star_solid(int cubes, std::uint64_t seed);

// Inserts `count` cancelling generator pairs: a new generator g at a random
// grade z together with a relation r at z whose boundary is g plus a random
// tail of grade <= z. The result is quasi-isomorphic to the input.
ChainComplex inflate_with_local_pairs(const ChainComplex& c, std::uint64_t seed, int count);

// Random homogeneous colex-ordered graded matrix for equivalence tests.
GradedMatrix random_graded_matrix(std::uint64_t seed, index_t max_rows, index_t max_cols,
                                  index_t max_rank);

// Oracle cross-checks behind the command-line --verify flag. Return false
// and fill `why` on the first mismatch.
bool verify_multi_chunk(const ChainComplex& in, const ChainComplex& out, std::string* why);
bool verify_presentation(const ChainComplex& in, int homology_dim, const GradedMatrix& pres,
                         std::string* why);

}  // namespace mpc::testkit
