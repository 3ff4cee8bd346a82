#pragma once

#include <cstdint>
#include <queue>

#include "chain_complex.hpp"

namespace mpc {

struct MpfreeCounters {
    std::uint64_t additions = 0;       // boundary-column additions performed
    std::uint64_t addition_cost = 0;   // summed support lengths of those merges
    std::uint64_t grade_queue_pops = 0;
    std::uint64_t grade_queue_pushes = 0;  // pushes triggered during reductions
    std::uint64_t row_queue_pops = 0;
    std::uint64_t grid_cells_visited = 0;  // grid-scan paths only

    MpfreeCounters& operator+=(const MpfreeCounters& o);
};

// One auxiliary column per matrix column, mirroring every addition; column j
// starts as the unit column e_j, so a column that reduces to zero leaves the
// GF(2) combination of original columns that produced it.
struct AuxColumns {
    std::vector<SparseColumn> cols;
    SparseColumn scratch;

    explicit AuxColumns(std::size_t n) : cols(n) {
        for (std::size_t j = 0; j < n; ++j) cols[j] = {static_cast<index_t>(j)};
    }
    void mirror(index_t src, index_t dst) { add_into(cols[dst], cols[src], scratch); }
};

// Min-priority queue of grades in lexicographic order with lazy duplicate
// suppression. Every push is lex-greater-or-equal to the grade currently
// being processed, so anything equal to the last returned grade is stale and
// gets skipped; returned grades are strictly increasing.
struct GradeQueue {
    void push(Grade g) { heap.push(g); }
    bool pop(Grade& out);
    bool empty() const { return heap.empty(); }

private:
    struct LexGreater {
        bool operator()(Grade a, Grade b) const { return lex_less(b, a); }
    };
    std::priority_queue<Grade, std::vector<Grade>, LexGreater> heap;
    Grade last_{-1, -1};
    bool has_last_ = false;
};

// One min-priority queue of column indices per y-grade. Every index pushed
// carries that y-grade; within one drain, pops are ascending.
struct RowQueues {
    explicit RowQueues(std::size_t num_y_ranks) : per_y(num_y_ranks) {}
    void push(index_t y, index_t col) { per_y[y].push(col); }
    bool pop(index_t y, index_t& out);
    bool empty(index_t y) const { return per_y[static_cast<std::size_t>(y)].empty(); }

private:
    std::vector<std::priority_queue<index_t, std::vector<index_t>, std::greater<>>> per_y;
};

// Reduce column j against earlier pivot owners: while the pivot is owned by
// a smaller column, add that column; an unowned pivot is claimed. piv[i] = k
// means column k owns pivot row i (-1: unowned).
void reduce_lw(GradedMatrix& m, std::vector<index_t>& piv, index_t j, AuxColumns* aux,
               MpfreeCounters* counters);

// Queue-driven variant: when the pivot of column i is owned by a larger
// column k, ownership moves to i, k is scheduled in the row queue of its
// y-grade, (current x, k's y) is pushed to the grade queue, and the
// reduction stops; the deferred work happens when that grade is popped.
void reduce_queued(GradedMatrix& m, std::vector<index_t>& piv, index_t i, Grade current,
                   AuxColumns* aux, GradeQueue& grades, RowQueues& rows,
                   MpfreeCounters* counters);

// Minimal generating set of the image of A: the columns that do not reduce
// to zero against anything of smaller or equal grade, graded at the cell
// where they were visited. Grid-scan baseline and queue-driven version
// produce identical graded matrices.
GradedMatrix min_gens_lw(const GradedMatrix& A, MpfreeCounters* counters = nullptr);
GradedMatrix min_gens(const GradedMatrix& A, MpfreeCounters* counters = nullptr);

// Basis of the kernel of B: the auxiliary column of every matrix column
// that dies, graded at the cell where it died. Rows of the result are B's
// columns. A column that is zero from the start contributes its unit column
// at its own grade.
GradedMatrix ker_basis_lw(const GradedMatrix& B, MpfreeCounters* counters = nullptr);
GradedMatrix ker_basis(const GradedMatrix& B, MpfreeCounters* counters = nullptr);

// Re-express every column of G in the kernel basis K. The result is a
// semi-minimal presentation: rows are K's columns, column grades are G's.
// Throws ValidationError when a G column does not lie in the span of K
// (the input was not a chain complex).
GradedMatrix reparam(const GradedMatrix& G, const GradedMatrix& K, int threads = 1,
                     MpfreeCounters* counters = nullptr);

// Minimization of a semi-minimal presentation by compressing the one-matrix
// chain complex it spans.
GradedMatrix minimize(const GradedMatrix& semi, int threads = 1,
                      MpfreeCounters* counters = nullptr);

// Scan-based minimization kept as a cross-check: clears each local pivot
// from all later columns, then drops the paired rows and columns.
GradedMatrix minimize_lw(const GradedMatrix& semi, MpfreeCounters* counters = nullptr);

struct MpfreeOptions {
    int threads = 1;        // <= 0: all available cores
    bool lw_baseline = false;  // use the grid-scan paths throughout
};

struct MpfreeResult {
    GradedMatrix presentation;
    MpfreeCounters counters;
    double min_gens_seconds = 0;
    double ker_basis_seconds = 0;
    double reparam_seconds = 0;
    double minimize_seconds = 0;
};

// Minimal presentation of the homology between two consecutive boundary
// maps: upper maps the higher block into the middle one, lower maps the
// middle block down. Assumes lower * upper = 0.
MpfreeResult minimal_presentation(const GradedMatrix& upper, const GradedMatrix& lower,
                                  const MpfreeOptions& opts = {});

// Convenience on a whole complex: presentation of the homology at dimension
// n, requiring boundary maps for dimensions n+1 and n. Checks that the two
// matrices compose to zero and names the offending column otherwise.
MpfreeResult mpfree(const ChainComplex& c, int homology_dim, const MpfreeOptions& opts = {});

// Wrap a presentation as a length-1 complex for serialization.
ChainComplex presentation_to_complex(const GradedMatrix& pres, const GradeScale& scale);

}  // namespace mpc
