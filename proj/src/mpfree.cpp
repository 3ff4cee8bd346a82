#include "mpfree.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <numeric>

#include "multichunk.hpp"
#include "parallel.hpp"

namespace mpc {

MpfreeCounters& MpfreeCounters::operator+=(const MpfreeCounters& o) {
    additions += o.additions;
    addition_cost += o.addition_cost;
    grade_queue_pops += o.grade_queue_pops;
    grade_queue_pushes += o.grade_queue_pushes;
    row_queue_pops += o.row_queue_pops;
    grid_cells_visited += o.grid_cells_visited;
    return *this;
}

bool GradeQueue::pop(Grade& out) {
    while (!heap.empty() && has_last_ && heap.top() == last_) heap.pop();
    if (heap.empty()) return false;
    out = heap.top();
    heap.pop();
    while (!heap.empty() && heap.top() == out) heap.pop();
    last_ = out;
    has_last_ = true;
    return true;
}

bool RowQueues::pop(index_t y, index_t& out) {
    auto& q = per_y[static_cast<std::size_t>(y)];
    if (q.empty()) return false;
    out = q.top();
    q.pop();
    return true;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Run {
    Grade grade;
    std::size_t begin;
    std::size_t end;
};

// Maximal runs of equal column grade; colex order makes them contiguous.
std::vector<Run> grade_runs(const GradedMatrix& m) {
    std::vector<Run> runs;
    std::size_t begin = 0;
    while (begin < m.columns.size()) {
        std::size_t end = begin + 1;
        while (end < m.columns.size() && m.col_grades[end] == m.col_grades[begin]) ++end;
        runs.push_back({m.col_grades[begin], begin, end});
        begin = end;
    }
    return runs;
}

enum class SweepMode { Generators, Kernel };

struct SweepOutput {
    std::vector<SparseColumn> columns;
    std::vector<Grade> grades;
};

void sort_colex_stable(SweepOutput& out) {
    std::vector<index_t> order(out.columns.size());
    std::iota(order.begin(), order.end(), index_t(0));
    std::stable_sort(order.begin(), order.end(), [&](index_t a, index_t b) {
        return colex_less(out.grades[a], out.grades[b]);
    });
    SweepOutput sorted;
    sorted.columns.reserve(order.size());
    sorted.grades.reserve(order.size());
    for (index_t i : order) {
        sorted.columns.push_back(std::move(out.columns[i]));
        sorted.grades.push_back(out.grades[i]);
    }
    out = std::move(sorted);
}

GradedMatrix assemble(const GradedMatrix& input, SweepMode mode, SweepOutput&& out) {
    sort_colex_stable(out);
    GradedMatrix result;
    result.columns = std::move(out.columns);
    result.col_grades = std::move(out.grades);
    if (mode == SweepMode::Generators) {
        result.n_rows = input.n_rows;
        result.row_grades = input.row_grades;
    } else {
        result.n_rows = input.n_cols();
        result.row_grades = input.col_grades;
    }
    return result;
}

// Emission rule shared by both kernel sweeps: a column contributes its
// auxiliary column the moment it is empty, either because the reduction
// just killed it or because it was zero from the start and its own grade
// cell is being visited.
bool should_emit_kernel(bool was_nonzero, bool empty_now, bool at_own_grade, bool emitted) {
    if (emitted || !empty_now) return false;
    return was_nonzero || at_own_grade;
}

}  // namespace

void reduce_lw(GradedMatrix& m, std::vector<index_t>& piv, index_t j, AuxColumns* aux,
               MpfreeCounters* counters) {
    SparseColumn scratch;
    SparseColumn& col = m.columns[j];
    while (!col.empty()) {
        const index_t p = col.back();
        const index_t k = piv[p];
        if (k < 0 || k > j) {
            piv[p] = j;
            break;
        }
        if (k == j) break;
        // The grade of k is bounded by the sweep cell being processed, not
        // by j's own grade: re-reductions at later cells may mix in columns
        // born to the right of j. Output snapshots are taken before that.
        const std::size_t cost = add_into(col, m.columns[k], scratch);
        if (aux) aux->mirror(k, j);
        if (counters) {
            ++counters->additions;
            counters->addition_cost += cost;
        }
    }
}

void reduce_queued(GradedMatrix& m, std::vector<index_t>& piv, index_t i, Grade current,
                   AuxColumns* aux, GradeQueue& grades, RowQueues& rows,
                   MpfreeCounters* counters) {
    SparseColumn scratch;
    SparseColumn& col = m.columns[i];
    while (!col.empty()) {
        const index_t p = col.back();
        const index_t k = piv[p];
        if (k < 0) {
            piv[p] = i;
            break;
        }
        if (k == i) break;
        if (k > i) {
            // k will need the deferred addition; it becomes relevant the
            // next time its y-grade is visited on the current x column.
            const index_t ky = m.col_grades[k].y;
            rows.push(ky, k);
            grades.push(Grade{current.x, ky});
            if (counters) ++counters->grade_queue_pushes;
            piv[p] = i;
            break;
        }
        assert(leq(m.col_grades[k], current));  // only visited columns are mixed in
        const std::size_t cost = add_into(col, m.columns[k], scratch);
        if (aux) aux->mirror(k, i);
        if (counters) {
            ++counters->additions;
            counters->addition_cost += cost;
        }
    }
}

namespace {

GradedMatrix grid_sweep_lw(const GradedMatrix& input, SweepMode mode,
                           MpfreeCounters* counters) {
    GradedMatrix work = input;
    const std::size_t n = work.columns.size();
    AuxColumns aux(mode == SweepMode::Kernel ? n : 0);
    AuxColumns* aux_ptr = mode == SweepMode::Kernel ? &aux : nullptr;
    std::vector<index_t> piv(static_cast<std::size_t>(work.n_rows), index_t(-1));
    std::vector<char> emitted(n, 0);
    SweepOutput out;

    // Per y-rank: runs of columns at that y, ascending in x.
    index_t max_x = -1, max_y = -1;
    for (const Grade& g : work.col_grades) {
        max_x = std::max(max_x, g.x);
        max_y = std::max(max_y, g.y);
    }
    std::vector<std::vector<Run>> rows_by_y(static_cast<std::size_t>(max_y) + 1);
    for (const Run& run : grade_runs(work)) rows_by_y[run.grade.y].push_back(run);

    for (index_t x = 0; x <= max_x; ++x) {
        for (index_t y = 0; y <= max_y; ++y) {
            if (counters) ++counters->grid_cells_visited;
            const Grade cell{x, y};
            for (const Run& run : rows_by_y[y]) {
                if (run.grade.x > x) break;
                // The generator sweep appends survivors only after the whole
                // prefix was re-reduced; the order below visits the prefix
                // first because runs ascend in x.
                for (std::size_t j = run.begin; j < run.end; ++j) {
                    const index_t col = static_cast<index_t>(j);
                    const bool was_nonzero = !work.columns[j].empty();
                    reduce_lw(work, piv, col, aux_ptr, counters);
                    if (mode == SweepMode::Kernel) {
                        if (should_emit_kernel(was_nonzero, work.columns[j].empty(),
                                               work.col_grades[j] == cell, emitted[j])) {
                            emitted[j] = 1;
                            out.columns.push_back(aux.cols[j]);
                            out.grades.push_back(cell);
                        }
                    } else if (work.col_grades[j] == cell && !work.columns[j].empty()) {
                        out.columns.push_back(work.columns[j]);
                        out.grades.push_back(cell);
                    }
                }
            }
        }
    }
    return assemble(input, mode, std::move(out));
}

GradedMatrix grid_sweep_queued(const GradedMatrix& input, SweepMode mode,
                               MpfreeCounters* counters) {
    GradedMatrix work = input;
    const std::size_t n = work.columns.size();
    AuxColumns aux(mode == SweepMode::Kernel ? n : 0);
    AuxColumns* aux_ptr = mode == SweepMode::Kernel ? &aux : nullptr;
    std::vector<index_t> piv(static_cast<std::size_t>(work.n_rows), index_t(-1));
    std::vector<char> emitted(n, 0);
    SweepOutput out;

    index_t max_y = -1;
    for (const Grade& g : work.col_grades) max_y = std::max(max_y, g.y);
    RowQueues rows(static_cast<std::size_t>(max_y) + 1);
    GradeQueue grades;
    const std::vector<Run> runs = grade_runs(work);
    for (const Run& run : runs) grades.push(run.grade);

    Grade cell;
#ifndef NDEBUG
    Grade last_popped{-1, -1};
    bool first_pop = true;
#endif
    while (grades.pop(cell)) {
        if (counters) ++counters->grade_queue_pops;
#ifndef NDEBUG
        assert(first_pop || lex_less(last_popped, cell));  // pops strictly increase
        last_popped = cell;
        first_pop = false;
#endif
        auto it = std::lower_bound(runs.begin(), runs.end(), cell,
                                   [](const Run& r, const Grade& g) {
                                       return colex_less(r.grade, g);
                                   });
        if (it != runs.end() && it->grade == cell)
            for (std::size_t j = it->begin; j < it->end; ++j)
                rows.push(cell.y, static_cast<index_t>(j));

        index_t last_index = -1;
        index_t i;
        while (rows.pop(cell.y, i)) {
            if (counters) ++counters->row_queue_pops;
            if (i == last_index) continue;  // duplicate push, already handled
            assert(i > last_index);
            last_index = i;
            const bool was_nonzero = !work.columns[i].empty();
            reduce_queued(work, piv, i, cell, aux_ptr, grades, rows, counters);
            if (mode == SweepMode::Kernel) {
                if (should_emit_kernel(was_nonzero, work.columns[i].empty(),
                                       work.col_grades[i] == cell, emitted[i])) {
                    emitted[i] = 1;
                    out.columns.push_back(aux.cols[i]);
                    out.grades.push_back(cell);
                }
            } else if (work.col_grades[i] == cell && !work.columns[i].empty()) {
                out.columns.push_back(work.columns[i]);
                out.grades.push_back(cell);
            }
        }
    }
    return assemble(input, mode, std::move(out));
}

}  // namespace

GradedMatrix min_gens_lw(const GradedMatrix& A, MpfreeCounters* counters) {
    return grid_sweep_lw(A, SweepMode::Generators, counters);
}

GradedMatrix min_gens(const GradedMatrix& A, MpfreeCounters* counters) {
    return grid_sweep_queued(A, SweepMode::Generators, counters);
}

GradedMatrix ker_basis_lw(const GradedMatrix& B, MpfreeCounters* counters) {
    return grid_sweep_lw(B, SweepMode::Kernel, counters);
}

GradedMatrix ker_basis(const GradedMatrix& B, MpfreeCounters* counters) {
    return grid_sweep_queued(B, SweepMode::Kernel, counters);
}

GradedMatrix reparam(const GradedMatrix& G, const GradedMatrix& K, int threads,
                     MpfreeCounters* counters) {
    if (G.n_rows != K.n_rows)
        throw ValidationError("generator and kernel matrices disagree on their row space");

    // K's columns have pairwise distinct pivots (each one is the auxiliary
    // column of the matrix column that died there), so a single left-to-right
    // pass per G column terminates.
    std::vector<index_t> piv(static_cast<std::size_t>(K.n_rows), index_t(-1));
    for (std::size_t c = 0; c < K.columns.size(); ++c) {
        const index_t p = pivot(K.columns[c]);
        assert(p >= 0 && piv[p] < 0);
        piv[p] = static_cast<index_t>(c);
    }

    GradedMatrix pres;
    pres.n_rows = K.n_cols();
    pres.row_grades = K.col_grades;
    pres.col_grades = G.col_grades;
    pres.columns.resize(G.columns.size());

    std::vector<MpfreeCounters> per_slot(
        std::max<std::size_t>(1, static_cast<std::size_t>(resolve_threads(threads))));
    std::vector<std::string> failures(per_slot.size());
    parallel_for(G.columns.size(), threads, [&](std::size_t begin, std::size_t end,
                                                std::size_t slot) {
        SparseColumn work, combo, scratch, one;
        for (std::size_t j = begin; j < end; ++j) {
            work = G.columns[j];
            combo.clear();
            while (!work.empty()) {
                const index_t p = work.back();
                const index_t c = piv[p];
                if (c < 0) {
                    failures[slot] = "column " + std::to_string(j) +
                                     " does not reduce to zero against the kernel basis; "
                                     "the boundaries do not compose to zero";
                    return;
                }
                assert(leq(K.col_grades[c], G.col_grades[j]));
                const std::size_t cost = add_into(work, K.columns[c], scratch);
                one.assign(1, c);
                add_into(combo, one, scratch);
                ++per_slot[slot].additions;
                per_slot[slot].addition_cost += cost;
            }
            pres.columns[j] = combo;
        }
    });
    for (const std::string& f : failures)
        if (!f.empty()) throw ValidationError(f);
    if (counters)
        for (const MpfreeCounters& c : per_slot) *counters += c;
    return pres;
}

GradedMatrix minimize(const GradedMatrix& semi, int threads, MpfreeCounters* counters) {
    ChainComplex one;
    one.matrices.push_back(semi);
    one.tokens.resize(2);
    one.tokens[0].resize(semi.columns.size());
    one.tokens[1].resize(static_cast<std::size_t>(semi.n_rows));
    MultiChunkOptions opts;
    opts.threads = threads;
    MultiChunkResult compressed = multi_chunk(one, opts);
    if (counters) counters->additions += compressed.stats.column_additions;
    return std::move(compressed.complex.matrices[0]);
}

GradedMatrix minimize_lw(const GradedMatrix& semi, MpfreeCounters* counters) {
    GradedMatrix work = semi;
    const std::size_t n = work.columns.size();
    std::vector<char> col_marked(n, 0);
    std::vector<char> row_marked(static_cast<std::size_t>(work.n_rows), 0);
    SparseColumn scratch;
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_local(work, static_cast<index_t>(i))) continue;
        const index_t j = pivot(work.columns[i]);
        for (std::size_t k = i + 1; k < n; ++k) {
            if (!std::binary_search(work.columns[k].begin(), work.columns[k].end(), j))
                continue;
            const std::size_t cost = add_into(work.columns[k], work.columns[i], scratch);
            if (counters) {
                ++counters->additions;
                counters->addition_cost += cost;
            }
        }
        col_marked[i] = 1;
        row_marked[j] = 1;
    }
    GradedMatrix out;
    std::vector<index_t> row_map(static_cast<std::size_t>(work.n_rows), index_t(-1));
    for (index_t r = 0; r < work.n_rows; ++r) {
        if (row_marked[r]) continue;
        row_map[r] = out.n_rows++;
        out.row_grades.push_back(work.row_grades[r]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (col_marked[i]) continue;
        SparseColumn col;
        col.reserve(work.columns[i].size());
        for (index_t r : work.columns[i]) {
            assert(row_map[r] >= 0);
            col.push_back(row_map[r]);
        }
        out.columns.push_back(std::move(col));
        out.col_grades.push_back(work.col_grades[i]);
    }
    return out;
}

MpfreeResult minimal_presentation(const GradedMatrix& upper, const GradedMatrix& lower,
                                  const MpfreeOptions& opts) {
    MpfreeResult result;
    auto t0 = std::chrono::steady_clock::now();
    const GradedMatrix gens = opts.lw_baseline ? min_gens_lw(upper, &result.counters)
                                               : min_gens(upper, &result.counters);
    result.min_gens_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const GradedMatrix kernel = opts.lw_baseline ? ker_basis_lw(lower, &result.counters)
                                                 : ker_basis(lower, &result.counters);
    result.ker_basis_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const GradedMatrix semi = reparam(gens, kernel, opts.threads, &result.counters);
    result.reparam_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    result.presentation = opts.lw_baseline ? minimize_lw(semi, &result.counters)
                                           : minimize(semi, opts.threads, &result.counters);
    result.minimize_seconds = seconds_since(t0);
    return result;
}

MpfreeResult mpfree(const ChainComplex& c, int homology_dim, const MpfreeOptions& opts) {
    const int top_dim = static_cast<int>(c.num_blocks()) - 1;
    if (homology_dim < 1 || homology_dim + 1 > top_dim)
        throw ValidationError("homology dimension " + std::to_string(homology_dim) +
                              " needs boundary maps for dimensions " +
                              std::to_string(homology_dim + 1) + " and " +
                              std::to_string(homology_dim));
    const GradedMatrix& upper = c.matrices[c.block_of_dim(homology_dim + 1)];
    const GradedMatrix& lower = c.matrices[c.block_of_dim(homology_dim)];

    SparseColumn acc, scratch;
    for (std::size_t j = 0; j < upper.columns.size(); ++j) {
        acc.clear();
        for (index_t r : upper.columns[j]) add_into(acc, lower.columns[r], scratch);
        if (!acc.empty())
            throw ValidationError("boundaries do not compose to zero at dimension " +
                                  std::to_string(homology_dim + 1) + ", column " +
                                  std::to_string(j));
    }
    return minimal_presentation(upper, lower, opts);
}

ChainComplex presentation_to_complex(const GradedMatrix& pres, const GradeScale& scale) {
    ChainComplex c;
    c.matrices.push_back(pres);
    c.scale = scale;
    c.tokens.resize(2);
    c.tokens[0].resize(pres.columns.size());
    c.tokens[1].resize(static_cast<std::size_t>(pres.n_rows));
    return c;
}

}  // namespace mpc
