#include "multichunk.hpp"

#include <cassert>
#include <chrono>

#include "parallel.hpp"

namespace mpc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Maximal runs of equal column grade.
std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(const GradedMatrix& m) {
    std::vector<std::pair<std::size_t, std::size_t>> chunks;
    const std::size_t n = m.columns.size();
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin + 1;
        while (end < n && m.col_grades[end] == m.col_grades[begin]) ++end;
        chunks.emplace_back(begin, end);
        begin = end;
    }
    return chunks;
}

#ifndef NDEBUG
bool homogeneous(const GradedMatrix& m) {
    for (std::size_t j = 0; j < m.columns.size(); ++j)
        for (index_t r : m.columns[j])
            if (!leq(m.row_grades[r], m.col_grades[j])) return false;
    return true;
}
#endif

}  // namespace

std::uint64_t local_reduction(GradedMatrix& m, LabelTable& labels, std::size_t b,
                              int threads) {
    auto& col_labels = labels.labels[b];
    auto& row_labels = labels.labels[b + 1];
    auto& col_partner = labels.partner[b];
    auto& row_partner = labels.partner[b + 1];

    // owner[r] = local-negative column with pivot r. A local pivot's row
    // grade equals its column's grade, so distinct chunks write to disjoint
    // rows and the array can be shared without locks.
    std::vector<index_t> owner(static_cast<std::size_t>(m.n_rows), index_t(-1));
    const auto chunks = chunk_ranges(m);

    std::vector<std::uint64_t> additions_per_slot(
        std::max<std::size_t>(1, static_cast<std::size_t>(resolve_threads(threads))), 0);
    parallel_for(chunks.size(), threads, [&](std::size_t cb, std::size_t ce, std::size_t slot) {
        SparseColumn scratch;
        for (std::size_t ci = cb; ci < ce; ++ci) {
            const auto [begin, end] = chunks[ci];
            for (std::size_t j = begin; j < end; ++j) {
                const index_t col = static_cast<index_t>(j);
                if (col_labels[j] != Label::Unlabeled) continue;  // cleared from above
                for (;;) {
                    const index_t p = pivot(m.columns[j]);
                    if (p < 0 || m.row_grades[p] != m.col_grades[j]) break;
                    const index_t own = owner[p];
                    if (own < 0) break;
                    add_column(m, own, col, scratch);
                    ++additions_per_slot[slot];
                }
                const index_t p = pivot(m.columns[j]);
                if (p >= 0 && m.row_grades[p] == m.col_grades[j]) {
                    col_labels[j] = Label::LocalNegative;
                    row_labels[p] = Label::LocalPositive;
                    col_partner[j] = p;
                    row_partner[p] = col;
                    owner[p] = col;
                } else {
                    col_labels[j] = Label::Global;
                }
            }
        }
    });

    std::uint64_t additions = 0;
    for (std::uint64_t a : additions_per_slot) additions += a;
    assert(homogeneous(m));
    return additions;
}

std::uint64_t compress(GradedMatrix& m, const LabelTable& labels, std::size_t b,
                       int threads) {
    const auto& col_labels = labels.labels[b];
    const auto& row_labels = labels.labels[b + 1];
    const auto& row_partner = labels.partner[b + 1];

    std::vector<std::uint64_t> additions_per_slot(
        std::max<std::size_t>(1, static_cast<std::size_t>(resolve_threads(threads))), 0);
    parallel_for(m.columns.size(), threads, [&](std::size_t begin, std::size_t end,
                                                std::size_t slot) {
        SparseColumn scratch;
        for (std::size_t j = begin; j < end; ++j) {
            if (col_labels[j] != Label::Global) continue;
            SparseColumn& col = m.columns[j];
            std::size_t confirmed = 0;  // trailing entries already known global
#ifndef NDEBUG
            index_t last_local = m.n_rows;
#endif
            while (col.size() > confirmed) {
                const index_t r = col[col.size() - 1 - confirmed];
                const Label rl = row_labels[r];
                if (rl == Label::Global) {
                    ++confirmed;
                    continue;
                }
#ifndef NDEBUG
                assert(r < last_local);  // maximal local index strictly decreases
                last_local = r;
#endif
                if (rl == Label::LocalNegative) {
                    col.erase(col.end() - 1 - static_cast<std::ptrdiff_t>(confirmed));
                    continue;
                }
                assert(rl == Label::LocalPositive);
                const index_t src = row_partner[r];
                assert(src >= 0 && col_labels[src] == Label::LocalNegative);
                assert(pivot(m.columns[src]) == r);
                add_column(m, src, static_cast<index_t>(j), scratch);
                ++additions_per_slot[slot];
            }
        }
    });

    std::uint64_t additions = 0;
    for (std::uint64_t a : additions_per_slot) additions += a;
    assert(homogeneous(m));
    return additions;
}

GradedMatrix remove_local(const GradedMatrix& m, const LabelTable& labels, std::size_t b) {
    const auto& col_labels = labels.labels[b];
    const auto& row_labels = labels.labels[b + 1];

    std::vector<index_t> row_map(static_cast<std::size_t>(m.n_rows), index_t(-1));
    GradedMatrix out;
    for (index_t r = 0; r < m.n_rows; ++r) {
        if (row_labels[r] != Label::Global) continue;
        row_map[r] = out.n_rows++;
        out.row_grades.push_back(m.row_grades[r]);
    }
    for (std::size_t j = 0; j < m.columns.size(); ++j) {
        if (col_labels[j] != Label::Global) continue;
        SparseColumn col;
        col.reserve(m.columns[j].size());
        for (index_t r : m.columns[j]) {
            assert(row_map[r] >= 0);  // compressed global columns only touch global rows
            col.push_back(row_map[r]);
        }
        out.columns.push_back(std::move(col));
        out.col_grades.push_back(m.col_grades[j]);
    }
    return out;
}

MultiChunkResult multi_chunk(const ChainComplex& in, const MultiChunkOptions& opts) {
    MultiChunkResult result;
    ChainComplex work = in;
    const std::size_t blocks = work.num_blocks();
    const std::size_t k = work.matrices.size();

    std::vector<std::size_t> sizes(blocks);
    for (std::size_t b = 0; b < blocks; ++b) sizes[b] = work.block_size(b);
    result.labels.resize_like(sizes);
    result.stats.blocks.resize(blocks);

    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t b = 0; b < k; ++b)
        result.stats.column_additions +=
            local_reduction(work.matrices[b], result.labels, b, opts.threads);
    // Generators never touched by a pairing are global; this also covers the
    // lowest block and complexes without any matrix.
    for (std::size_t b = 0; b < blocks; ++b)
        for (Label& l : result.labels.labels[b])
            if (l == Label::Unlabeled) l = Label::Global;
    result.stats.local_reduction_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    for (std::size_t b = 0; b < k; ++b)
        result.stats.column_additions += compress(work.matrices[b], result.labels, b, opts.threads);
    result.stats.compression_seconds = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    ChainComplex& out = result.complex;
    out.scale = work.scale;
    out.matrices.resize(k);
    for (std::size_t b = 0; b < k; ++b)
        out.matrices[b] = remove_local(work.matrices[b], result.labels, b);
    if (k == 0) {
        for (std::size_t i = 0; i < work.lone_block_grades.size(); ++i)
            if (result.labels.labels[0][i] == Label::Global)
                out.lone_block_grades.push_back(work.lone_block_grades[i]);
    }
    out.tokens.resize(blocks);
    if (!work.tokens.empty()) {
        for (std::size_t b = 0; b < blocks; ++b)
            for (std::size_t i = 0; i < sizes[b]; ++i)
                if (result.labels.labels[b][i] == Label::Global)
                    out.tokens[b].push_back(work.tokens[b][i]);
    } else {
        for (std::size_t b = 0; b < blocks; ++b)
            out.tokens[b].resize(out.block_size(b));
    }
    result.stats.removal_seconds = seconds_since(t0);

    for (std::size_t b = 0; b < blocks; ++b) {
        BlockLabelCounts& counts = result.stats.blocks[b];
        for (Label l : result.labels.labels[b]) {
            if (l == Label::Global) ++counts.global;
            if (l == Label::LocalPositive) ++counts.local_positive;
            if (l == Label::LocalNegative) ++counts.local_negative;
        }
    }
    return result;
}

}  // namespace mpc
