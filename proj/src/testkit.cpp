#include "testkit.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <map>
#include <numeric>
#include <random>

namespace mpc::testkit {

namespace {

// Dense GF(2) vector. The oracles below use plain textbook elimination on
// these, independent of the sparse reduction in the production path.
struct Bits {
    std::vector<std::uint64_t> w;

    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void operator^=(const Bits& o) {
        for (std::size_t i = 0; i < o.w.size(); ++i) w[i] ^= o.w[i];
    }
    bool any() const {
        for (std::uint64_t x : w)
            if (x) return true;
        return false;
    }
    long top() const {
        for (std::size_t i = w.size(); i-- > 0;)
            if (w[i]) return static_cast<long>(i * 64 + 63 - std::countl_zero(w[i]));
        return -1;
    }
};

// Echelon set keyed by top bit; insert returns false when the vector was in
// the span already.
struct Echelon {
    std::vector<Bits> vecs;
    std::vector<long> owner;  // by top bit; -1 = free

    explicit Echelon(std::size_t ambient) : owner(ambient, -1) {}

    void reduce(Bits& v) const {
        long t;
        while ((t = v.top()) >= 0 && owner[t] >= 0) v ^= vecs[owner[t]];
    }
    bool insert(Bits v) {
        reduce(v);
        const long t = v.top();
        if (t < 0) return false;
        owner[t] = static_cast<long>(vecs.size());
        vecs.push_back(std::move(v));
        return true;
    }
    int rank() const { return static_cast<int>(vecs.size()); }
};

Bits column_bits(const SparseColumn& col, std::size_t n_rows) {
    Bits b(n_rows);
    for (index_t r : col) b.set(static_cast<std::size_t>(r));
    return b;
}

int rank_of_slice(const GradedMatrix& m, Grade z) {
    Echelon ech(static_cast<std::size_t>(m.n_rows));
    int rank = 0;
    for (std::size_t j = 0; j < m.columns.size(); ++j)
        if (leq(m.col_grades[j], z))
            rank += ech.insert(column_bits(m.columns[j], m.n_rows));
    return rank;
}

int count_leq(const std::vector<Grade>& grades, Grade z) {
    int n = 0;
    for (const Grade& g : grades) n += leq(g, z);
    return n;
}

int rank64(std::vector<std::uint64_t> cols) {
    int rank = 0;
    std::array<std::uint64_t, 64> pivots{};
    for (std::uint64_t c : cols) {
        while (c) {
            const int t = 63 - std::countl_zero(c);
            if (pivots[t]) {
                c ^= pivots[t];
            } else {
                pivots[t] = c;
                ++rank;
                break;
            }
        }
    }
    return rank;
}

}  // namespace

std::pair<index_t, index_t> hull_extent(const ChainComplex& c) {
    index_t x = 0, y = 0;
    for (std::size_t b = 0; b < c.num_blocks(); ++b)
        for (const Grade& g : c.block_grades(b)) {
            x = std::max(x, g.x + 1);
            y = std::max(y, g.y + 1);
        }
    return {x, y};
}

std::vector<int> homology_dims(const ChainComplex& c, Grade z) {
    const std::size_t blocks = c.num_blocks();
    const std::size_t k = c.matrices.size();
    std::vector<int> space_dim(blocks, 0);
    for (std::size_t b = 0; b < blocks; ++b) space_dim[b] = count_leq(c.block_grades(b), z);
    std::vector<int> rank(k, 0);
    for (std::size_t b = 0; b < k; ++b) rank[b] = rank_of_slice(c.matrices[b], z);

    std::vector<int> dims(blocks, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        const int nullity = b < k ? space_dim[b] - rank[b] : space_dim[b];
        const int image = b > 0 ? rank[b - 1] : 0;
        dims[b] = nullity - image;
    }
    return dims;
}

std::vector<DeltaGamma> delta_gamma(const ChainComplex& c, Grade z) {
    const std::size_t blocks = c.num_blocks();
    const std::size_t k = c.matrices.size();

    // Permuted slice per block: generators strictly below z first (in input
    // order), then the ones at exactly z.
    std::vector<std::vector<index_t>> sel(blocks);
    std::vector<std::vector<index_t>> pos(blocks);
    std::vector<int> inside(blocks, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto& grades = c.block_grades(b);
        pos[b].assign(grades.size(), index_t(-1));
        for (std::size_t i = 0; i < grades.size(); ++i)
            if (leq(grades[i], z) && grades[i] != z) sel[b].push_back(static_cast<index_t>(i));
        inside[b] = static_cast<int>(sel[b].size());
        for (std::size_t i = 0; i < grades.size(); ++i)
            if (grades[i] == z) sel[b].push_back(static_cast<index_t>(i));
        for (std::size_t p = 0; p < sel[b].size(); ++p) pos[b][sel[b][p]] = static_cast<index_t>(p);
    }

    // One full left-to-right reduction per boundary matrix.
    std::vector<std::vector<long>> lows(k);       // per matrix, per column
    std::vector<std::vector<char>> nonzero(k);
    for (std::size_t b = 0; b < k; ++b) {
        const GradedMatrix& m = c.matrices[b];
        const std::size_t rows = sel[b + 1].size();
        std::vector<Bits> reduced;
        reduced.reserve(sel[b].size());
        std::vector<long> owner(rows, -1);
        lows[b].assign(sel[b].size(), -1);
        nonzero[b].assign(sel[b].size(), 0);
        for (std::size_t p = 0; p < sel[b].size(); ++p) {
            Bits col(rows);
            for (index_t r : m.columns[sel[b][p]]) {
                assert(pos[b + 1][r] >= 0);
                col.set(static_cast<std::size_t>(pos[b + 1][r]));
            }
            long low;
            while ((low = col.top()) >= 0 && owner[low] >= 0) col ^= reduced[owner[low]];
            if (low >= 0) owner[low] = static_cast<long>(p);
            reduced.push_back(std::move(col));
            lows[b][p] = low;
            nonzero[b][p] = low >= 0;
        }
    }

    std::vector<DeltaGamma> result(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        DeltaGamma& dg = result[b];
        dg.gamma = static_cast<int>(sel[b].size()) - inside[b];
        std::vector<char> low_target(sel[b].size(), 0);
        if (b > 0)
            for (long low : lows[b - 1])
                if (low >= 0) low_target[static_cast<std::size_t>(low)] = 1;
        for (std::size_t p = static_cast<std::size_t>(inside[b]); p < sel[b].size(); ++p) {
            if (b < k && nonzero[b][p]) {
                if (lows[b][p] < inside[b + 1]) ++dg.delta;  // kills a class from below
            } else if (!low_target[p]) {
                ++dg.delta;  // creates a class not killed at this grade
            }
        }
    }
    return result;
}

GridTable build_grid_table(const ChainComplex& c) {
    GridTable table;
    const auto [x_extent, y_extent] = hull_extent(c);
    table.x_extent = x_extent;
    table.y_extent = y_extent;
    const std::size_t cells = static_cast<std::size_t>(x_extent) * static_cast<std::size_t>(y_extent);
    table.homology.resize(cells);
    table.delta.resize(cells);
    table.gamma.resize(cells);
    for (index_t y = 0; y < y_extent; ++y)
        for (index_t x = 0; x < x_extent; ++x) {
            const std::size_t cell = table.cell(x, y);
            table.homology[cell] = homology_dims(c, Grade{x, y});
            const auto dg = delta_gamma(c, Grade{x, y});
            table.delta[cell].reserve(dg.size());
            table.gamma[cell].reserve(dg.size());
            for (const DeltaGamma& v : dg) {
                table.delta[cell].push_back(v.delta);
                table.gamma[cell].push_back(v.gamma);
            }
        }
    return table;
}

namespace {

// Per-cell coordinate machinery of a subquotient space span(cycles)/span(im):
// the basis is the echelonized set of reduced cycle vectors, so coordinates
// fall out of top-bit cancellation.
struct CellSpace {
    Echelon im;
    Echelon basis;

    explicit CellSpace(std::size_t ambient) : im(ambient), basis(ambient) {}

    int dim() const { return basis.rank(); }

    std::uint64_t coords(Bits v) const {
        im.reduce(v);
        std::uint64_t mask = 0;
        long t;
        while ((t = v.top()) >= 0) {
            const long o = basis.owner[t];
            assert(o >= 0);  // v must lie in the span of the basis
            v ^= basis.vecs[o];
            mask ^= std::uint64_t(1) << o;
        }
        return mask;
    }
};

PointwiseModule assemble_module(std::vector<CellSpace>&& spaces,
                                const std::vector<std::vector<Bits>>& cycles, index_t x_extent,
                                index_t y_extent) {
    PointwiseModule m;
    m.x_extent = x_extent;
    m.y_extent = y_extent;
    const std::size_t cells = spaces.size();
    m.dims.resize(cells);
    m.map_x.resize(cells);
    m.map_y.resize(cells);
    for (index_t y = 0; y < y_extent; ++y)
        for (index_t x = 0; x < x_extent; ++x) {
            const std::size_t cell = m.cell(x, y);
            m.dims[cell] = spaces[cell].dim();
            assert(m.dims[cell] <= 64);
            for (const Bits& v : cycles[cell]) {
                if (x + 1 < x_extent) m.map_x[cell].push_back(spaces[m.cell(x + 1, y)].coords(v));
                if (y + 1 < y_extent) m.map_y[cell].push_back(spaces[m.cell(x, y + 1)].coords(v));
            }
        }
    return m;
}

}  // namespace

PointwiseModule module_from_presentation(const GradedMatrix& pres, index_t x_extent,
                                         index_t y_extent) {
    const std::size_t ambient = static_cast<std::size_t>(pres.n_rows);
    const std::size_t cells = static_cast<std::size_t>(x_extent) * static_cast<std::size_t>(y_extent);
    std::vector<CellSpace> spaces;
    spaces.reserve(cells);
    std::vector<std::vector<Bits>> cycles(cells);
    for (index_t y = 0; y < y_extent; ++y)
        for (index_t x = 0; x < x_extent; ++x) {
            const Grade z{x, y};
            CellSpace space(ambient);
            for (std::size_t j = 0; j < pres.columns.size(); ++j)
                if (leq(pres.col_grades[j], z))
                    space.im.insert(column_bits(pres.columns[j], pres.n_rows));
            const std::size_t cell = spaces.size();
            for (index_t r = 0; r < pres.n_rows; ++r) {
                if (!leq(pres.row_grades[r], z)) continue;
                Bits unit(ambient);
                unit.set(static_cast<std::size_t>(r));
                Bits reduced = unit;
                space.im.reduce(reduced);
                if (space.basis.insert(reduced)) cycles[cell].push_back(unit);
            }
            spaces.push_back(std::move(space));
        }
    return assemble_module(std::move(spaces), cycles, x_extent, y_extent);
}

PointwiseModule module_from_homology(const ChainComplex& c, int homology_dim, index_t x_extent,
                                     index_t y_extent) {
    const std::size_t bn = c.block_of_dim(homology_dim);
    const std::size_t k = c.matrices.size();
    const auto& grades = c.block_grades(bn);
    const std::size_t ambient = grades.size();
    const std::size_t cells = static_cast<std::size_t>(x_extent) * static_cast<std::size_t>(y_extent);
    std::vector<CellSpace> spaces;
    spaces.reserve(cells);
    std::vector<std::vector<Bits>> cycles(cells);
    for (index_t y = 0; y < y_extent; ++y)
        for (index_t x = 0; x < x_extent; ++x) {
            const Grade z{x, y};
            CellSpace space(ambient);
            if (bn > 0) {
                const GradedMatrix& into = c.matrices[bn - 1];
                for (std::size_t j = 0; j < into.columns.size(); ++j)
                    if (leq(into.col_grades[j], z))
                        space.im.insert(column_bits(into.columns[j], into.n_rows));
            }
            const std::size_t cell = spaces.size();
            std::vector<Bits> kernel;
            if (bn < k) {
                // Kernel of the outgoing boundary, tracked through auxiliary
                // combination vectors.
                const GradedMatrix& out = c.matrices[bn];
                const std::size_t rows = static_cast<std::size_t>(out.n_rows);
                std::vector<Bits> reduced;
                std::vector<Bits> combo;
                std::vector<long> owner(rows, -1);
                for (std::size_t j = 0; j < out.columns.size(); ++j) {
                    if (!leq(out.col_grades[j], z)) continue;
                    Bits col = column_bits(out.columns[j], out.n_rows);
                    Bits aux(ambient);
                    aux.set(j);
                    long low;
                    while ((low = col.top()) >= 0 && owner[low] >= 0) {
                        col ^= reduced[owner[low]];
                        aux ^= combo[owner[low]];
                    }
                    if (low >= 0) {
                        owner[low] = static_cast<long>(reduced.size());
                        reduced.push_back(std::move(col));
                        combo.push_back(std::move(aux));
                    } else {
                        kernel.push_back(std::move(aux));
                    }
                }
            } else {
                for (std::size_t i = 0; i < ambient; ++i) {
                    if (!leq(grades[i], z)) continue;
                    Bits unit(ambient);
                    unit.set(i);
                    kernel.push_back(std::move(unit));
                }
            }
            for (Bits& v : kernel) {
                Bits reduced = v;
                space.im.reduce(reduced);
                Bits echelon = reduced;
                if (space.basis.insert(echelon)) cycles[cell].push_back(v);
            }
            spaces.push_back(std::move(space));
        }
    return assemble_module(std::move(spaces), cycles, x_extent, y_extent);
}

std::pair<int, int> koszul_betti(const PointwiseModule& m, Grade z) {
    const int d11 = m.dims[m.cell(z.x, z.y)];
    const int d10 = z.x > 0 ? m.dims[m.cell(z.x - 1, z.y)] : 0;
    const int d01 = z.y > 0 ? m.dims[m.cell(z.x, z.y - 1)] : 0;
    const int d00 = (z.x > 0 && z.y > 0) ? m.dims[m.cell(z.x - 1, z.y - 1)] : 0;
    assert(d10 + d01 <= 64);

    std::vector<std::uint64_t> sum_cols;
    if (z.x > 0)
        for (std::uint64_t col : m.map_x[m.cell(z.x - 1, z.y)]) sum_cols.push_back(col);
    if (z.y > 0)
        for (std::uint64_t col : m.map_y[m.cell(z.x, z.y - 1)]) sum_cols.push_back(col);
    const int rank_sum = rank64(sum_cols);

    std::vector<std::uint64_t> diag_cols;
    if (d00 > 0) {
        const std::size_t cell = m.cell(z.x - 1, z.y - 1);
        for (int s = 0; s < d00; ++s)
            diag_cols.push_back(m.map_y[cell][s] | (m.map_x[cell][s] << d10));
    }
    const int rank_diag = rank64(diag_cols);

    const int beta0 = d11 - rank_sum;
    const int beta1 = (d10 + d01 - rank_sum) - rank_diag;
    return {beta0, beta1};
}

int coker_dim(const GradedMatrix& pres, Grade z) {
    return count_leq(pres.row_grades, z) - rank_of_slice(pres, z);
}

namespace {

Grade join(Grade a, Grade b) { return Grade{std::max(a.x, b.x), std::max(a.y, b.y)}; }

// Compact integer grade values to ranks; tokens remember the raw values.
ChainComplex complex_from_blocks(std::vector<std::vector<Grade>> raw_grades,
                                 std::vector<std::vector<SparseColumn>> boundaries) {
    std::vector<index_t> xs, ys;
    for (const auto& block : raw_grades)
        for (const Grade& g : block) {
            xs.push_back(g.x);
            ys.push_back(g.y);
        }
    auto compact = [](std::vector<index_t>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    compact(xs);
    compact(ys);
    auto rank_of = [](const std::vector<index_t>& v, index_t value) {
        return static_cast<index_t>(std::lower_bound(v.begin(), v.end(), value) - v.begin());
    };

    ChainComplex c;
    for (index_t v : xs) c.scale.x_tokens.push_back(std::to_string(v));
    for (index_t v : ys) c.scale.y_tokens.push_back(std::to_string(v));

    const std::size_t blocks = raw_grades.size();
    std::vector<std::vector<Grade>> grades(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        grades[b].reserve(raw_grades[b].size());
        for (const Grade& g : raw_grades[b])
            grades[b].push_back(Grade{rank_of(xs, g.x), rank_of(ys, g.y)});
    }
    c.tokens.resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) c.tokens[b].resize(grades[b].size());
    if (blocks == 1) {
        c.lone_block_grades = grades[0];
    } else {
        c.matrices.resize(blocks - 1);
        for (std::size_t b = 0; b + 1 < blocks; ++b) {
            GradedMatrix& m = c.matrices[b];
            m.n_rows = static_cast<index_t>(grades[b + 1].size());
            m.col_grades = grades[b];
            m.row_grades = grades[b + 1];
            m.columns = std::move(boundaries[b]);
        }
    }
    colex_normalize(c);
    validate(c);
    return c;
}

// Simplices of each dimension keyed by sorted vertex sets; boundaries are
// looked up one dimension down.
ChainComplex complex_from_top_simplices(int num_vertices,
                                        const std::vector<std::vector<index_t>>& top,
                                        const std::vector<Grade>& vertex_grades) {
    const std::size_t dim = top.empty() ? 0 : top.front().size() - 1;
    std::vector<std::map<std::vector<index_t>, index_t>> by_dim(dim + 1);
    for (int v = 0; v < num_vertices; ++v) by_dim[0][{static_cast<index_t>(v)}] = v;
    for (const auto& simplex : top) {
        // Every non-empty subset is a face of the complex.
        for (unsigned mask = 1; mask < (1u << simplex.size()); ++mask) {
            std::vector<index_t> face;
            for (std::size_t i = 0; i < simplex.size(); ++i)
                if (mask & (1u << i)) face.push_back(simplex[i]);
            by_dim[face.size() - 1].emplace(std::move(face), 0);
        }
    }
    // Index deterministically in key order.
    for (std::size_t d = 1; d <= dim; ++d) {
        index_t i = 0;
        for (auto& [key, idx] : by_dim[d]) idx = i++;
    }

    std::vector<std::vector<Grade>> raw_grades(dim + 1);
    std::vector<std::vector<SparseColumn>> boundaries(dim);
    for (std::size_t d = 0; d <= dim; ++d) {
        const std::size_t block = dim - d;  // blocks go top dimension first
        raw_grades[block].resize(by_dim[d].size());
        for (const auto& [key, idx] : by_dim[d]) {
            Grade g{0, 0};
            bool first = true;
            for (index_t v : key) {
                g = first ? vertex_grades[v] : join(g, vertex_grades[v]);
                first = false;
            }
            raw_grades[block][idx] = g;
        }
    }
    for (std::size_t d = 1; d <= dim; ++d) {
        const std::size_t block = dim - d;
        boundaries[block].resize(by_dim[d].size());
        for (const auto& [key, idx] : by_dim[d]) {
            SparseColumn col;
            for (std::size_t drop = 0; drop < key.size(); ++drop) {
                std::vector<index_t> face;
                for (std::size_t i = 0; i < key.size(); ++i)
                    if (i != drop) face.push_back(key[i]);
                col.push_back(by_dim[d - 1].at(face));
            }
            std::sort(col.begin(), col.end());
            boundaries[block][idx] = std::move(col);
        }
    }
    return complex_from_blocks(std::move(raw_grades), std::move(boundaries));
}

}  // namespace

ChainComplex gen_lower_star(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int grade_range = std::max(3, (width + height) / 2);
    std::uniform_int_distribution<index_t> coord(0, static_cast<index_t>(grade_range));

    const int vx = width + 1, vy = height + 1;
    std::vector<Grade> vertex_grades(static_cast<std::size_t>(vx) * vy);
    for (Grade& g : vertex_grades) g = Grade{coord(rng), coord(rng)};
    auto v = [&](int i, int j) { return static_cast<index_t>(j * vx + i); };

    std::vector<std::vector<index_t>> triangles;
    triangles.reserve(static_cast<std::size_t>(width) * height * 2);
    for (int j = 0; j < height; ++j)
        for (int i = 0; i < width; ++i) {
            // Cell corners a=(i,j) b=(i+1,j) c=(i,j+1) d=(i+1,j+1), split
            // along the b-c diagonal.
            triangles.push_back({v(i, j), v(i + 1, j), v(i, j + 1)});
            triangles.push_back({v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)});
        }
    for (auto& t : triangles) std::sort(t.begin(), t.end());
    return complex_from_top_simplices(vx * vy, triangles, vertex_grades);
}

ChainComplex gen_lower_star_solid(int cubes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int grade_range = std::max(3, cubes + 2);
    std::uniform_int_distribution<index_t> coord(0, static_cast<index_t>(grade_range));

    const int num_vertices = 4 * (cubes + 1);
    std::vector<Grade> vertex_grades(num_vertices);
    for (Grade& g : vertex_grades) g = Grade{coord(rng), coord(rng)};
    auto v = [&](int x, int y, int z) { return static_cast<index_t>(x * 4 + y * 2 + z); };

    // Six tetrahedra per cube around the main diagonal: one per permutation
    // of the axis steps.
    const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2},
                                                   {0, 2, 1},
                                                   {1, 0, 2},
                                                   {1, 2, 0},
                                                   {2, 0, 1},
                                                   {2, 1, 0}}};
    std::vector<std::vector<index_t>> tets;
    for (int cube = 0; cube < cubes; ++cube) {
        for (const auto& perm : perms) {
            std::array<int, 3> p{cube, 0, 0};
            std::vector<index_t> tet{v(p[0], p[1], p[2])};
            for (int step : perm) {
                ++p[step];
                tet.push_back(v(p[0], p[1], p[2]));
            }
            std::sort(tet.begin(), tet.end());
            tets.push_back(std::move(tet));
        }
    }
    return complex_from_top_simplices(num_vertices, tets, vertex_grades);
}

ChainComplex inflate_with_local_pairs(const ChainComplex& c, std::uint64_t seed, int count) {
    ChainComplex out = c;
    if (out.num_blocks() < 2 || count <= 0) return out;
    std::mt19937_64 rng(seed);

    for (int step = 0; step < count; ++step) {
        const std::size_t k = out.matrices.size();
        std::uniform_int_distribution<std::size_t> block_dist(0, k - 1);
        const std::size_t b = block_dist(rng);  // relation block; generator lives in b+1
        GradedMatrix& rel = out.matrices[b];
        const auto& gen_grades = rel.row_grades;
        if (gen_grades.empty()) continue;

        // Grade: join of a couple of existing generator grades.
        std::uniform_int_distribution<std::size_t> gen_dist(0, gen_grades.size() - 1);
        Grade z = gen_grades[gen_dist(rng)];
        if (rng() & 1) z = join(z, gen_grades[gen_dist(rng)]);

        // Tail: random subset of generators at grade <= z.
        SparseColumn tail;
        for (std::size_t i = 0; i < gen_grades.size(); ++i)
            if (leq(gen_grades[i], z) && (rng() & 3) == 0) tail.push_back(static_cast<index_t>(i));

        // Insertion points: the end of the colex run of z in each block.
        const auto insert_pos = [&](const std::vector<Grade>& grades) {
            std::size_t p = 0;
            while (p < grades.size() && !colex_less(z, grades[p])) ++p;
            return static_cast<index_t>(p);
        };
        const index_t gen_pos = insert_pos(gen_grades);
        const index_t rel_pos = insert_pos(rel.col_grades);

        // Boundary of the new generator mirrors the tail's boundary, so the
        // composite through the new relation vanishes.
        SparseColumn gen_boundary, scratch;
        if (b + 1 < k)
            for (index_t t : tail) add_into(gen_boundary, out.matrices[b + 1].columns[t], scratch);

        // New generator: a row of `rel` (shift indices), and a column of the
        // next matrix down when there is one.
        for (SparseColumn& col : rel.columns)
            for (index_t& r : col)
                if (r >= gen_pos) ++r;
        rel.row_grades.insert(rel.row_grades.begin() + gen_pos, z);
        ++rel.n_rows;
        if (b + 1 < k) {
            GradedMatrix& below = out.matrices[b + 1];
            below.columns.insert(below.columns.begin() + gen_pos, std::move(gen_boundary));
            below.col_grades.insert(below.col_grades.begin() + gen_pos, z);
        }
        if (!out.tokens.empty())
            out.tokens[b + 1].insert(out.tokens[b + 1].begin() + gen_pos, TokenPair{});

        // New relation: tail indices sit below gen_pos by construction, so
        // the new generator is its pivot and the pair is local.
        SparseColumn rel_col = tail;
        for (index_t& r : rel_col) assert(r < gen_pos);
        rel_col.push_back(gen_pos);
        if (b > 0) {
            GradedMatrix& above = out.matrices[b - 1];
            for (SparseColumn& col : above.columns)
                for (index_t& r : col)
                    if (r >= rel_pos) ++r;
            above.row_grades.insert(above.row_grades.begin() + rel_pos, z);
            ++above.n_rows;
        }
        rel.columns.insert(rel.columns.begin() + rel_pos, std::move(rel_col));
        rel.col_grades.insert(rel.col_grades.begin() + rel_pos, z);
        if (!out.tokens.empty()) out.tokens[b].insert(out.tokens[b].begin() + rel_pos, TokenPair{});
    }
#ifndef NDEBUG
    validate(out);
#endif
    return out;
}

GradedMatrix random_graded_matrix(std::uint64_t seed, index_t max_rows, index_t max_cols,
                                  index_t max_rank) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<index_t> row_count(0, max_rows);
    std::uniform_int_distribution<index_t> col_count(0, max_cols);
    std::uniform_int_distribution<index_t> rank_dist(0, std::max<index_t>(1, max_rank - 1));

    GradedMatrix m;
    m.n_rows = row_count(rng);
    m.row_grades.resize(static_cast<std::size_t>(m.n_rows));
    for (Grade& g : m.row_grades) g = Grade{rank_dist(rng), rank_dist(rng)};
    std::sort(m.row_grades.begin(), m.row_grades.end(), colex_less);

    const index_t cols = col_count(rng);
    for (index_t j = 0; j < cols; ++j) {
        Grade g{rank_dist(rng), rank_dist(rng)};
        if (m.n_rows > 0 && (rng() & 1)) {
            // Give many columns a grade dominating some rows.
            std::uniform_int_distribution<index_t> pick(0, m.n_rows - 1);
            g = join(g, m.row_grades[pick(rng)]);
        }
        m.col_grades.push_back(g);
    }
    std::sort(m.col_grades.begin(), m.col_grades.end(), colex_less);

    std::uniform_int_distribution<int> density(0, 3);
    for (index_t j = 0; j < cols; ++j) {
        SparseColumn col;
        for (index_t r = 0; r < m.n_rows; ++r)
            if (leq(m.row_grades[r], m.col_grades[j]) && density(rng) == 0) col.push_back(r);
        m.columns.push_back(std::move(col));
    }
    validate(m);
    return m;
}

bool verify_multi_chunk(const ChainComplex& in, const ChainComplex& out, std::string* why) {
    const auto [x_extent, y_extent] = hull_extent(in);
    for (index_t y = 0; y < y_extent; ++y)
        for (index_t x = 0; x < x_extent; ++x) {
            const Grade z{x, y};
            if (homology_dims(in, z) != homology_dims(out, z)) {
                if (why)
                    *why = "homology dimensions differ at grade (" + std::to_string(x) + "," +
                           std::to_string(y) + ")";
                return false;
            }
            const auto dg = delta_gamma(in, z);
            for (std::size_t b = 0; b < dg.size(); ++b) {
                int out_gamma = 0;
                for (const Grade& g : out.block_grades(b)) out_gamma += g == z;
                if (dg[b].delta != out_gamma) {
                    if (why)
                        *why = "generator count at grade (" + std::to_string(x) + "," +
                               std::to_string(y) + ") block " + std::to_string(b) +
                               " is not minimal: expected " + std::to_string(dg[b].delta) +
                               ", got " + std::to_string(out_gamma);
                    return false;
                }
            }
        }
    return true;
}

bool verify_presentation(const ChainComplex& in, int homology_dim, const GradedMatrix& pres,
                         std::string* why) {
    const auto [x_extent, y_extent] = hull_extent(in);
    const std::size_t block = in.block_of_dim(homology_dim);
    for (index_t y = 0; y < y_extent; ++y)
        for (index_t x = 0; x < x_extent; ++x) {
            const Grade z{x, y};
            const int expected = homology_dims(in, z)[block];
            const int actual = coker_dim(pres, z);
            if (expected != actual) {
                if (why)
                    *why = "presentation cokernel dimension at grade (" + std::to_string(x) +
                           "," + std::to_string(y) + ") is " + std::to_string(actual) +
                           ", homology dimension is " + std::to_string(expected);
                return false;
            }
        }
    return true;
}

}  // namespace mpc::testkit
