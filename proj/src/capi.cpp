#include "mpcompress.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "multichunk.hpp"
#include "mpfree.hpp"
#include "scc.hpp"
#include "testkit.hpp"

struct mpc_complex {
    mpc::ChainComplex rep;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_stats;

void set_error(const std::string& message) { g_error = message; }

char* copy_buffer(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
mpc_status guarded(Fn&& fn) {
    try {
        g_error.clear();
        return fn();
    } catch (const mpc::ParseError& e) {
        set_error(e.what());
        return MPC_ERROR_PARSE;
    } catch (const mpc::ValidationError& e) {
        set_error(e.what());
        return MPC_ERROR_INVALID;
    } catch (const std::exception& e) {
        set_error(e.what());
        return MPC_ERROR_INVALID;
    }
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", s);
    return buf;
}

std::string multi_chunk_stats(const mpc::MultiChunkResult& r) {
    std::ostringstream out;
    out << "phase_local_reduction_seconds=" << format_seconds(r.stats.local_reduction_seconds)
        << "\nphase_compression_seconds=" << format_seconds(r.stats.compression_seconds)
        << "\nphase_removal_seconds=" << format_seconds(r.stats.removal_seconds)
        << "\ncolumn_additions=" << r.stats.column_additions << "\n";
    for (std::size_t b = 0; b < r.stats.blocks.size(); ++b) {
        const auto& counts = r.stats.blocks[b];
        out << "block" << b << "_global=" << counts.global << "\nblock" << b
            << "_local_positive=" << counts.local_positive << "\nblock" << b
            << "_local_negative=" << counts.local_negative << "\n";
    }
    return out.str();
}

std::string mpfree_stats(const mpc::MpfreeResult& r) {
    std::ostringstream out;
    out << "min_gens_seconds=" << format_seconds(r.min_gens_seconds)
        << "\nker_basis_seconds=" << format_seconds(r.ker_basis_seconds)
        << "\nreparam_seconds=" << format_seconds(r.reparam_seconds)
        << "\nminimize_seconds=" << format_seconds(r.minimize_seconds)
        << "\ncolumn_additions=" << r.counters.additions
        << "\naddition_cost=" << r.counters.addition_cost
        << "\ngrade_queue_pops=" << r.counters.grade_queue_pops
        << "\ngrade_queue_pushes=" << r.counters.grade_queue_pushes
        << "\nrow_queue_pops=" << r.counters.row_queue_pops
        << "\ngrid_cells_visited=" << r.counters.grid_cells_visited << "\n";
    return out.str();
}

}  // namespace

extern "C" {

void mpc_options_init(mpc_options* opts) {
    if (!opts) return;
    opts->threads = 0;
    opts->lw_baseline = 0;
    opts->collect_stats = 0;
}

mpc_status mpc_parse_string(const char* data, size_t size, mpc_complex** out) {
    if (!data || !out) {
        set_error("null argument");
        return MPC_ERROR_ARGUMENT;
    }
    return guarded([&] {
        auto handle = std::make_unique<mpc_complex>();
        handle->rep = mpc::parse_scc(std::string(data, size));
        *out = handle.release();
        return MPC_OK;
    });
}

mpc_status mpc_parse_file(const char* path, mpc_complex** out) {
    if (!path || !out) {
        set_error("null argument");
        return MPC_ERROR_ARGUMENT;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        set_error(std::string("cannot open '") + path + "' for reading");
        return MPC_ERROR_IO;
    }
    return guarded([&] {
        auto handle = std::make_unique<mpc_complex>();
        handle->rep = mpc::parse_scc(in);
        *out = handle.release();
        return MPC_OK;
    });
}

mpc_status mpc_write_string(const mpc_complex* c, char** data, size_t* size) {
    if (!c || !data) {
        set_error("null argument");
        return MPC_ERROR_ARGUMENT;
    }
    return guarded([&] {
        const std::string text = mpc::write_scc(c->rep);
        *data = copy_buffer(text);
        if (!*data) {
            set_error("out of memory");
            return MPC_ERROR_IO;
        }
        if (size) *size = text.size();
        return MPC_OK;
    });
}

mpc_status mpc_write_file(const mpc_complex* c, const char* path) {
    if (!c || !path) {
        set_error("null argument");
        return MPC_ERROR_ARGUMENT;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        set_error(std::string("cannot open '") + path + "' for writing");
        return MPC_ERROR_IO;
    }
    return guarded([&] {
        mpc::write_scc(c->rep, out);
        out.flush();
        if (!out) {
            set_error(std::string("write to '") + path + "' failed");
            return MPC_ERROR_IO;
        }
        return MPC_OK;
    });
}

void mpc_complex_free(mpc_complex* c) { delete c; }

void mpc_buffer_free(char* data) { std::free(data); }

size_t mpc_complex_num_blocks(const mpc_complex* c) { return c ? c->rep.num_blocks() : 0; }

size_t mpc_complex_block_size(const mpc_complex* c, size_t block) {
    if (!c || block >= c->rep.num_blocks()) return 0;
    return c->rep.block_size(block);
}

mpc_status mpc_multi_chunk(const mpc_complex* in, const mpc_options* opts, mpc_complex** out) {
    if (!in || !out) {
        set_error("null argument");
        return MPC_ERROR_ARGUMENT;
    }
    return guarded([&] {
        mpc::MultiChunkOptions options;
        if (opts) options.threads = opts->threads;
        mpc::MultiChunkResult result = mpc::multi_chunk(in->rep, options);
        if (opts && opts->collect_stats) g_stats = multi_chunk_stats(result);
        auto handle = std::make_unique<mpc_complex>();
        handle->rep = std::move(result.complex);
        *out = handle.release();
        return MPC_OK;
    });
}

mpc_status mpc_minimal_presentation(const mpc_complex* in, int homology_dim,
                                    const mpc_options* opts, mpc_complex** out) {
    if (!in || !out) {
        set_error("null argument");
        return MPC_ERROR_ARGUMENT;
    }
    return guarded([&] {
        mpc::MpfreeOptions options;
        if (opts) {
            options.threads = opts->threads;
            options.lw_baseline = opts->lw_baseline != 0;
        }
        mpc::MpfreeResult result = mpc::mpfree(in->rep, homology_dim, options);
        if (opts && opts->collect_stats) g_stats = mpfree_stats(result);
        auto handle = std::make_unique<mpc_complex>();
        handle->rep = mpc::presentation_to_complex(result.presentation, in->rep.scale);
        *out = handle.release();
        return MPC_OK;
    });
}

mpc_status mpc_verify_multi_chunk(const mpc_complex* in, const mpc_complex* out) {
    if (!in || !out) {
        set_error("null argument");
        return MPC_ERROR_ARGUMENT;
    }
    return guarded([&] {
        std::string why;
        if (!mpc::testkit::verify_multi_chunk(in->rep, out->rep, &why)) {
            set_error(why);
            return MPC_ERROR_VERIFY;
        }
        return MPC_OK;
    });
}

mpc_status mpc_verify_presentation(const mpc_complex* in, int homology_dim,
                                   const mpc_complex* presentation) {
    if (!in || !presentation) {
        set_error("null argument");
        return MPC_ERROR_ARGUMENT;
    }
    return guarded([&] {
        if (presentation->rep.matrices.size() != 1) {
            set_error("presentation must be a chain complex of length 1");
            return MPC_ERROR_ARGUMENT;
        }
        std::string why;
        if (!mpc::testkit::verify_presentation(in->rep, homology_dim,
                                               presentation->rep.matrices[0], &why)) {
            set_error(why);
            return MPC_ERROR_VERIFY;
        }
        return MPC_OK;
    });
}

const char* mpc_error_message(void) { return g_error.c_str(); }

char* mpc_stats_dump(void) {
    if (g_stats.empty()) return nullptr;
    return copy_buffer(g_stats);
}

}  // extern "C"
