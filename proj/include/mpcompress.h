/* mpcompress: compression of chain complexes of free 2-parameter
 * persistence modules over GF(2).
 *
 * The library works on opaque complex handles. Every function that can fail
 * returns an mpc_status; mpc_error_message() describes the most recent
 * failure on the calling thread.
 */
#ifndef MPCOMPRESS_H
#define MPCOMPRESS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mpc_status {
    MPC_OK = 0,
    MPC_ERROR_PARSE = 1,    /* malformed scc2020 input */
    MPC_ERROR_INVALID = 2,  /* input is not a valid chain complex / bad request */
    MPC_ERROR_VERIFY = 3,   /* oracle cross-check found a mismatch */
    MPC_ERROR_IO = 4,       /* file could not be read or written */
    MPC_ERROR_ARGUMENT = 5  /* null pointer or out-of-range argument */
} mpc_status;

/* Chain complex of free bigraded modules, blocks ordered from the highest
 * dimension down. */
typedef struct mpc_complex mpc_complex;

typedef struct mpc_options {
    int threads;       /* <= 0: use all available cores */
    int lw_baseline;   /* nonzero: grid-scan paths instead of the queue-driven ones */
    int collect_stats; /* nonzero: record key=value stats, see mpc_stats_dump */
} mpc_options;

void mpc_options_init(mpc_options* opts);

/* ---- scc2020 input and output -------------------------------------- */

mpc_status mpc_parse_string(const char* data, size_t size, mpc_complex** out);
mpc_status mpc_parse_file(const char* path, mpc_complex** out);

/* Canonical rendering; the buffer is NUL-terminated and owned by the
 * caller, release it with mpc_buffer_free. size (optional) excludes the
 * terminator. */
mpc_status mpc_write_string(const mpc_complex* c, char** data, size_t* size);
mpc_status mpc_write_file(const mpc_complex* c, const char* path);

void mpc_complex_free(mpc_complex* c);
void mpc_buffer_free(char* data);

/* ---- inspection ------------------------------------------------------ */

size_t mpc_complex_num_blocks(const mpc_complex* c);
/* Generator count of one block; 0 when the block index is out of range. */
size_t mpc_complex_block_size(const mpc_complex* c, size_t block);

/* ---- compression ------------------------------------------------------ */

/* Smallest chain complex quasi-isomorphic to the input; same length. */
mpc_status mpc_multi_chunk(const mpc_complex* in, const mpc_options* opts,
                           mpc_complex** out);

/* Minimal presentation of the homology at dimension `homology_dim`,
 * returned as a chain complex of length 1 (relations over generators).
 * Requires boundary matrices for dimensions homology_dim+1 and
 * homology_dim. */
mpc_status mpc_minimal_presentation(const mpc_complex* in, int homology_dim,
                                    const mpc_options* opts, mpc_complex** out);

/* ---- desk-scale oracle cross-checks ---------------------------------- */

/* Pointwise homology equality plus per-grade generator minimality. */
mpc_status mpc_verify_multi_chunk(const mpc_complex* in, const mpc_complex* out);
/* Pointwise cokernel dimensions of the presentation against the homology
 * of the input. */
mpc_status mpc_verify_presentation(const mpc_complex* in, int homology_dim,
                                   const mpc_complex* presentation);

/* ---- diagnostics ------------------------------------------------------ */

/* Message for the most recent failure on this thread; empty string if none. */
const char* mpc_error_message(void);

/* key=value lines describing the most recent run on this thread that was
 * started with collect_stats set; NULL when there is none. Caller frees
 * with mpc_buffer_free. */
char* mpc_stats_dump(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MPCOMPRESS_H */
