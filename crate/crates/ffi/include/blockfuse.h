#ifndef BLOCKFUSE_H
#define BLOCKFUSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes shared by all entry points.
 */
typedef enum BfStatus {
  BF_STATUS_OK = 0,
  /*
   A fusion verdict or verification check failed.
   */
  BF_STATUS_FALSIFIED = 1,
  /*
   Bad arguments: unknown group or suite, non-prime modulus, bad permutation.
   */
  BF_STATUS_USAGE = 2,
  /*
   A computation exceeded a size cap.
   */
  BF_STATUS_CAP = 3,
  BF_STATUS_INTERNAL = 4,
  /*
   A required pointer was null.
   */
  BF_STATUS_NULL = 5,
} BfStatus;

/*
 Blocks of one group algebra, computed on construction.
 */
typedef struct BfSystem BfSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Computes the blocks of `kG` for `G = S_n` (`group = 's'`) or `A_n`
 (`group = 'a'`) in characteristic `prime`.

 # Safety
 `out` must be a valid pointer; on success it receives a handle to free
 with [`bf_system_free`].
 */
enum BfStatus bf_system_new(char group, uint32_t degree, uint32_t prime, struct BfSystem **out);

/*
 # Safety
 `sys` must come from [`bf_system_new`] and not be used afterwards. Null is
 ignored.
 */
void bf_system_free(struct BfSystem *sys);

/*
 # Safety
 `sys` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_system_block_count(const struct BfSystem *sys, size_t *out);

/*
 The block report as JSON, without timing.

 # Safety
 `sys` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_system_blocks_json(const struct BfSystem *sys, char **out);

/*
 Fusion report for block `block`, or for every block when `block < 0`.
 Returns `Falsified` (with the report still written) if any verdict is
 FALSIFIED.

 # Safety
 `sys` must be a live handle and `out` a valid pointer.
 */
enum BfStatus bf_system_fusion_json(const struct BfSystem *sys, int64_t block, char **out);

/*
 Runs a verification suite (`"blocks"`, `"fusion"`, `"all"`, ...) and
 writes the JSON report. `group = 0`, `degree = 0` and `prime = 0` leave
 the respective selection open. Returns `Falsified` if a check failed.

 # Safety
 `suite` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BfStatus bf_verify(const char *suite, char group, uint32_t degree, uint32_t prime, char **out);

/*
 Cycle type of a permutation given by its 1-based images. Parts are
 written in decreasing order, fixed points included as parts of length 1.

 # Safety
 `images` must hold `len` values; `parts` must hold `cap` values;
 `count` must be valid. If `cap` is too small, `count` receives the
 needed size and `Usage` is returned.
 */
enum BfStatus bf_perm_cycle_type(const uint32_t *images,
                                 size_t len,
                                 uint32_t *parts,
                                 size_t cap,
                                 size_t *count);

/*
 # Safety
 `s` must come from this library and not be used afterwards. Null is
 ignored.
 */
void bf_string_free(char *s);

/*
 Message of the last failed call on this thread, or an empty string. The
 pointer stays valid until the next call on the same thread.
 */
const char *bf_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOCKFUSE_H */
