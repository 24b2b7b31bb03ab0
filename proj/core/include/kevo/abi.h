/*
 * kevo candidate ABI.
 *
 * Every candidate kernel is a C11 translation unit compiled to a shared
 * object. It includes this header, expands KEVO_DECLARE_ABI() exactly once,
 * and exports the entry symbols of its task with the signature
 *
 *     void <entry>(const kevo_desc* desc);
 *
 * Candidates must not perform I/O or heap allocation. All memory they touch
 * arrives through the descriptor.
 *
 * Descriptor layout (little-endian, natural alignment, 320 bytes):
 *
 *   offset  size  field
 *   0       4     abi_version        KEVO_ABI_VERSION of the harness
 *   4       4     num_buffers        valid entries in buffers[]
 *   8       192   buffers[8]         24 bytes each: data(8) count(8) kind(4) pad(4)
 *   200     32    params[4]          size parameters, task specific order
 *   232     8     steps              time steps / sweeps / Picard iterations
 *   240     8     step_index         current outer step for harness-sequenced tasks
 *   248     8     seed               RNG seed for stochastic tasks
 *   256     64    constants[8]       task constants as doubles
 *
 * Per-task buffers, params and constants are listed in docs/candidate-guide.md
 * and in the task prompt.
 */
#ifndef KEVO_ABI_H
#define KEVO_ABI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define KEVO_ABI_VERSION 1u

#define KEVO_MAX_BUFFERS 8
#define KEVO_MAX_PARAMS 4
#define KEVO_MAX_CONSTANTS 8

typedef enum kevo_elem_kind {
  KEVO_F32 = 0,
  KEVO_C64 = 1, /* interleaved (re, im) float pairs; count is in pairs */
  KEVO_I8 = 2,
  KEVO_U32 = 3
} kevo_elem_kind;

typedef struct kevo_buffer {
  void* data;
  uint64_t count;
  uint32_t kind;
  uint32_t reserved;
} kevo_buffer;

typedef struct kevo_desc {
  uint32_t abi_version;
  uint32_t num_buffers;
  kevo_buffer buffers[KEVO_MAX_BUFFERS];
  int64_t params[KEVO_MAX_PARAMS];
  int64_t steps;
  int64_t step_index;
  uint64_t seed;
  double constants[KEVO_MAX_CONSTANTS];
} kevo_desc;

#ifdef __cplusplus
static_assert(sizeof(kevo_buffer) == 24, "kevo_buffer layout");
static_assert(sizeof(kevo_desc) == 320, "kevo_desc layout");
#else
_Static_assert(sizeof(kevo_buffer) == 24, "kevo_buffer layout");
_Static_assert(sizeof(kevo_desc) == 320, "kevo_desc layout");
#endif

typedef void (*kevo_entry_fn)(const kevo_desc*);

/* The harness refuses a unit whose kevo_abi_version() differs from its own. */
#define KEVO_DECLARE_ABI() \
  uint32_t kevo_abi_version(void) { return KEVO_ABI_VERSION; }

/* Counter-based RNG shared by the harness and candidates. */

static inline uint32_t kevo_fmix32(uint32_t h) {
  h ^= h >> 16;
  h *= 0x85ebca6bu;
  h ^= h >> 13;
  h *= 0xc2b2ae35u;
  h ^= h >> 16;
  return h;
}

static inline uint32_t kevo_seed_key(uint64_t seed) {
  return kevo_fmix32((uint32_t)seed ^ kevo_fmix32((uint32_t)(seed >> 32)));
}

/* Maps a 32-bit hash to the open interval (0, 1). Exact in double. */
static inline double kevo_unit(uint32_t h) {
  return ((double)h + 0.5) * (1.0 / 4294967296.0);
}

/* Ising: site = j*nx + i, color = (i + j) & 1, sweep counts from 0. */
static inline uint32_t kevo_ising_counter(uint32_t site, uint32_t sweep, uint32_t color,
                                          uint32_t key) {
  return site ^ (sweep * 0x9E3779B9u) ^ (color * 0x85EBCA6Bu) ^ key;
}

static inline uint32_t kevo_stream_hash(uint32_t key, uint32_t a, uint32_t b, uint32_t c) {
  uint32_t h = kevo_fmix32(key ^ (a * 0x9E3779B9u));
  h = kevo_fmix32(h ^ (b * 0x85EBCA6Bu));
  return kevo_fmix32(h ^ (c * 0xC2B2AE35u));
}

#ifdef __cplusplus
}
#endif

#endif /* KEVO_ABI_H */
