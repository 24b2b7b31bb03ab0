/* wave3d seed: leapfrog with a 7-point Laplacian, rotating three grids. */
#include <string.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

void wave3d(const kevo_desc* d) {
  float* b0 = (float*)d->buffers[0].data;
  float* b1 = (float*)d->buffers[1].data;
  float* b2 = (float*)d->buffers[2].data;
  const int64_t nx = d->params[0], ny = d->params[1], nz = d->params[2];
  const float alpha = (float)d->constants[0];
  const int64_t sy = nx, sz = nx * ny;
  const size_t bytes = (size_t)(nx * ny * nz) * sizeof(float);
  float* prev = b0;
  float* cur = b1;
  float* nxt = b2;
  for (int64_t s = 0; s < d->steps; ++s) {
    memcpy(nxt, cur, bytes);
    for (int64_t k = 1; k + 1 < nz; ++k) {
      for (int64_t j = 1; j + 1 < ny; ++j) {
        for (int64_t i = 1; i + 1 < nx; ++i) {
          const int64_t x = k * sz + j * sy + i;
          const float lap = cur[x - 1] + cur[x + 1] + cur[x - sy] + cur[x + sy] + cur[x - sz] +
                            cur[x + sz] - 6.0f * cur[x];
          nxt[x] = 2.0f * cur[x] - prev[x] + alpha * lap;
        }
      }
    }
    float* t = prev;
    prev = cur;
    cur = nxt;
    nxt = t;
  }
  if (prev == b1) { /* (prev, cur) = (b1, b2) */
    memcpy(b0, b1, bytes);
    memcpy(b1, b2, bytes);
  } else if (prev == b2) { /* (prev, cur) = (b2, b0) */
    memcpy(b1, b0, bytes);
    memcpy(b0, b2, bytes);
  }
}
