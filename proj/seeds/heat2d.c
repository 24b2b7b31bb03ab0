/* heat2d seed: explicit 5-point update, ping-pong between u and scratch. */
#include <string.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

void heat2d(const kevo_desc* d) {
  float* u = (float*)d->buffers[0].data;
  float* scratch = (float*)d->buffers[1].data;
  const int64_t nx = d->params[0], ny = d->params[1];
  const float alpha = (float)d->constants[0];
  float* cur = u;
  float* nxt = scratch;
  for (int64_t s = 0; s < d->steps; ++s) {
    for (int64_t j = 1; j + 1 < ny; ++j) {
      for (int64_t i = 1; i + 1 < nx; ++i) {
        const int64_t k = j * nx + i;
        nxt[k] = cur[k] + alpha * (cur[k - 1] + cur[k + 1] + cur[k - nx] + cur[k + nx] - 4.0f * cur[k]);
      }
    }
    float* t = cur;
    cur = nxt;
    nxt = t;
  }
  if (cur != u) memcpy(u, cur, (size_t)(nx * ny) * sizeof(float));
}
