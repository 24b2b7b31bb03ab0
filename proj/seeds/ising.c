/* ising seed: checkerboard Metropolis with the shared counter-based RNG. */
#include <math.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

void ising(const kevo_desc* d) {
  int8_t* s = (int8_t*)d->buffers[0].data;
  const int64_t nx = d->params[0], ny = d->params[1];
  const float beta = (float)d->constants[0];
  const float J = (float)d->constants[1];
  const uint32_t key = kevo_seed_key(d->seed);
  double table[5];
  for (int idx = 0; idx < 5; ++idx) {
    const int m = 2 * idx - 4;
    table[idx] = fmin(1.0, exp(-2.0 * (double)beta * (double)J * (double)m));
  }
  for (int64_t sweep = 0; sweep < d->steps; ++sweep) {
    for (uint32_t color = 0; color < 2; ++color) {
      for (int64_t j = 0; j < ny; ++j) {
        const int64_t up = (j + 1) % ny, down = (j + ny - 1) % ny;
        for (int64_t i = (j + color) % 2; i < nx; i += 2) {
          const int64_t right = (i + 1) % nx, left = (i + nx - 1) % nx;
          const int h = s[j * nx + left] + s[j * nx + right] + s[up * nx + i] + s[down * nx + i];
          const int m = s[j * nx + i] * h;
          const double u =
              kevo_unit(kevo_fmix32(kevo_ising_counter((uint32_t)(j * nx + i), (uint32_t)sweep, color, key)));
          if (u < table[(m + 4) / 2]) s[j * nx + i] = (int8_t)-s[j * nx + i];
        }
      }
    }
  }
}
