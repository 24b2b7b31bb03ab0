/* nbody seed: direct O(N^2) softened gravity, semi-implicit Euler. */
#include <math.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

void nbody(const kevo_desc* d) {
  float* pos = (float*)d->buffers[0].data;
  float* vel = (float*)d->buffers[1].data;
  const float* mass = (const float*)d->buffers[2].data;
  float* acc = (float*)d->buffers[3].data;
  const int64_t n = d->params[0];
  const float G = (float)d->constants[0];
  const float eps = (float)d->constants[1];
  const float dt = (float)d->constants[2];
  const float eps2 = eps * eps;
  for (int64_t s = 0; s < d->steps; ++s) {
    for (int64_t i = 0; i < n; ++i) {
      float ax = 0.0f, ay = 0.0f, az = 0.0f;
      const float xi = pos[3 * i], yi = pos[3 * i + 1], zi = pos[3 * i + 2];
      for (int64_t j = 0; j < n; ++j) {
        const float dx = pos[3 * j] - xi;
        const float dy = pos[3 * j + 1] - yi;
        const float dz = pos[3 * j + 2] - zi;
        const float r2 = dx * dx + dy * dy + dz * dz + eps2;
        const float inv = 1.0f / sqrtf(r2);
        const float w = mass[j] * inv * inv * inv;
        ax += w * dx;
        ay += w * dy;
        az += w * dz;
      }
      acc[3 * i] = G * ax;
      acc[3 * i + 1] = G * ay;
      acc[3 * i + 2] = G * az;
    }
    for (int64_t i = 0; i < 3 * n; ++i) {
      vel[i] += acc[i] * dt;
      pos[i] += vel[i] * dt;
    }
  }
}
