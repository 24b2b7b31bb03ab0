/* lj seed: cell lists rebuilt every step, neighbours visited in ascending
 * particle order, kick-drift integration with periodic wrap. */
#include <math.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

#define LJ_MAX_NEIGH (27 * 64)

static int64_t cell_coord(float x, float edge, int64_t nc) {
  int64_t c = (int64_t)floorf(x / edge);
  if (c < 0) c = 0;
  if (c > nc - 1) c = nc - 1;
  return c;
}

static int64_t wrap(int64_t i, int64_t n) { return ((i % n) + n) % n; }

void lj_bin(const kevo_desc* d) {
  const float* pos = (const float*)d->buffers[0].data;
  uint32_t* count = (uint32_t*)d->buffers[3].data;
  uint32_t* list = (uint32_t*)d->buffers[4].data;
  uint32_t* status = (uint32_t*)d->buffers[5].data;
  const int64_t n = d->params[0], nc = d->params[1], cap = d->params[2];
  const float box = (float)d->constants[0];
  const float edge = box / (float)nc;
  for (int64_t c = 0; c < nc * nc * nc; ++c) count[c] = 0;
  for (int64_t i = 0; i < n; ++i) {
    const int64_t cx = cell_coord(pos[3 * i], edge, nc);
    const int64_t cy = cell_coord(pos[3 * i + 1], edge, nc);
    const int64_t cz = cell_coord(pos[3 * i + 2], edge, nc);
    const int64_t c = (cz * nc + cy) * nc + cx;
    const uint32_t slot = count[c]++;
    if (slot >= (uint32_t)cap) {
      status[0] = 1;
      count[c] = (uint32_t)cap;
      continue;
    }
    list[c * cap + slot] = (uint32_t)i;
  }
}

void lj_forces(const kevo_desc* d) {
  const float* pos = (const float*)d->buffers[0].data;
  float* force = (float*)d->buffers[2].data;
  const uint32_t* count = (const uint32_t*)d->buffers[3].data;
  const uint32_t* list = (const uint32_t*)d->buffers[4].data;
  const int64_t n = d->params[0], nc = d->params[1], cap = d->params[2];
  const float box = (float)d->constants[0];
  const float r_cut = (float)d->constants[2];
  const float edge = box / (float)nc;
  const float rc2 = r_cut * r_cut;
  uint32_t neigh[LJ_MAX_NEIGH];
  for (int64_t i = 0; i < n; ++i) {
    const int64_t cx = cell_coord(pos[3 * i], edge, nc);
    const int64_t cy = cell_coord(pos[3 * i + 1], edge, nc);
    const int64_t cz = cell_coord(pos[3 * i + 2], edge, nc);
    int64_t m = 0;
    for (int dz = -1; dz <= 1; ++dz) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int64_t oc = (wrap(cz + dz, nc) * nc + wrap(cy + dy, nc)) * nc + wrap(cx + dx, nc);
          for (uint32_t s = 0; s < count[oc] && m < LJ_MAX_NEIGH; ++s) {
            /* insertion keeps neigh[0..m) ascending */
            const uint32_t v = list[oc * cap + s];
            int64_t k = m++;
            while (k > 0 && neigh[k - 1] > v) {
              neigh[k] = neigh[k - 1];
              --k;
            }
            neigh[k] = v;
          }
        }
      }
    }
    float fx = 0.0f, fy = 0.0f, fz = 0.0f;
    for (int64_t t = 0; t < m; ++t) {
      const uint32_t j = neigh[t];
      if ((int64_t)j == i) continue;
      float dv[3];
      for (int a = 0; a < 3; ++a) {
        float v = pos[3 * j + a] - pos[3 * i + a];
        v -= box * nearbyintf(v / box);
        dv[a] = v;
      }
      const float r2 = dv[0] * dv[0] + dv[1] * dv[1] + dv[2] * dv[2];
      if (r2 < rc2) {
        const float inv2 = 1.0f / r2;
        const float inv6 = inv2 * inv2 * inv2;
        const float coef = -24.0f * (2.0f * inv6 * inv6 - inv6) * inv2;
        fx += coef * dv[0];
        fy += coef * dv[1];
        fz += coef * dv[2];
      }
    }
    force[3 * i] = fx;
    force[3 * i + 1] = fy;
    force[3 * i + 2] = fz;
  }
}

void lj_integrate(const kevo_desc* d) {
  float* pos = (float*)d->buffers[0].data;
  float* vel = (float*)d->buffers[1].data;
  const float* force = (const float*)d->buffers[2].data;
  const int64_t n = d->params[0];
  const float box = (float)d->constants[0];
  const float dt = (float)d->constants[1];
  for (int64_t i = 0; i < 3 * n; ++i) {
    vel[i] += force[i] * dt;
    float x = pos[i] + vel[i] * dt;
    x -= box * floorf(x / box);
    pos[i] = x;
  }
}
