/* hmc seed: K independent chains, leapfrog trajectories, Metropolis accept. */
#include <math.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

#define HMC_MAX_D 256

static void matvec(const float* A, int64_t d, const float* q, float* out) {
  for (int64_t i = 0; i < d; ++i) {
    float acc = 0.0f;
    for (int64_t j = 0; j < d; ++j) acc += A[i * d + j] * q[j];
    out[i] = acc;
  }
}

static double half_dot(const float* a, const float* b, int64_t d) {
  double s = 0.0;
  for (int64_t i = 0; i < d; ++i) s += (double)a[i] * b[i];
  return 0.5 * s;
}

void hmc(const kevo_desc* d) {
  const float* A = (const float*)d->buffers[0].data;
  float* states = (float*)d->buffers[1].data;
  const int64_t dim = d->params[0], chains = d->params[1];
  const float eps = (float)d->constants[0];
  const int L = (int)d->constants[1];
  const uint32_t key = kevo_seed_key(d->seed);
  const double two_pi = 6.283185307179586476925;
  float q[HMC_MAX_D], p[HMC_MAX_D], g[HMC_MAX_D];
  if (dim > HMC_MAX_D) return;
  for (int64_t t = 0; t < d->steps; ++t) {
    for (int64_t c = 0; c < chains; ++c) {
      float* cur = states + c * dim;
      for (int64_t i = 0; i < dim; ++i) {
        q[i] = cur[i];
        const double u1 = kevo_unit(kevo_stream_hash(key, (uint32_t)c, (uint32_t)t, (uint32_t)(2 * i)));
        const double u2 = kevo_unit(kevo_stream_hash(key, (uint32_t)c, (uint32_t)t, (uint32_t)(2 * i + 1)));
        p[i] = (float)(sqrt(-2.0 * log(u1)) * cos(two_pi * u2));
      }
      matvec(A, dim, q, g);
      const double h0 = half_dot(q, g, dim) + half_dot(p, p, dim);
      const float half = 0.5f * eps;
      for (int64_t i = 0; i < dim; ++i) p[i] -= half * g[i];
      for (int l = 0; l < L; ++l) {
        for (int64_t i = 0; i < dim; ++i) q[i] += eps * p[i];
        matvec(A, dim, q, g);
        const float kick = (l + 1 < L) ? eps : half;
        for (int64_t i = 0; i < dim; ++i) p[i] -= kick * g[i];
      }
      const double h1 = half_dot(q, g, dim) + half_dot(p, p, dim);
      const double u = kevo_unit(kevo_stream_hash(key, (uint32_t)c, (uint32_t)t, (uint32_t)(2 * dim)));
      if (log(u) < -(h1 - h0)) {
        for (int64_t i = 0; i < dim; ++i) cur[i] = q[i];
      }
    }
  }
}
