/* gradshaf seed: per Picard step, locate the magnetic axis then do one damped
 * Jacobi sweep of the Grad-Shafranov operator. */
#include <math.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

void gradshaf_axis(const kevo_desc* d) {
  const float* psi = (const float*)d->buffers[0].data;
  float* axis = (float*)d->buffers[2].data;
  const int64_t nr = d->params[0], nz = d->params[1];
  float best = -INFINITY;
  for (int64_t j = 1; j + 1 < nz; ++j) {
    for (int64_t i = 1; i + 1 < nr; ++i) {
      const float v = psi[j * nr + i];
      if (best < v) best = v;
    }
  }
  axis[0] = best;
}

void gradshaf_update(const kevo_desc* d) {
  const float* c = (const float*)d->buffers[0].data;
  float* o = (float*)d->buffers[1].data;
  const float axis = ((const float*)d->buffers[2].data)[0];
  const int64_t nr = d->params[0], nz = d->params[1];
  const float omega = (float)d->constants[0];
  const float mu0 = (float)d->constants[1];
  const float p_axis = (float)d->constants[2];
  const double r_min = d->constants[3], r_max = d->constants[4];
  const double z_min = d->constants[5], z_max = d->constants[6];
  if (!(axis > 0.0f)) {
    for (int64_t k = 0; k < nr * nz; ++k) o[k] = NAN;
    return;
  }
  const double dr = (r_max - r_min) / (double)(nr - 1);
  const double dz = (z_max - z_min) / (double)(nz - 1);
  const float a_ns = (float)(1.0 / (dz * dz));
  const float a_c = (float)(-2.0 * (1.0 / (dr * dr) + 1.0 / (dz * dz)));
  for (int64_t j = 1; j + 1 < nz; ++j) {
    for (int64_t i = 1; i + 1 < nr; ++i) {
      const double rd = r_min + (double)i * dr;
      const float r = (float)rd;
      const float a_w = (float)(1.0 / (dr * dr) + 1.0 / (2.0 * rd * dr));
      const float a_e = (float)(1.0 / (dr * dr) - 1.0 / (2.0 * rd * dr));
      const int64_t k = j * nr + i;
      const float pn = c[k] / axis;
      const float src = (pn > 0.0f && pn < 1.0f) ? r * p_axis * 4.0f * pn * (1.0f - pn) : 0.0f;
      const float lap = a_w * c[k - 1] + a_e * c[k + 1] + a_ns * c[k + nr] + a_ns * c[k - nr] + a_c * c[k];
      o[k] = c[k] + omega * (-mu0 * r * src - lap) / a_c;
    }
  }
}
