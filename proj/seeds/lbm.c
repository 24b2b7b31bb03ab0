/* lbm seed: D2Q9 pull streaming fused with BGK collision, periodic box. */
#include <string.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

static const int CX[9] = {0, 1, 0, -1, 0, 1, -1, -1, 1};
static const int CY[9] = {0, 0, 1, 0, -1, 1, 1, -1, -1};

void lbm(const kevo_desc* d) {
  float* f = (float*)d->buffers[0].data;
  float* scratch = (float*)d->buffers[1].data;
  const int64_t nx = d->params[0], ny = d->params[1];
  const int64_t plane = nx * ny;
  const float tau = (float)d->constants[0];
  const float inv_tau = 1.0f / tau;
  const float W[9] = {4.0f / 9.0f,  1.0f / 9.0f,  1.0f / 9.0f,  1.0f / 9.0f, 1.0f / 9.0f,
                      1.0f / 36.0f, 1.0f / 36.0f, 1.0f / 36.0f, 1.0f / 36.0f};
  float* in = f;
  float* out = scratch;
  float fs[9];
  for (int64_t s = 0; s < d->steps; ++s) {
    for (int64_t j = 0; j < ny; ++j) {
      for (int64_t i = 0; i < nx; ++i) {
        float rho = 0.0f, jx = 0.0f, jy = 0.0f;
        for (int k = 0; k < 9; ++k) {
          int64_t si = i - CX[k], sj = j - CY[k];
          if (si < 0) si += nx;
          if (si >= nx) si -= nx;
          if (sj < 0) sj += ny;
          if (sj >= ny) sj -= ny;
          fs[k] = in[k * plane + sj * nx + si];
          rho += fs[k];
          jx += (float)CX[k] * fs[k];
          jy += (float)CY[k] * fs[k];
        }
        const float ux = jx / rho;
        const float uy = jy / rho;
        const float usq = ux * ux + uy * uy;
        for (int k = 0; k < 9; ++k) {
          const float cu = (float)CX[k] * ux + (float)CY[k] * uy;
          const float feq = W[k] * rho * (1.0f + 3.0f * cu + 4.5f * cu * cu - 1.5f * usq);
          out[k * plane + j * nx + i] = fs[k] - inv_tau * (fs[k] - feq);
        }
      }
    }
    float* t = in;
    in = out;
    out = t;
  }
  if (in != f) memcpy(f, in, (size_t)(9 * plane) * sizeof(float));
}
