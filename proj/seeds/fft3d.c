/* fft3d seed: one radix-2 pass per axis, double-precision butterflies on a
 * gathered line. */
#include <math.h>

#include "kevo/abi.h"

KEVO_DECLARE_ABI()

#define FFT_MAX_N 4096

static void fft_line(double* re, double* im, int64_t n) {
  for (int64_t i = 1, j = 0; i < n; ++i) {
    int64_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      double t = re[i];
      re[i] = re[j];
      re[j] = t;
      t = im[i];
      im[i] = im[j];
      im[j] = t;
    }
  }
  const double pi = 3.14159265358979323846;
  for (int64_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * pi / (double)len;
    for (int64_t i = 0; i < n; i += len) {
      for (int64_t k = 0; k < len / 2; ++k) {
        const double wr = cos(ang * (double)k), wi = sin(ang * (double)k);
        const int64_t a = i + k, b = i + k + len / 2;
        const double vr = re[b] * wr - im[b] * wi;
        const double vi = re[b] * wi + im[b] * wr;
        const double ur = re[a], ui = im[a];
        re[a] = ur + vr;
        im[a] = ui + vi;
        re[b] = ur - vr;
        im[b] = ui - vi;
      }
    }
  }
}

/* stride 1: lines along x; n: along y; n*n: along z. */
static void fft_axis(const kevo_desc* d, int64_t stride_mult) {
  const float* in = (const float*)d->buffers[0].data;
  float* out = (float*)d->buffers[1].data;
  const int64_t n = d->params[0];
  const int64_t stride = stride_mult == 0 ? 1 : (stride_mult == 1 ? n : n * n);
  double re[FFT_MAX_N], im[FFT_MAX_N];
  if (n > FFT_MAX_N) return;
  for (int64_t a = 0; a < n; ++a) {
    for (int64_t b = 0; b < n; ++b) {
      int64_t base;
      if (stride_mult == 0) {
        base = (a * n + b) * n;
      } else if (stride_mult == 1) {
        base = a * n * n + b;
      } else {
        base = a * n + b;
      }
      for (int64_t t = 0; t < n; ++t) {
        const int64_t idx = 2 * (base + t * stride);
        re[t] = in[idx];
        im[t] = in[idx + 1];
      }
      fft_line(re, im, n);
      for (int64_t t = 0; t < n; ++t) {
        const int64_t idx = 2 * (base + t * stride);
        out[idx] = (float)re[t];
        out[idx + 1] = (float)im[t];
      }
    }
  }
}

void fft3d_x(const kevo_desc* d) { fft_axis(d, 0); }
void fft3d_y(const kevo_desc* d) { fft_axis(d, 1); }
void fft3d_z(const kevo_desc* d) { fft_axis(d, 2); }
