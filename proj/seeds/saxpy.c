/* saxpy seed: y = a*x + y. */
#include "kevo/abi.h"

KEVO_DECLARE_ABI()

void saxpy(const kevo_desc* d) {
  const float* x = (const float*)d->buffers[0].data;
  float* y = (float*)d->buffers[1].data;
  const int64_t n = d->params[0];
  const float a = (float)d->constants[0];
  for (int64_t i = 0; i < n; ++i) y[i] = a * x[i] + y[i];
}
