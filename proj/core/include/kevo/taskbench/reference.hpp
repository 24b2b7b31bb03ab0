#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "kevo/taskbench/types.hpp"

namespace kevo::taskbench {

// Ground-truth implementations of the ten tasks. All arithmetic is fp32 unless
// noted; every routine is single-threaded with a fixed accumulation order, so
// outputs are bit-reproducible for fixed inputs.

FieldBuffer reference_saxpy(float a, const FieldBuffer& x, const FieldBuffer& y);

/// 5-point explicit heat step on a [ny][nx] grid, Dirichlet boundary ring.
FieldBuffer reference_heat2d(const FieldBuffer& u, float alpha, int steps);

/// Leapfrog 7-point wave equation on [n][n][n] grids. Returns (u at step n,
/// u at step n+1) after `steps` updates.
std::pair<FieldBuffer, FieldBuffer> reference_wave3d(const FieldBuffer& u_prev,
                                                     const FieldBuffer& u_curr, float alpha,
                                                     int steps);

/// Softened all-pairs accelerations. pos is [N][3], mass is [N].
void nbody_accelerations(std::span<const float> pos, std::span<const float> mass, float G,
                         float eps, std::span<float> acc);

std::pair<FieldBuffer, FieldBuffer> reference_nbody(const FieldBuffer& pos, const FieldBuffer& vel,
                                                    const FieldBuffer& mass, float G, float eps,
                                                    float dt, int steps);

/// One leapfrog trajectory of L substeps under U(q) = q'Aq/2, in place.
/// Returns H(end) - H(start).
double hmc_trajectory(std::span<const float> A, std::size_t d, std::span<float> q,
                      std::span<float> p, float eps, int L);

/// Called after every HMC step with the [K][d] chain states.
using HmcObserver = std::function<void(int step, std::span<const float> states)>;

/// K independent chains; q0 is [K][d], A is [d][d] and must be SPD.
FieldBuffer reference_hmc(const FieldBuffer& A, const FieldBuffer& q0, float eps, int L,
                          int n_steps, std::uint64_t seed, const HmcObserver& observer = {});

/// Standard normal momentum component i of (chain, step).
float hmc_momentum(std::uint32_t key, std::uint32_t chain, std::uint32_t step, std::uint32_t i);
double hmc_accept_uniform(std::uint32_t key, std::uint32_t chain, std::uint32_t step,
                          std::uint32_t d);

/// D2Q9 velocity set in the order used by the SoA layout.
inline constexpr std::array<int, 9> kLbmCx{0, 1, 0, -1, 0, 1, -1, -1, 1};
inline constexpr std::array<int, 9> kLbmCy{0, 0, 1, 0, -1, 1, 1, -1, -1};
inline constexpr std::array<float, 9> kLbmW{4.0f / 9,  1.0f / 9,  1.0f / 9,  1.0f / 9, 1.0f / 9,
                                            1.0f / 36, 1.0f / 36, 1.0f / 36, 1.0f / 36};

float lbm_equilibrium(int k, float rho, float ux, float uy);

/// Fused pull-stream + BGK on f[k][ny][nx], periodic.
FieldBuffer reference_lbm(const FieldBuffer& f, float tau, int steps);

/// p(m) = min(1, exp(-2 beta J m)) for m = -4, -2, 0, 2, 4.
std::array<double, 5> ising_accept_table(float beta, float J);

/// Checkerboard Metropolis on an [ny][nx] int8 lattice; black (i+j even)
/// then white per sweep.
FieldBuffer reference_ising(const FieldBuffer& spins, float beta, float J, int sweeps,
                            std::uint64_t seed);

/// Cell-list Lennard-Jones forces. Neighbour contributions are accumulated in
/// ascending particle index, so the result equals an all-pairs sum with the
/// same cutoff and wrap. Throws ContractError on cell overflow.
template <class Real>
std::vector<Real> lj_cell_forces(std::span<const Real> pos, Real box, Real r_cut,
                                 int capacity);

std::pair<FieldBuffer, FieldBuffer> reference_lj(const FieldBuffer& pos, const FieldBuffer& vel,
                                                 float box, float dt, float r_cut, int steps);

struct GradShafGeometry {
  double r_min = 1.0;
  double r_max = 2.0;
  double z_min = -0.5;
  double z_max = 0.5;
};

/// Picard iteration on psi[nz][nr]. A non-positive interior maximum marks a
/// degenerate state: the result is filled with NaN so verification fails.
FieldBuffer reference_gradshaf(const FieldBuffer& psi, const GradShafGeometry& geom, float omega,
                               float mu0, float p_axis, int picard_steps);

/// Unnormalised forward 3D DFT of a c64 [N][N][N] cube via per-axis radix-2
/// passes (x fastest, then y, then z) with fp64 butterflies.
FieldBuffer reference_fft3d(const FieldBuffer& x);

/// Reference outputs for a task/size from inputs produced by generate_input.
Buffers reference_outputs(const TaskSpec& task, const SizeConfig& size, const Buffers& inputs,
                          std::uint64_t seed);

}  // namespace kevo::taskbench
