#include "kevo/backend/dispatch.hpp"

#include <sstream>

#include "kevo/taskbench/registry.hpp"

namespace kevo::backend {

using taskbench::ContractError;
using taskbench::SizeConfig;
using taskbench::TaskId;
using taskbench::TaskSpec;

namespace {

std::size_t sz(std::int64_t v) { return static_cast<std::size_t>(v); }

SlotSpec input_slot(const std::vector<std::size_t>& extents, int index,
                    ElemKind kind = ElemKind::f32) {
  return {kind, extents, index, -1};
}

SlotSpec scratch(const std::vector<std::size_t>& extents, ElemKind kind = ElemKind::f32,
                 int copy_of = -1) {
  return {kind, extents, -1, copy_of};
}

}  // namespace

std::vector<std::string> entry_points(TaskId task) {
  switch (task) {
    case TaskId::lj: return {"lj_bin", "lj_forces", "lj_integrate"};
    case TaskId::gradshaf: return {"gradshaf_axis", "gradshaf_update"};
    case TaskId::fft3d: return {"fft3d_x", "fft3d_y", "fft3d_z"};
    default: return {std::string(taskbench::to_string(task))};
  }
}

DispatchPlan make_dispatch_plan(const TaskSpec& task, const SizeConfig& size, std::uint64_t seed) {
  if (!task.owns(size)) throw ContractError("size " + size.label() + " does not belong to the task");
  DispatchPlan p;
  p.entries = entry_points(task.id);
  p.steps = size.steps;
  p.seed = seed;
  auto c = [&](const char* name) { return task.constant(name); };
  switch (task.id) {
    case TaskId::saxpy: {
      const auto n = size.param("n");
      p.slots = {input_slot({sz(n)}, 0), input_slot({sz(n)}, 1)};
      p.params[0] = n;
      p.constants[0] = c("a");
      p.outputs = {1};
      break;
    }
    case TaskId::heat2d:
    case TaskId::lbm: {
      const auto n = size.param("N");
      const std::vector<std::size_t> ext =
          task.id == TaskId::lbm ? std::vector<std::size_t>{9, sz(n), sz(n)}
                                 : std::vector<std::size_t>{sz(n), sz(n)};
      p.slots = {input_slot(ext, 0), scratch(ext, ElemKind::f32, 0)};
      p.params[0] = n;
      p.params[1] = n;
      p.constants[0] = task.id == TaskId::lbm ? c("tau") : c("alpha");
      p.outputs = {0};
      break;
    }
    case TaskId::wave3d: {
      const auto n = size.param("N");
      const std::vector<std::size_t> ext{sz(n), sz(n), sz(n)};
      p.slots = {input_slot(ext, 0), input_slot(ext, 1), scratch(ext, ElemKind::f32, 1)};
      p.params[0] = p.params[1] = p.params[2] = n;
      p.constants[0] = c("alpha");
      p.outputs = {0, 1};
      break;
    }
    case TaskId::nbody: {
      const auto n = size.param("N");
      p.slots = {input_slot({sz(n), 3}, 0), input_slot({sz(n), 3}, 1), input_slot({sz(n)}, 2),
                 scratch({sz(n), 3})};
      p.params[0] = n;
      p.constants[0] = c("G");
      p.constants[1] = c("eps");
      p.constants[2] = c("dt");
      p.outputs = {0, 1};
      break;
    }
    case TaskId::hmc: {
      const auto d = size.param("d");
      const auto k = size.param("K");
      p.slots = {input_slot({sz(d), sz(d)}, 0), input_slot({sz(k), sz(d)}, 1)};
      p.params[0] = d;
      p.params[1] = k;
      p.constants[0] = c("eps");
      p.constants[1] = c("L");
      p.outputs = {1};
      break;
    }
    case TaskId::ising: {
      const auto n = size.param("N");
      p.slots = {input_slot({sz(n), sz(n)}, 0, ElemKind::i8)};
      p.params[0] = n;
      p.params[1] = n;
      p.constants[0] = c("beta");
      p.constants[1] = c("J");
      p.outputs = {0};
      break;
    }
    case TaskId::lj: {
      const auto n = size.param("N");
      const double box = taskbench::lj_box(n, c("density"), c("r_cut"));
      const auto nc = taskbench::lj_cells_per_dim(box, c("r_cut"));
      const auto cells = sz(nc * nc * nc);
      p.sequencing = Sequencing::per_step;
      p.slots = {input_slot({sz(n), 3}, 0),
                 input_slot({sz(n), 3}, 1),
                 scratch({sz(n), 3}),
                 scratch({cells}, ElemKind::u32),
                 scratch({cells, sz(taskbench::kLjCellCapacity)}, ElemKind::u32),
                 scratch({1}, ElemKind::u32)};
      p.params[0] = n;
      p.params[1] = nc;
      p.params[2] = taskbench::kLjCellCapacity;
      p.constants[0] = box;
      p.constants[1] = c("dt");
      p.constants[2] = c("r_cut");
      p.outputs = {0, 1};
      p.status_slot = 5;
      break;
    }
    case TaskId::gradshaf: {
      const auto n = size.param("N");
      p.sequencing = Sequencing::per_step;
      p.swap_front = true;
      p.slots = {input_slot({sz(n), sz(n)}, 0), scratch({sz(n), sz(n)}, ElemKind::f32, 0),
                 scratch({1})};
      p.params[0] = n;
      p.params[1] = n;
      p.constants[0] = c("omega");
      p.constants[1] = c("mu0");
      p.constants[2] = c("p_axis");
      p.constants[3] = c("r_min");
      p.constants[4] = c("r_max");
      p.constants[5] = c("z_min");
      p.constants[6] = c("z_max");
      p.outputs = {0};
      break;
    }
    case TaskId::fft3d: {
      const auto n = size.param("N");
      const std::vector<std::size_t> ext{sz(n), sz(n), sz(n)};
      p.sequencing = Sequencing::passes;
      p.swap_front = true;
      p.slots = {input_slot(ext, 0, ElemKind::c64), scratch(ext, ElemKind::c64)};
      p.params[0] = n;
      p.outputs = {0};
      break;
    }
  }
  return p;
}

std::string abi_contract_text(TaskId task) {
  std::ostringstream s;
  s << "Calling convention (include \"kevo/abi.h\", expand KEVO_DECLARE_ABI() once).\n"
       "All buffers are row-major with the last index fastest; f32 unless noted.\n";
  switch (task) {
    case TaskId::saxpy:
      s << "entry: void saxpy(const kevo_desc* d)\n"
           "  buffers[0] x[n] (read)   buffers[1] y[n] (read/write: y = a*x + y)\n"
           "  params[0] = n            constants[0] = a\n";
      break;
    case TaskId::heat2d:
      s << "entry: void heat2d(const kevo_desc* d)\n"
           "  buffers[0] u[ny][nx] (read/write; result after `steps` updates must end here)\n"
           "  buffers[1] scratch[ny][nx], initialised as a copy of u\n"
           "  params[0] = nx, params[1] = ny, steps = number of updates\n"
           "  constants[0] = alpha\n"
           "  update: interior u' = u + alpha*(uW + uE + uN + uS - 4u); boundary ring fixed\n";
      break;
    case TaskId::wave3d:
      s << "entry: void wave3d(const kevo_desc* d)\n"
           "  buffers[0] u_prev[nz][ny][nx], buffers[1] u_curr (read/write)\n"
           "  buffers[2] scratch, initialised as a copy of u_curr\n"
           "  params[0..2] = nx, ny, nz; steps = number of leapfrog updates; constants[0] = alpha\n"
           "  update: interior u_next = 2u - u_prev + alpha*lap7(u); boundary copied from u\n"
           "  on return buffers[0] holds u at step n and buffers[1] u at step n+1\n";
      break;
    case TaskId::nbody:
      s << "entry: void nbody(const kevo_desc* d)\n"
           "  buffers[0] pos[N][3], buffers[1] vel[N][3] (read/write), buffers[2] mass[N]\n"
           "  buffers[3] scratch[N][3]\n"
           "  params[0] = N; steps; constants[0..2] = G, eps, dt\n"
           "  a_i = G * sum_j m_j (r_j - r_i) / (|r_j - r_i|^2 + eps^2)^1.5 (j = i included)\n"
           "  then v += a*dt; r += v*dt for every particle\n";
      break;
    case TaskId::hmc:
      s << "entry: void hmc(const kevo_desc* d)\n"
           "  buffers[0] A[d][d] (precision matrix, SPD), buffers[1] q[K][d] chain states (read/write)\n"
           "  params[0] = d, params[1] = K; steps = HMC transitions per chain; seed\n"
           "  constants[0] = eps (leapfrog step), constants[1] = L (leapfrog substeps)\n"
           "  target density proportional to exp(-q'Aq/2); the output is judged by its sample\n"
           "  mean and covariance against A^-1, not bit-for-bit\n"
           "  RNG: key = kevo_seed_key(seed); momentum component i of (chain c, step t) is\n"
           "  Box-Muller of kevo_unit(kevo_stream_hash(key, c, t, 2i)) and (.., 2i+1);\n"
           "  accept uniform is kevo_unit(kevo_stream_hash(key, c, t, 2d))\n";
      break;
    case TaskId::lbm:
      s << "entry: void lbm(const kevo_desc* d)\n"
           "  buffers[0] f[9][ny][nx] (read/write, result must end here)\n"
           "  buffers[1] scratch, initialised as a copy of f\n"
           "  params[0] = nx, params[1] = ny; steps; constants[0] = tau\n"
           "  D2Q9 velocities k=0..8: (0,0) (1,0) (0,1) (-1,0) (0,-1) (1,1) (-1,1) (-1,-1) (1,-1)\n"
           "  weights 4/9, 1/9 x4, 1/36 x4; periodic pull streaming fused with BGK collision\n";
      break;
    case TaskId::ising:
      s << "entry: void ising(const kevo_desc* d)\n"
           "  buffers[0] spins[ny][nx] int8 of +-1 (read/write)\n"
           "  params[0] = nx, params[1] = ny (both even); steps = sweeps; seed\n"
           "  constants[0] = beta, constants[1] = J\n"
           "  each sweep updates black sites ((i+j) even) then white; periodic neighbours\n"
           "  flip iff kevo_unit(kevo_fmix32(kevo_ising_counter(j*nx+i, sweep, color, key)))\n"
           "  < min(1, exp(-2*beta*J*s*h)) evaluated in double, key = kevo_seed_key(seed)\n"
           "  output must match the reference bit-for-bit\n";
      break;
    case TaskId::lj:
      s << "entries, called in order once per step (step_index = current step):\n"
           "  void lj_bin(const kevo_desc* d)       rebuild the cell lists\n"
           "  void lj_forces(const kevo_desc* d)    forces from the cell lists\n"
           "  void lj_integrate(const kevo_desc* d) v += F*dt; x += v*dt; wrap x into [0, box)\n"
           "  buffers[0] pos[N][3], buffers[1] vel[N][3] (read/write), buffers[2] force[N][3]\n"
           "  buffers[3] cell_count[nc^3] u32, buffers[4] cell_list[nc^3][cap] u32\n"
           "  buffers[5] status[1] u32: set non-zero on cell overflow\n"
           "  params[0..2] = N, nc (cells per dimension), cap; constants[0..2] = box, dt, r_cut\n"
           "  cell of a coordinate x is clamp(floor(x / (box/nc)), 0, nc-1); cell = (cz*nc+cy)*nc+cx\n"
           "  pair force with minimum-image d = r_j - r_i, r2 < r_cut^2:\n"
           "  F_i += -24 (2/r^12 - 1/r^6) / r2 * d; unit epsilon and sigma, unit mass\n";
      break;
    case TaskId::gradshaf:
      s << "entries, called in order once per Picard step; the harness then swaps\n"
           "buffers[0] and buffers[1], so every step reads buffers[0] and writes buffers[1]:\n"
           "  void gradshaf_axis(const kevo_desc* d)   buffers[2][0] = max interior psi\n"
           "  void gradshaf_update(const kevo_desc* d) one damped Jacobi sweep into buffers[1]\n"
           "  buffers[0] psi[nz][nr], buffers[1] psi_next (boundary ring pre-filled), buffers[2] axis[1]\n"
           "  params[0] = nr, params[1] = nz\n"
           "  constants[0..6] = omega, mu0, p_axis, R_min, R_max, Z_min, Z_max\n"
           "  if the axis value is not positive the step must fill psi_next with NaN\n";
      break;
    case TaskId::fft3d:
      s << "entries, called once each in order; the harness swaps buffers[0] and\n"
           "buffers[1] after each pass, so every pass reads buffers[0] and writes buffers[1]:\n"
           "  void fft3d_x(const kevo_desc* d), void fft3d_y(...), void fft3d_z(...)\n"
           "  buffers[0], buffers[1]: c64 [N][N][N] (x fastest)\n"
           "  params[0] = N (power of two)\n"
           "  each pass is an unnormalised forward DFT (exp(-2 pi i jk/N)) along its axis\n";
      break;
  }
  return s.str();
}

}  // namespace kevo::backend
