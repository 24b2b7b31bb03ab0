#include "kevo/llm/prompt.hpp"

#include <sstream>

#include "kevo/backend/dispatch.hpp"
#include "kevo/backend/timing.hpp"

namespace kevo::llm {
namespace {

using taskbench::TaskId;

const char* what_to_compute(TaskId t) {
  switch (t) {
    case TaskId::saxpy: return "Single-precision a*x + y over a vector.";
    case TaskId::heat2d:
      return "Explicit diffusion on a square grid with a fixed boundary ring, advanced a fixed "
             "number of steps.";
    case TaskId::wave3d:
      return "Second-order-in-time acoustic wave propagation on a cube with a fixed boundary.";
    case TaskId::nbody:
      return "Direct-summation gravitational N-body with Plummer softening, integrated with "
             "semi-implicit Euler.";
    case TaskId::hmc:
      return "Hamiltonian Monte Carlo on a correlated Gaussian: many independent chains, each "
             "step drawing a momentum, running a leapfrog trajectory and accepting or rejecting.";
    case TaskId::lbm:
      return "Two-dimensional lattice Boltzmann flow (D2Q9, single relaxation time) on a periodic "
             "square.";
    case TaskId::ising:
      return "Two-dimensional Ising model, checkerboard Metropolis sweeps with a counter-based "
             "random number generator.";
    case TaskId::lj:
      return "Lennard-Jones fluid in a periodic cube using cell lists, integrated with kick-drift "
             "steps.";
    case TaskId::gradshaf:
      return "Fixed-boundary equilibrium solve on an (R, Z) grid: repeated Picard steps, each "
             "normalising the source by the current axis value and relaxing the toroidal "
             "elliptic operator with damped Jacobi.";
    case TaskId::fft3d: return "Unnormalised forward 3D complex FFT of a cube.";
  }
  return "";
}

std::string rule_text(const taskbench::VerificationRule& r) {
  std::ostringstream s;
  switch (r.kind) {
    case taskbench::VerifyKind::max_abs_tolerance:
      s << "max |out - ref| <= " << r.abs_tol << " + " << r.rel_tol << " * max|ref|";
      break;
    case taskbench::VerifyKind::relative_max_norm:
      s << "max complex |out - ref| <= " << r.abs_tol << " + " << r.rel_tol << " * max|ref|";
      break;
    case taskbench::VerifyKind::byte_equality: s << "bit-exact equality with the reference"; break;
    case taskbench::VerifyKind::statistical_moments:
      s << "sample mean within " << r.stat_mean_tol << " and covariance within " << r.stat_cov_tol
        << " sampling standard errors of the target";
      break;
  }
  return s.str();
}

}  // namespace

evolve::TaskPrompt render_task_prompt(const taskbench::TaskSpec& task, const roofline::ChipPeaks& chip) {
  const auto model = roofline::work_model(task.id);
  std::ostringstream s;
  s << kPromptVersion << "\n\n";
  s << "You are optimising a C11 kernel for the task '" << taskbench::to_string(task.id) << "'.\n"
    << what_to_compute(task.id) << "\n\n";
  s << "Scored sizes (all three must verify):\n";
  for (const auto& size : task.in_dist) {
    s << "  - " << size.label() << ", steps " << size.steps << "\n";
  }
  s << "\nScoring: each size is run " << backend::kWarmupReps << " times untimed and "
    << backend::kTimedReps << " times timed; the median time gives achieved "
    << (model.kind == taskbench::BoundKind::bandwidth ? "bandwidth" : "FLOP rate") << " ("
    << model.coefficient << (model.kind == taskbench::BoundKind::bandwidth ? " bytes" : " FLOPs")
    << " per " << model.unit << " per step) as a fraction of the chip ceiling ("
    << (model.kind == taskbench::BoundKind::bandwidth ? chip.peak_dram_gbs() : chip.peak_fp32_gflops())
    << (model.kind == taskbench::BoundKind::bandwidth ? " GB/s" : " GFLOPS") << " on " << chip.name()
    << "). The score is the geometric mean of the three fractions, and 0 if any output fails "
       "verification ("
    << rule_text(task.verification) << "). A candidate replaces the incumbent only with a "
       "strictly higher score.\n\n";
  s << backend::abi_contract_text(task.id) << "\n";
  s << "Rules: no I/O, no heap allocation, no threads; everything the kernel touches arrives "
       "through the descriptor. The code is built with `cc -std=c11 -O3 -fPIC -shared`.\n\n"
       "Reply with exactly one fenced code block containing the complete translation unit.\n";
  return {kPromptVersion, task.id, s.str()};
}

}  // namespace kevo::llm
