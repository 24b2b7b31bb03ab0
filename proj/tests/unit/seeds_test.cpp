#include <gtest/gtest.h>

#include <complex>

#include "helpers.hpp"
#include "kevo/backend/plugin_backend.hpp"
#include "kevo/paths.hpp"
#include "kevo/taskbench/input.hpp"
#include "kevo/taskbench/reference.hpp"
#include "kevo/taskbench/registry.hpp"
#include "kevo/taskbench/verify.hpp"
#include "oracles.hpp"

using namespace kevo;
using taskbench::Profile;
using taskbench::TaskId;

namespace {

taskbench::TaskSpec seeded(TaskId id) {
  auto t = taskbench::make_task(id, Profile::desk);
  taskbench::attach_seed_source(t, seed_dir());
  return t;
}

backend::PluginBackend& shared_backend() {
  static backend::PluginBackend b;
  return b;
}

taskbench::Buffers run_seed(const taskbench::TaskSpec& t, const taskbench::SizeConfig& s,
                            const taskbench::Buffers& in, std::uint64_t seed = 1) {
  auto& b = shared_backend();
  const auto c = b.compile(backend::Candidate::seed(t.seed_source));
  EXPECT_TRUE(c.ok) << c.diagnostics;
  const auto r = b.run(c, t, s, in, seed);
  EXPECT_TRUE(r.ok) << r.diagnostics;
  b.release(c);
  return r.outputs;
}

}  // namespace

TEST(Seeds, CompileWarningClean) {
  backend::ToolchainConfig strict;
  strict.flags.insert(strict.flags.end(), {"-Wall", "-Wextra", "-Werror"});
  backend::PluginBackend b(strict);
  for (auto id : taskbench::all_tasks()) {
    const auto c = b.compile(backend::Candidate::seed(seeded(id).seed_source));
    EXPECT_TRUE(c.ok) << taskbench::to_string(id) << ":\n" << c.diagnostics;
    b.release(c);
  }
}

TEST(Seeds, Fft3dMatchesDirectDft) {
  const auto t = seeded(TaskId::fft3d);
  const auto& s = t.in_dist[0];  // N=8
  ASSERT_EQ(s.param("N"), 8);
  const auto in = taskbench::generate_input(t, s, 7);
  const auto out = run_seed(t, s, in);
  ASSERT_EQ(out.size(), 1u);
  auto f = in[0].f32();
  std::vector<std::complex<double>> x(f.size() / 2);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = {f[2 * i], f[2 * i + 1]};
  const auto direct = oracle::dft3d(x, 8);
  auto y = out[0].f32();
  double err = 0, norm = 0;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    err = std::max(err, std::abs(std::complex<double>(y[2 * i], y[2 * i + 1]) - direct[i]));
    norm = std::max(norm, std::abs(direct[i]));
  }
  EXPECT_LE(err, 1e-3 + 1e-3 * norm);
}

TEST(Seeds, IsingIsByteEqualToReference) {
  const auto t = seeded(TaskId::ising);
  for (const auto& s : t.in_dist) {
    const auto in = taskbench::generate_input(t, s, 1);
    EXPECT_EQ(run_seed(t, s, in), taskbench::reference_outputs(t, s, in, 1)) << s.label();
  }
}

// Every seed at its smallest scored size and its held-out size; the full
// sweep lives in the cli validate test.
TEST(Seeds, VerifyAgainstReference) {
  for (auto id : taskbench::all_tasks()) {
    const auto t = seeded(id);
    for (const auto* s : {&t.in_dist[0], &t.held_out}) {
      const auto in = taskbench::generate_input(t, *s, 3);
      const auto ref = taskbench::reference_outputs(t, *s, in, 3);
      const auto v = taskbench::verify(t, *s, in, run_seed(t, *s, in, 3), ref);
      EXPECT_TRUE(v.chi) << taskbench::to_string(id) << " " << v.detail;
    }
  }
}
