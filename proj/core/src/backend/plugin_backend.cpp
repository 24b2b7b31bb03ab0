#include "kevo/backend/plugin_backend.hpp"

#include <dlfcn.h>
#include <setjmp.h>
#include <signal.h>
#include <sys/mman.h>
#include <sys/time.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <thread>

#include "kevo/abi.h"
#include "kevo/backend/dispatch.hpp"
#include "kevo/paths.hpp"
#include "process.hpp"

namespace kevo::backend {

using taskbench::ContractError;
using taskbench::FieldBuffer;

namespace {

// ---------------------------------------------------------------------------
// In-process watchdog. Candidate calls run between sigsetjmp and a disarm; a
// timer expiry or a fault inside the call jumps back with the signal number.
// Process-wide state, so in-process runs are serialised by g_run_mutex.

sigjmp_buf g_env;
volatile sig_atomic_t g_armed = 0;
volatile sig_atomic_t g_caught = 0;
std::mutex g_run_mutex;

constexpr int kTrapped[] = {SIGALRM, SIGSEGV, SIGBUS, SIGFPE, SIGILL};

void on_signal(int sig) {
  if (g_armed) {
    g_armed = 0;
    g_caught = sig;
    siglongjmp(g_env, 1);
  }
  if (sig == SIGALRM) return;  // late expiry after a call finished
  signal(sig, SIG_DFL);
  raise(sig);
}

void set_timer(double seconds) {
  itimerval t{};
  if (seconds > 0.0) {
    const auto whole = static_cast<long>(seconds);
    t.it_value.tv_sec = whole;
    t.it_value.tv_usec = static_cast<long>((seconds - static_cast<double>(whole)) * 1e6);
    if (t.it_value.tv_sec == 0 && t.it_value.tv_usec == 0) t.it_value.tv_usec = 1;
  }
  setitimer(ITIMER_REAL, &t, nullptr);
}

class SignalScope {
 public:
  SignalScope() : stack_(1 << 16) {
    stack_t ss{};
    ss.ss_sp = stack_.data();
    ss.ss_size = stack_.size();
    sigaltstack(&ss, &old_stack_);
    struct sigaction sa {};
    sa.sa_handler = on_signal;
    sigemptyset(&sa.sa_mask);
    sa.sa_flags = SA_ONSTACK;
    for (std::size_t i = 0; i < std::size(kTrapped); ++i) sigaction(kTrapped[i], &sa, &old_[i]);
  }
  ~SignalScope() {
    set_timer(0.0);
    for (std::size_t i = 0; i < std::size(kTrapped); ++i) sigaction(kTrapped[i], &old_[i], nullptr);
    sigaltstack(&old_stack_, nullptr);
  }
  SignalScope(const SignalScope&) = delete;
  SignalScope& operator=(const SignalScope&) = delete;

 private:
  std::vector<char> stack_;
  stack_t old_stack_{};
  struct sigaction old_[std::size(kTrapped)] {};
};

// Returns 0, or the signal that ended the call.
int guarded_call(kevo_entry_fn fn, const kevo_desc* desc, double budget_seconds) {
  if (!(budget_seconds > 0.0)) return SIGALRM;
  g_caught = 0;
  if (sigsetjmp(g_env, 1) != 0) {
    set_timer(0.0);
    return g_caught;
  }
  set_timer(budget_seconds);
  g_armed = 1;
  fn(desc);
  g_armed = 0;
  set_timer(0.0);
  return 0;
}

std::string describe_signal(int sig, std::chrono::milliseconds watchdog) {
  if (sig == SIGALRM) {
    return "watchdog timeout: exceeded " + std::to_string(watchdog.count()) + " ms wall clock";
  }
  return std::string("candidate terminated by signal ") + std::to_string(sig) + " (" +
         strsignal(sig) + ")";
}

// ---------------------------------------------------------------------------
// Buffers and call sequencing for one plan.

class PlanRunner {
 public:
  PlanRunner(const DispatchPlan& plan, const Buffers& inputs) : plan_(plan), inputs_(inputs) {
    for (const auto& s : plan.slots) {
      if (s.input >= 0) {
        const auto& in = inputs.at(static_cast<std::size_t>(s.input));
        if (in.kind() != s.kind || in.extents() != s.extents) {
          throw ContractError("input buffer " + std::to_string(s.input) + " does not match the task ABI");
        }
      }
      slots_.emplace_back(s.kind, s.extents);
    }
  }

  void reset() {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      const auto& s = plan_.slots[i];
      auto dst = slots_[i].bytes();
      const int src = s.input >= 0 ? s.input : s.copy_of;
      if (src >= 0) {
        auto from = inputs_[static_cast<std::size_t>(src)].bytes();
        std::memcpy(dst.data(), from.data(), from.size());
      } else {
        std::memset(dst.data(), 0, dst.size());
      }
    }
  }

  // Runs the whole sequence; returns 0 or the signal raised by `call`.
  template <class Call>
  int execute(const std::vector<kevo_entry_fn>& fns, Call&& call) {
    kevo_desc desc = make_desc();
    auto swap_front = [&] {
      std::swap(slots_[0], slots_[1]);
      desc = make_desc();
    };
    switch (plan_.sequencing) {
      case Sequencing::single:
        return call(fns[0], &desc);
      case Sequencing::per_step:
        for (std::int64_t step = 0; step < plan_.steps; ++step) {
          desc.step_index = step;
          for (auto fn : fns) {
            if (int sig = call(fn, &desc)) return sig;
          }
          if (plan_.swap_front) swap_front();
        }
        return 0;
      case Sequencing::passes:
        for (auto fn : fns) {
          if (int sig = call(fn, &desc)) return sig;
          if (plan_.swap_front) swap_front();
        }
        return 0;
    }
    return 0;
  }

  std::uint32_t status() const {
    return plan_.status_slot < 0 ? 0u : slots_[static_cast<std::size_t>(plan_.status_slot)].u32()[0];
  }

  Buffers outputs() const {
    Buffers out;
    for (int i : plan_.outputs) out.push_back(slots_[static_cast<std::size_t>(i)]);
    return out;
  }

  std::size_t output_bytes() const {
    std::size_t n = 0;
    for (int i : plan_.outputs) n += slots_[static_cast<std::size_t>(i)].size_bytes();
    return n;
  }

  void write_outputs(std::byte* dst) const {
    for (int i : plan_.outputs) {
      auto b = slots_[static_cast<std::size_t>(i)].bytes();
      std::memcpy(dst, b.data(), b.size());
      dst += b.size();
    }
  }

  Buffers read_outputs(const std::byte* src) const {
    Buffers out;
    for (int i : plan_.outputs) {
      FieldBuffer b(slots_[static_cast<std::size_t>(i)].kind(), slots_[static_cast<std::size_t>(i)].extents());
      std::memcpy(b.bytes().data(), src, b.size_bytes());
      src += b.size_bytes();
      out.push_back(std::move(b));
    }
    return out;
  }

 private:
  kevo_desc make_desc() {
    kevo_desc d{};
    d.abi_version = KEVO_ABI_VERSION;
    d.num_buffers = static_cast<std::uint32_t>(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      d.buffers[i].data = slots_[i].bytes().data();
      d.buffers[i].count = slots_[i].count();
      d.buffers[i].kind = static_cast<std::uint32_t>(slots_[i].kind());
    }
    for (int i = 0; i < KEVO_MAX_PARAMS; ++i) d.params[i] = plan_.params[i];
    for (int i = 0; i < KEVO_MAX_CONSTANTS; ++i) d.constants[i] = plan_.constants[i];
    d.steps = plan_.steps;
    d.seed = plan_.seed;
    return d;
  }

  const DispatchPlan& plan_;
  const Buffers& inputs_;
  std::vector<FieldBuffer> slots_;
};

double steady_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// Shared between a forked measurement child and the harness.
struct ChildReport {
  int status = 0;  // 0 ok, 1 candidate status flag set, 2 exception
  int warmups = 0;
  int timed = 0;
  double reps[kTimedReps] = {};
  char message[512] = {};
};

std::filesystem::path make_work_dir() {
  static std::atomic<unsigned> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("kevo-" + std::to_string(getpid()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

PluginBackend::PluginBackend(ToolchainConfig config) : config_(std::move(config)), clock_(steady_seconds) {
  if (config_.include_dir.empty()) config_.include_dir = abi_include_dir();
  if (config_.work_dir.empty()) {
    work_dir_ = make_work_dir();
    owns_work_dir_ = true;
  } else {
    work_dir_ = config_.work_dir;
    std::filesystem::create_directories(work_dir_);
  }
}

PluginBackend::~PluginBackend() {
  for (auto& [path, handle] : handles_) dlclose(handle);
  if (owns_work_dir_) {
    std::error_code ec;
    std::filesystem::remove_all(work_dir_, ec);
  }
}

void PluginBackend::probe_toolchain() const {
  const auto r = detail::run_process({config_.compiler, "--version"}, std::chrono::seconds(20));
  if (r.exec_failed || r.timed_out || r.exit_code != 0) {
    throw ToolchainError("C compiler '" + config_.compiler +
                         "' is not usable; install a C11 compiler or set KEVO_CC (" +
                         (r.output.empty() ? std::string("no output") : r.output) + ")");
  }
  if (!std::filesystem::exists(config_.include_dir / "kevo" / "abi.h")) {
    throw ToolchainError("candidate ABI header not found under " + config_.include_dir.string() +
                         "; set KEVO_ABI_DIR");
  }
}

CompileOutcome PluginBackend::compile(const Candidate& candidate) {
  CompileOutcome out;
  out.candidate_hash = candidate.hash();
  if (candidate.dialect != Dialect::native_plugin) {
    out.diagnostics = "the native backend only accepts C sources; got a " +
                      std::string(to_string(candidate.dialect)) + " script\n";
    return out;
  }
  unsigned long seq;
  {
    std::lock_guard lock(mutex_);
    seq = sequence_++;
  }
  const auto stem = out.candidate_hash + "-" + std::to_string(seq);
  const auto src = work_dir_ / (stem + ".c");
  const auto lib = work_dir_ / (stem + ".so");
  {
    std::ofstream f(src, std::ios::binary);
    f << candidate.source;
    if (!f) throw ToolchainError("cannot write " + src.string());
  }
  std::vector<std::string> argv{config_.compiler};
  argv.insert(argv.end(), config_.flags.begin(), config_.flags.end());
  argv.push_back("-I" + config_.include_dir.string());
  argv.push_back("-o");
  argv.push_back(lib.string());
  argv.push_back(src.string());
  argv.push_back("-lm");

  const auto r = detail::run_process(argv, config_.compile_timeout);
  if (r.exec_failed) throw ToolchainError(r.output);
  out.diagnostics = r.output;
  if (r.timed_out) {
    out.diagnostics += "compile timeout: exceeded " + std::to_string(config_.compile_timeout.count()) + " s\n";
    return out;
  }
  if (r.exit_code != 0 || !std::filesystem::exists(lib)) {
    if (out.diagnostics.empty()) {
      out.diagnostics = "compiler exited with status " + std::to_string(r.exit_code) + "\n";
    }
    return out;
  }
  out.ok = true;
  out.artifact = lib.string();
  return out;
}

void* PluginBackend::load(const std::string& path, std::string& error) {
  std::lock_guard lock(mutex_);
  if (auto it = handles_.find(path); it != handles_.end()) return it->second;
  void* h = dlopen(path.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (h == nullptr) {
    const char* e = dlerror();
    error = std::string("dlopen failed: ") + (e ? e : "unknown error");
    return nullptr;
  }
  handles_[path] = h;
  return h;
}

void PluginBackend::release(const CompileOutcome& artifact) {
  std::lock_guard lock(mutex_);
  if (auto it = handles_.find(artifact.artifact); it != handles_.end()) {
    dlclose(it->second);
    handles_.erase(it);
  }
}

RunOutcome PluginBackend::run(const CompileOutcome& artifact, const TaskSpec& task,
                              const SizeConfig& size, const Buffers& inputs, std::uint64_t seed) {
  if (!artifact.ok) throw ContractError("run: artifact did not compile");
  RunOutcome out;
  const auto where = "size " + size.label() + ": ";
  std::string error;
  void* handle = load(artifact.artifact, error);
  if (handle == nullptr) {
    out.diagnostics = where + error;
    return out;
  }

  using version_fn = std::uint32_t (*)();
  auto version = reinterpret_cast<version_fn>(dlsym(handle, "kevo_abi_version"));
  if (version == nullptr) {
    out.diagnostics = where + "missing symbol kevo_abi_version (expand KEVO_DECLARE_ABI() once)";
    return out;
  }
  const auto plan = make_dispatch_plan(task, size, seed);
  std::vector<kevo_entry_fn> fns;
  for (const auto& e : plan.entries) {
    auto fn = reinterpret_cast<kevo_entry_fn>(dlsym(handle, e.c_str()));
    if (fn == nullptr) {
      out.diagnostics = where + "missing entry symbol '" + e + "'";
      return out;
    }
    fns.push_back(fn);
  }

  PlanRunner runner(plan, inputs);
  const auto watchdog = config_.watchdog;
  const double budget = std::chrono::duration<double>(watchdog).count();
  const auto observer = observer_for(size);

  if (!config_.subprocess_isolation) {
    std::lock_guard lock(g_run_mutex);
    SignalScope scope;
    const double start = steady_seconds();
    auto call = [&](kevo_entry_fn fn, const kevo_desc* d) {
      return guarded_call(fn, d, budget - (steady_seconds() - start));
    };
    const std::uint32_t abi = version();
    if (abi != KEVO_ABI_VERSION) {
      out.diagnostics = where + "ABI version mismatch: candidate reports " + std::to_string(abi) +
                        ", harness expects " + std::to_string(KEVO_ABI_VERSION);
      return out;
    }
    int signal_no = 0;
    auto rep = [&](bool, int) -> double {
      runner.reset();
      const double t0 = clock_();
      signal_no = runner.execute(fns, call);
      const double t1 = clock_();
      if (signal_no != 0) throw std::runtime_error(describe_signal(signal_no, watchdog));
      if (runner.status() != 0) throw std::runtime_error("candidate reported status " + std::to_string(runner.status()));
      return t1 - t0;
    };
    try {
      out.timing = run_protocol(rep, observer);
    } catch (const std::runtime_error& e) {
      out.diagnostics = where + e.what();
      return out;
    }
    out.outputs = runner.outputs();
    out.ok = true;
    return out;
  }

  // Forked measurement: the child runs the protocol unguarded and reports
  // through shared memory; the harness enforces the wall-clock budget.
  const std::size_t bytes = sizeof(ChildReport) + runner.output_bytes();
  void* shared = mmap(nullptr, bytes, PROT_READ | PROT_WRITE, MAP_SHARED | MAP_ANONYMOUS, -1, 0);
  if (shared == MAP_FAILED) throw std::runtime_error(std::string("mmap: ") + std::strerror(errno));
  auto* report = new (shared) ChildReport{};
  const pid_t pid = fork();
  if (pid < 0) {
    munmap(shared, bytes);
    throw std::runtime_error(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    for (int sig : kTrapped) signal(sig, SIG_DFL);
    try {
      if (version() != KEVO_ABI_VERSION) {
        report->status = 2;
        std::snprintf(report->message, sizeof report->message,
                      "ABI version mismatch: candidate reports %u, harness expects %u", version(),
                      KEVO_ABI_VERSION);
        _exit(0);
      }
      auto call = [](kevo_entry_fn fn, const kevo_desc* d) {
        fn(d);
        return 0;
      };
      for (int i = 0; i < kWarmupReps + kTimedReps; ++i) {
        runner.reset();
        const double t0 = clock_();
        runner.execute(fns, call);
        const double t1 = clock_();
        if (runner.status() != 0) {
          report->status = 1;
          std::snprintf(report->message, sizeof report->message, "candidate reported status %u",
                        runner.status());
          _exit(0);
        }
        if (i < kWarmupReps) {
          report->warmups = i + 1;
        } else {
          report->reps[i - kWarmupReps] = t1 - t0;
          report->timed = i - kWarmupReps + 1;
        }
      }
      runner.write_outputs(reinterpret_cast<std::byte*>(report + 1));
      _exit(0);
    } catch (const std::exception& e) {
      report->status = 2;
      std::snprintf(report->message, sizeof report->message, "%s", e.what());
      _exit(0);
    }
  }

  const auto deadline = std::chrono::steady_clock::now() + watchdog;
  int status = 0;
  bool timed_out = false;
  for (;;) {
    const pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(pid, SIGKILL);
      while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::microseconds(500));
  }

  if (timed_out) {
    out.diagnostics = where + describe_signal(SIGALRM, watchdog);
  } else if (WIFSIGNALED(status)) {
    out.diagnostics = where + describe_signal(WTERMSIG(status), watchdog);
  } else if (report->status != 0) {
    out.diagnostics = where + report->message;
  } else {
    for (int i = 0; i < report->warmups && observer; ++i) observer(false, i);
    for (int i = 0; i < report->timed && observer; ++i) observer(true, i);
    out.timing.warmup_count = report->warmups;
    out.timing.timed_count = report->timed;
    out.timing.per_rep_seconds.assign(report->reps, report->reps + report->timed);
    out.timing.median_seconds = median(out.timing.per_rep_seconds);
    out.outputs = runner.read_outputs(reinterpret_cast<const std::byte*>(report + 1));
    out.ok = true;
  }
  munmap(shared, bytes);
  return out;
}

}  // namespace kevo::backend
