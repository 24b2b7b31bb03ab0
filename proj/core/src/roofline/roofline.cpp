#include "kevo/roofline/roofline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace kevo::roofline {

using taskbench::ContractError;

ChipPeaks::ChipPeaks(std::string name, double peak_fp32_gflops, double peak_dram_gbs)
    : name_(std::move(name)), gflops_(peak_fp32_gflops), gbs_(peak_dram_gbs) {
  if (!(gflops_ > 0.0) || !(gbs_ > 0.0)) {
    throw ContractError("chip '" + name_ + "': peaks must be strictly positive");
  }
}

ChipRegistry ChipRegistry::builtin() {
  ChipRegistry r;
  r.add(ChipPeaks("m1-pro", 4500.0, 200.0));
  return r;
}

ChipRegistry ChipRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read chip registry " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError("chip registry " + path.string() + ": " + e.what());
  }
  if (doc.value("schema", "") != "kevo.chips/1") {
    throw ContractError("chip registry " + path.string() + ": unsupported schema");
  }
  ChipRegistry r;
  for (const auto& c : doc.at("chips")) {
    r.add(ChipPeaks(c.at("name").get<std::string>(), c.at("peak_fp32_gflops").get<double>(),
                    c.at("peak_dram_gbs").get<double>()));
  }
  return r;
}

void ChipRegistry::add(ChipPeaks chip) {
  for (auto& c : chips_) {
    if (c.name() == chip.name()) {
      c = std::move(chip);
      return;
    }
  }
  chips_.push_back(std::move(chip));
}

const ChipPeaks& ChipRegistry::find(const std::string& name) const {
  for (const auto& c : chips_) {
    if (c.name() == name) return c;
  }
  throw ContractError("unknown chip '" + name + "'");
}

namespace {

// std::cbrt is not correctly rounded; pick the neighbour whose cube is closest
// in extended precision so exact cubes come back exact.
double cube_root(double x) {
  const double r = std::cbrt(x);
  double best = r;
  long double best_err = std::fabs(static_cast<long double>(r) * r * r - x);
  for (double c : {std::nextafter(r, 0.0), std::nextafter(r, 2.0 * r + 1.0)}) {
    const long double err = std::fabs(static_cast<long double>(c) * c * c - x);
    if (err < best_err) {
      best = c;
      best_err = err;
    }
  }
  return best;
}

}  // namespace

WorkModel work_model(TaskId task) {
  using enum TaskId;
  switch (task) {
    case saxpy: return {task, BoundKind::bandwidth, 12.0, "element"};
    case heat2d: return {task, BoundKind::bandwidth, 8.0, "cell"};
    case wave3d: return {task, BoundKind::bandwidth, 12.0, "cell"};
    case nbody: return {task, BoundKind::compute, 20.0, "pair"};
    case hmc: return {task, BoundKind::compute, 2.0, "matrix element per matvec"};
    case lbm: return {task, BoundKind::bandwidth, 72.0, "cell"};
    case ising: return {task, BoundKind::bandwidth, 2.0, "site"};
    // Nominal: 27 cells x 16 occupants x 30 FLOPs per particle.
    case lj: return {task, BoundKind::compute, 27.0 * 16.0 * 30.0, "particle"};
    // Two 4-byte reads (reduction + stencil pass) and one 4-byte write.
    case gradshaf: return {task, BoundKind::bandwidth, 12.0, "cell"};
    case fft3d: return {task, BoundKind::bandwidth, 96.0, "cell"};
  }
  throw ContractError("no work model registered for task");
}

double WorkModel::units(const TaskSpec& t, const SizeConfig& size) const {
  using enum TaskId;
  auto p = [&](const char* name) { return static_cast<double>(size.param(name)); };
  switch (task) {
    case saxpy: return p("n");
    case heat2d:
    case lbm:
    case ising:
    case gradshaf: return p("N") * p("N");
    case wave3d:
    case fft3d: return p("N") * p("N") * p("N");
    case nbody: return p("N") * p("N");
    case hmc: return p("K") * (t.constant("L") + 1.0) * p("d") * p("d");
    case lj: return p("N");
  }
  return 0.0;
}

double WorkModel::work(const TaskSpec& t, const SizeConfig& size) const {
  return coefficient * units(t, size) * static_cast<double>(size.steps);
}

double nominal_flops(const TaskSpec& task, const SizeConfig& size) {
  if (task.id == TaskId::fft3d) {
    const double n = static_cast<double>(size.param("N"));
    return 3.0 * n * n * (5.0 * n * std::log2(n)) * static_cast<double>(size.steps);
  }
  const auto model = work_model(task.id);
  return model.kind == BoundKind::compute ? model.work(task, size) : 0.0;
}

Throughput ceiling(const TaskSpec& task, const SizeConfig& size, const ChipPeaks& chip) {
  (void)size;  // static per-chip ceilings
  const auto model = work_model(task.id);
  if (model.kind == BoundKind::bandwidth) return {chip.peak_dram_gbs() * 1e9, model.kind};
  return {chip.peak_fp32_gflops() * 1e9, model.kind};
}

Throughput achieved(const TaskSpec& task, const SizeConfig& size, double elapsed_seconds) {
  if (!(elapsed_seconds > 0.0)) throw ContractError("achieved: elapsed time must be positive");
  const auto model = work_model(task.id);
  return {model.work(task, size) / elapsed_seconds, model.kind};
}

double fraction(const TaskSpec& task, const SizeConfig& size, const ChipPeaks& chip,
                double elapsed_seconds) {
  return achieved(task, size, elapsed_seconds).per_second / ceiling(task, size, chip).per_second;
}

double in_dist_score(std::span<const GatedFraction> per_size) {
  if (per_size.size() != 3) throw ContractError("in_dist_score: expected exactly three sizes");
  bool gate = true;
  double product = 1.0;
  for (const auto& s : per_size) {
    if (!(s.fraction >= 0.0)) throw ContractError("in_dist_score: negative fraction");
    gate = gate && s.chi;
    product *= s.fraction;
  }
  if (!gate) return 0.0;
  return cube_root(product);
}

ScoreReport make_score_report(std::vector<SizeScore> per_size) {
  std::vector<GatedFraction> gated;
  for (const auto& s : per_size) gated.push_back({s.chi, s.fraction});
  ScoreReport r;
  r.in_dist_score = in_dist_score(gated);
  r.correctness_gate = true;
  for (const auto& g : gated) r.correctness_gate = r.correctness_gate && g.chi;
  r.per_size = std::move(per_size);
  return r;
}

double held_out_score(bool chi, double fraction) {
  if (!(fraction >= 0.0)) throw ContractError("held_out_score: negative fraction");
  return chi ? fraction : 0.0;
}

std::string format_percent(double fraction) {
  const double pct = fraction * 100.0;
  char buf[32];
  if (pct >= 9.95) {
    std::snprintf(buf, sizeof buf, "%.0f%%", pct);
  } else {
    std::snprintf(buf, sizeof buf, "%.2g%%", pct);
  }
  return buf;
}

}  // namespace kevo::roofline
