#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kevo/taskbench/types.hpp"

namespace kevo::roofline {

using taskbench::BoundKind;
using taskbench::SizeConfig;
using taskbench::TaskId;
using taskbench::TaskSpec;

/// Throughput in SI units per second: bytes/s for bandwidth-bound tasks,
/// FLOP/s for compute-bound ones.
struct Throughput {
  double per_second = 0.0;
  BoundKind kind = BoundKind::bandwidth;

  double giga() const { return per_second * 1e-9; }
  std::string unit() const { return kind == BoundKind::bandwidth ? "GB/s" : "GFLOPS"; }
};

class ChipPeaks {
 public:
  /// Throws ContractError unless both peaks are strictly positive.
  ChipPeaks(std::string name, double peak_fp32_gflops, double peak_dram_gbs);

  const std::string& name() const { return name_; }
  double peak_fp32_gflops() const { return gflops_; }
  double peak_dram_gbs() const { return gbs_; }

 private:
  std::string name_;
  double gflops_;
  double gbs_;
};

/// name -> peaks, loaded from a JSON document
/// {"schema": "kevo.chips/1", "chips": [{"name", "peak_fp32_gflops", "peak_dram_gbs"}]}.
class ChipRegistry {
 public:
  static ChipRegistry builtin();
  static ChipRegistry load(const std::filesystem::path& path);

  void add(ChipPeaks chip);
  const ChipPeaks& find(const std::string& name) const;
  const std::vector<ChipPeaks>& chips() const { return chips_; }

 private:
  std::vector<ChipPeaks> chips_;
};

struct WorkModel {
  TaskId task = TaskId::saxpy;
  BoundKind kind = BoundKind::bandwidth;
  /// Bytes or FLOPs per unit per step.
  double coefficient = 0.0;
  std::string unit;

  double units(const TaskSpec& task, const SizeConfig& size) const;
  /// coefficient * units * steps, in bytes or FLOPs.
  double work(const TaskSpec& task, const SizeConfig& size) const;
};

WorkModel work_model(TaskId task);

/// Nominal FLOP count of one evaluation, for reporting alongside byte-counted
/// tasks (fft3d: 5 N log2 N per line, three axes).
double nominal_flops(const TaskSpec& task, const SizeConfig& size);

Throughput ceiling(const TaskSpec& task, const SizeConfig& size, const ChipPeaks& chip);
Throughput achieved(const TaskSpec& task, const SizeConfig& size, double elapsed_seconds);
double fraction(const TaskSpec& task, const SizeConfig& size, const ChipPeaks& chip,
                double elapsed_seconds);

struct SizeScore {
  SizeConfig size;
  bool chi = false;
  double achieved_per_second = 0.0;
  double fraction = 0.0;
};

struct ScoreReport {
  std::vector<SizeScore> per_size;
  double in_dist_score = 0.0;
  bool correctness_gate = false;
};

struct GatedFraction {
  bool chi = false;
  double fraction = 0.0;
};

/// Geometric mean of the fractions, or 0 if any size failed. Requires exactly
/// three entries and non-negative fractions.
double in_dist_score(std::span<const GatedFraction> per_size);
ScoreReport make_score_report(std::vector<SizeScore> per_size);

/// Result of the single end-of-run evaluation at the unseen size. Kept apart
/// from ScoreReport so nothing mutator-facing can carry it.
struct HeldOutVerdict {
  SizeConfig size;
  bool chi = false;
  double fraction = 0.0;
  double phi = 0.0;
  double elapsed_seconds = 0.0;
  std::string detail;
};

double held_out_score(bool chi, double fraction);

/// "8.5%", "42%", "0.31%": two significant digits, trailing zeros trimmed.
std::string format_percent(double fraction);

}  // namespace kevo::roofline
