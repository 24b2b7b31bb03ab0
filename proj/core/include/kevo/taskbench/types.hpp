#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kevo::taskbench {

enum class TaskId { saxpy, heat2d, wave3d, nbody, hmc, lbm, ising, lj, gradshaf, fft3d };
enum class Regime { smoke, R1, R2, R3, R4, R5, R6 };
enum class BoundKind { bandwidth, compute };
enum class Profile { paper, desk };
enum class VerifyKind { max_abs_tolerance, relative_max_norm, byte_equality, statistical_moments };
enum class ElemKind : std::uint32_t { f32 = 0, c64 = 1, i8 = 2, u32 = 3 };

/// Raised for contract violations: bad shapes, out-of-range parameters,
/// unknown tasks. Evaluation outcomes are never reported this way.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<TaskId>& all_tasks();
std::string_view to_string(TaskId id);
std::string_view to_string(Regime r);
std::string_view to_string(BoundKind b);
std::string_view to_string(Profile p);
std::string_view to_string(VerifyKind k);
TaskId parse_task(std::string_view name);
Profile parse_profile(std::string_view name);

std::size_t elem_size(ElemKind kind);

struct SizeParam {
  std::string name;
  std::int64_t value = 0;

  friend bool operator==(const SizeParam&, const SizeParam&) = default;
};

struct SizeConfig {
  TaskId task = TaskId::saxpy;
  std::vector<SizeParam> params;
  int steps = 1;

  std::int64_t param(std::string_view name) const;
  /// Canonical "name=value[,name=value]" form used in logs and prompts.
  std::string label() const;
  void validate() const;

  friend bool operator==(const SizeConfig&, const SizeConfig&) = default;
};

struct VerificationRule {
  VerifyKind kind = VerifyKind::max_abs_tolerance;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  double stat_mean_tol = 0.0;
  double stat_cov_tol = 0.0;
};

struct TaskSpec {
  TaskId id = TaskId::saxpy;
  Regime regime = Regime::smoke;
  BoundKind bound = BoundKind::bandwidth;
  std::string seed_source;
  std::vector<SizeConfig> in_dist;
  SizeConfig held_out;
  std::map<std::string, double> constants;
  VerificationRule verification;
  int default_iterations = 10;

  double constant(std::string_view name) const;
  bool owns(const SizeConfig& size) const;
  void validate() const;
};

/// Dense row-major payload with a declared element kind. c64 extents count
/// complex elements; each occupies two floats.
class FieldBuffer {
 public:
  FieldBuffer() = default;
  FieldBuffer(ElemKind kind, std::vector<std::size_t> extents);

  ElemKind kind() const { return kind_; }
  const std::vector<std::size_t>& extents() const { return extents_; }
  std::size_t count() const;
  std::size_t size_bytes() const { return bytes_.size(); }

  std::span<std::byte> bytes() { return bytes_; }
  std::span<const std::byte> bytes() const { return bytes_; }

  std::span<float> f32();
  std::span<const float> f32() const;
  std::span<std::int8_t> i8();
  std::span<const std::int8_t> i8() const;
  std::span<std::uint32_t> u32();
  std::span<const std::uint32_t> u32() const;

  bool same_shape(const FieldBuffer& other) const {
    return kind_ == other.kind_ && extents_ == other.extents_;
  }

  friend bool operator==(const FieldBuffer&, const FieldBuffer&) = default;

 private:
  void require(ElemKind kind) const;

  ElemKind kind_ = ElemKind::f32;
  std::vector<std::size_t> extents_;
  std::vector<std::byte> bytes_;
};

using Buffers = std::vector<FieldBuffer>;

}  // namespace kevo::taskbench
