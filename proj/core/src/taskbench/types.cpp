#include "kevo/taskbench/types.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>

namespace kevo::taskbench {
namespace {

constexpr std::array<std::pair<TaskId, std::string_view>, 10> kTaskNames{{
    {TaskId::saxpy, "saxpy"},
    {TaskId::heat2d, "heat2d"},
    {TaskId::wave3d, "wave3d"},
    {TaskId::nbody, "nbody"},
    {TaskId::hmc, "hmc"},
    {TaskId::lbm, "lbm"},
    {TaskId::ising, "ising"},
    {TaskId::lj, "lj"},
    {TaskId::gradshaf, "gradshaf"},
    {TaskId::fft3d, "fft3d"},
}};

}  // namespace

const std::vector<TaskId>& all_tasks() {
  static const std::vector<TaskId> tasks = [] {
    std::vector<TaskId> out;
    for (const auto& [id, name] : kTaskNames) out.push_back(id);
    return out;
  }();
  return tasks;
}

std::string_view to_string(TaskId id) {
  for (const auto& [tid, name] : kTaskNames) {
    if (tid == id) return name;
  }
  return "unknown";
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::smoke: return "smoke";
    case Regime::R1: return "R1";
    case Regime::R2: return "R2";
    case Regime::R3: return "R3";
    case Regime::R4: return "R4";
    case Regime::R5: return "R5";
    case Regime::R6: return "R6";
  }
  return "unknown";
}

std::string_view to_string(BoundKind b) {
  return b == BoundKind::bandwidth ? "bandwidth" : "compute";
}

std::string_view to_string(Profile p) { return p == Profile::paper ? "paper" : "desk"; }

std::string_view to_string(VerifyKind k) {
  switch (k) {
    case VerifyKind::max_abs_tolerance: return "max_abs_tolerance";
    case VerifyKind::relative_max_norm: return "relative_max_norm";
    case VerifyKind::byte_equality: return "byte_equality";
    case VerifyKind::statistical_moments: return "statistical_moments";
  }
  return "unknown";
}

TaskId parse_task(std::string_view name) {
  for (const auto& [id, tname] : kTaskNames) {
    if (tname == name) return id;
  }
  throw ContractError("unknown task '" + std::string(name) + "'");
}

Profile parse_profile(std::string_view name) {
  if (name == "paper") return Profile::paper;
  if (name == "desk") return Profile::desk;
  throw ContractError("unknown profile '" + std::string(name) + "' (expected paper|desk)");
}

std::size_t elem_size(ElemKind kind) {
  switch (kind) {
    case ElemKind::f32: return 4;
    case ElemKind::c64: return 8;
    case ElemKind::i8: return 1;
    case ElemKind::u32: return 4;
  }
  return 0;
}

std::int64_t SizeConfig::param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return p.value;
  }
  throw ContractError("size " + label() + " has no parameter '" + std::string(name) + "'");
}

std::string SizeConfig::label() const {
  std::string out;
  for (const auto& p : params) {
    if (!out.empty()) out += ',';
    out += p.name;
    out += '=';
    out += std::to_string(p.value);
  }
  return out;
}

void SizeConfig::validate() const {
  if (params.empty()) throw ContractError("size config has no parameters");
  for (const auto& p : params) {
    if (p.value <= 0) throw ContractError("size parameter " + p.name + " must be positive");
  }
  if (steps < 1) throw ContractError("size config steps must be >= 1");
  if (task == TaskId::fft3d) {
    const auto n = param("N");
    if ((n & (n - 1)) != 0) throw ContractError("fft3d requires a power-of-two N, got " + label());
  }
}

double TaskSpec::constant(std::string_view name) const {
  auto it = constants.find(std::string(name));
  if (it == constants.end()) {
    throw ContractError(std::string(to_string(id)) + " has no constant '" + std::string(name) + "'");
  }
  return it->second;
}

bool TaskSpec::owns(const SizeConfig& size) const {
  if (size == held_out) return true;
  return std::find(in_dist.begin(), in_dist.end(), size) != in_dist.end();
}

void TaskSpec::validate() const {
  if (in_dist.size() != 3) throw ContractError("task must have exactly three in-distribution sizes");
  for (const auto& s : in_dist) {
    s.validate();
    if (s.task != id) throw ContractError("size config belongs to another task");
  }
  held_out.validate();
  if (held_out.task != id) throw ContractError("held-out size belongs to another task");
  if (std::find(in_dist.begin(), in_dist.end(), held_out) != in_dist.end()) {
    throw ContractError("held-out size must not be an in-distribution size");
  }
  // R2 and the lj work model are FLOP-counted; everything else moves bytes.
  const bool expect_compute = regime == Regime::R2 || id == TaskId::lj;
  if ((bound == BoundKind::compute) != expect_compute) {
    throw ContractError("bound kind does not match regime for " + std::string(to_string(id)));
  }
}

FieldBuffer::FieldBuffer(ElemKind kind, std::vector<std::size_t> extents)
    : kind_(kind), extents_(std::move(extents)) {
  bytes_.assign(count() * elem_size(kind_), std::byte{0});
}

std::size_t FieldBuffer::count() const {
  if (extents_.empty()) return 0;
  return std::accumulate(extents_.begin(), extents_.end(), std::size_t{1},
                         std::multiplies<>());
}

void FieldBuffer::require(ElemKind kind) const {
  const bool float_view = kind == ElemKind::f32 && (kind_ == ElemKind::f32 || kind_ == ElemKind::c64);
  if (!float_view && kind != kind_) throw ContractError("field buffer element kind mismatch");
}

std::span<float> FieldBuffer::f32() {
  require(ElemKind::f32);
  return {reinterpret_cast<float*>(bytes_.data()), bytes_.size() / sizeof(float)};
}

std::span<const float> FieldBuffer::f32() const {
  require(ElemKind::f32);
  return {reinterpret_cast<const float*>(bytes_.data()), bytes_.size() / sizeof(float)};
}

std::span<std::int8_t> FieldBuffer::i8() {
  require(ElemKind::i8);
  return {reinterpret_cast<std::int8_t*>(bytes_.data()), bytes_.size()};
}

std::span<const std::int8_t> FieldBuffer::i8() const {
  require(ElemKind::i8);
  return {reinterpret_cast<const std::int8_t*>(bytes_.data()), bytes_.size()};
}

std::span<std::uint32_t> FieldBuffer::u32() {
  require(ElemKind::u32);
  return {reinterpret_cast<std::uint32_t*>(bytes_.data()), bytes_.size() / sizeof(std::uint32_t)};
}

std::span<const std::uint32_t> FieldBuffer::u32() const {
  require(ElemKind::u32);
  return {reinterpret_cast<const std::uint32_t*>(bytes_.data()),
          bytes_.size() / sizeof(std::uint32_t)};
}

}  // namespace kevo::taskbench
