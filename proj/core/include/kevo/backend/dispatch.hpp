#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kevo/abi.h"
#include "kevo/taskbench/types.hpp"

namespace kevo::backend {

using taskbench::ElemKind;

enum class Sequencing {
  single,    // one call of entries[0]
  per_step,  // for step in [0, steps): call every entry in order
  passes,    // call every entry once, in order
};

/// One descriptor buffer. Bound to a fresh copy of inputs[input] when
/// input >= 0; otherwise scratch, zero-filled or copied from inputs[copy_of].
struct SlotSpec {
  ElemKind kind = ElemKind::f32;
  std::vector<std::size_t> extents;
  int input = -1;
  int copy_of = -1;
};

/// How the harness drives a candidate for one task and size.
struct DispatchPlan {
  std::vector<std::string> entries;
  Sequencing sequencing = Sequencing::single;
  /// Exchange descriptor slots 0 and 1 after each step (per_step) or after
  /// each pass (passes), so every call reads slot 0 and writes slot 1.
  bool swap_front = false;
  std::vector<SlotSpec> slots;
  std::int64_t params[4] = {0, 0, 0, 0};
  double constants[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::int64_t steps = 1;
  std::uint64_t seed = 0;
  /// Slots read back as outputs, in reference order.
  std::vector<int> outputs;
  /// u32 slot that must hold 0 after the run; -1 if none.
  int status_slot = -1;
};

DispatchPlan make_dispatch_plan(const taskbench::TaskSpec& task, const taskbench::SizeConfig& size,
                                std::uint64_t seed);

/// Human-readable calling convention for a task: entry points, buffers,
/// params and constants. Shared by prompts and documentation.
std::string abi_contract_text(taskbench::TaskId task);

/// Entry point names a candidate for `task` must export.
std::vector<std::string> entry_points(taskbench::TaskId task);

}  // namespace kevo::backend
