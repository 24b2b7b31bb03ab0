#pragma once

#include <string>

#include "kevo/evolve/mutator.hpp"
#include "kevo/roofline/roofline.hpp"

namespace kevo::llm {

inline constexpr const char* kPromptVersion = "kevo-prompt/1";

/// Builds the fixed instructions for a task: what to compute, the three
/// scored sizes, the calling convention and how candidates are scored. The
/// held-out size is never mentioned.
evolve::TaskPrompt render_task_prompt(const taskbench::TaskSpec& task, const roofline::ChipPeaks& chip);

}  // namespace kevo::llm
