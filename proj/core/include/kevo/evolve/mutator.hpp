#pragma once

#include <stdexcept>
#include <string>

#include "kevo/evolve/feedback.hpp"

namespace kevo::evolve {

/// Fixed per-task instructions given to the mutator alongside each packet.
struct TaskPrompt {
  std::string version;
  taskbench::TaskId task = taskbench::TaskId::saxpy;
  std::string text;

  std::string digest() const { return backend::content_hash(version + "\n" + text); }
};

/// The mutator could not produce a candidate (transport error, timeout,
/// unusable response, exhausted script). Consumes the iteration.
class MutatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Mutator {
 public:
  virtual ~Mutator() = default;
  virtual std::string id() const = 0;
  /// Returns candidate source text; throws MutatorError on failure.
  virtual std::string propose(const TaskPrompt& prompt, const FeedbackPacket& feedback) = 0;
};

}  // namespace kevo::evolve
