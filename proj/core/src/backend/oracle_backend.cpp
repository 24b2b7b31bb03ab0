#include "kevo/backend/oracle_backend.hpp"

#include <limits>
#include <sstream>

#include "kevo/taskbench/reference.hpp"

namespace kevo::backend {

using taskbench::ContractError;
using taskbench::ElemKind;
using taskbench::TaskId;

bool OracleScript::SizeRule::applies(const std::string& label) const {
  if (sizes.empty()) return !invert;
  return sizes.contains(label) != invert;
}

OracleScript OracleScript::parse(const std::string& source) {
  OracleScript s;
  std::istringstream in(source);
  std::string line;
  int lineno = 0;
  bool magic = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!magic) {
      if (word != kOracleMagic) throw ContractError("line 1: expected " + std::string(kOracleMagic));
      magic = true;
      continue;
    }
    if (word.starts_with("#")) continue;
    auto rest = [&] {
      std::string r;
      std::getline(ls >> std::ws, r);
      return r;
    };
    auto sizes = [&] {
      std::set<std::string> out;
      std::string w;
      while (ls >> w) out.insert(w);
      return out;
    };
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    if (word == "slowdown" || word == "slowdown_unless") {
      SizeRule r;
      if (!(ls >> r.factor) || !(r.factor > 0.0)) throw ContractError(where() + word + " needs a positive factor");
      r.invert = word == "slowdown_unless";
      r.sizes = sizes();
      if (r.invert && r.sizes.empty()) throw ContractError(where() + "slowdown_unless needs sizes");
      s.slowdowns.push_back(std::move(r));
    } else if (word == "corrupt" || word == "corrupt_unless") {
      SizeRule r;
      r.invert = word == "corrupt_unless";
      r.sizes = sizes();
      if (r.invert && r.sizes.empty()) throw ContractError(where() + "corrupt_unless needs sizes");
      s.corruptions.push_back(std::move(r));
    } else if (word == "nan") {
      SizeRule r;
      r.sizes = sizes();
      s.nans.push_back(std::move(r));
    } else if (word == "compile_error") {
      s.compile_error = rest();
    } else if (word == "run_error") {
      s.run_error = rest();
    } else if (word == "hang") {
      s.hang = true;
    } else if (word == "note") {
      // free text
    } else {
      throw ContractError(where() + "unknown directive '" + word + "'");
    }
  }
  if (!magic) throw ContractError("empty oracle script");
  return s;
}

double OracleScript::slowdown_at(const std::string& label) const {
  double f = 1.0;
  for (const auto& r : slowdowns) {
    if (r.applies(label)) f *= r.factor;
  }
  return f;
}

OracleBackend::OracleBackend(roofline::ChipPeaks chip, double nominal_efficiency)
    : chip_(std::move(chip)), efficiency_(nominal_efficiency) {
  if (!(efficiency_ > 0.0)) throw ContractError("oracle: nominal efficiency must be positive");
}

CompileOutcome OracleBackend::compile(const Candidate& candidate) {
  CompileOutcome out;
  out.candidate_hash = candidate.hash();
  if (candidate.dialect != Dialect::oracle) {
    out.diagnostics = "the oracle backend only accepts " + std::string(kOracleMagic) + " scripts\n";
    return out;
  }
  OracleScript script;
  try {
    script = OracleScript::parse(candidate.source);
  } catch (const ContractError& e) {
    out.diagnostics = std::string("oracle script: ") + e.what() + "\n";
    return out;
  }
  if (script.compile_error) {
    out.diagnostics = *script.compile_error + "\n";
    return out;
  }
  out.ok = true;
  out.artifact = "oracle:" + out.candidate_hash;
  std::lock_guard lock(mutex_);
  scripts_[out.artifact] = std::move(script);
  return out;
}

void OracleBackend::release(const CompileOutcome& artifact) {
  std::lock_guard lock(mutex_);
  scripts_.erase(artifact.artifact);
}

int OracleBackend::runs_at(const std::string& label) const {
  std::lock_guard lock(mutex_);
  auto it = runs_.find(label);
  return it == runs_.end() ? 0 : it->second;
}

int OracleBackend::runs_at(const std::string& label, const std::string& candidate_hash) const {
  std::lock_guard lock(mutex_);
  auto it = candidate_runs_.find({label, candidate_hash});
  return it == candidate_runs_.end() ? 0 : it->second;
}

int OracleBackend::total_runs() const {
  std::lock_guard lock(mutex_);
  int n = 0;
  for (const auto& [_, c] : runs_) n += c;
  return n;
}

double OracleBackend::modelled_seconds(const TaskSpec& task, const SizeConfig& size) const {
  const auto work = roofline::work_model(task.id).work(task, size);
  return work / (roofline::ceiling(task, size, chip_).per_second * efficiency_);
}

const Buffers& OracleBackend::reference_for(const TaskSpec& task, const SizeConfig& size,
                                            const Buffers& inputs, std::uint64_t seed) {
  std::string key = std::string(taskbench::to_string(task.id)) + "|" + size.label() + "|" +
                    std::to_string(seed);
  for (const auto& b : inputs) {
    auto bytes = b.bytes();
    key += "|" + content_hash({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
  }
  {
    std::lock_guard lock(mutex_);
    if (auto it = references_.find(key); it != references_.end()) return it->second;
  }
  auto ref = taskbench::reference_outputs(task, size, inputs, seed);
  std::lock_guard lock(mutex_);
  return references_.emplace(key, std::move(ref)).first->second;
}

RunOutcome OracleBackend::run(const CompileOutcome& artifact, const TaskSpec& task,
                              const SizeConfig& size, const Buffers& inputs, std::uint64_t seed) {
  if (!artifact.ok) throw ContractError("run: artifact did not compile");
  OracleScript script;
  {
    std::lock_guard lock(mutex_);
    auto it = scripts_.find(artifact.artifact);
    if (it == scripts_.end()) throw ContractError("run: unknown oracle artifact " + artifact.artifact);
    script = it->second;
    ++runs_[size.label()];
    ++candidate_runs_[{size.label(), artifact.candidate_hash}];
  }
  const auto label = size.label();
  RunOutcome out;
  if (script.hang) {
    out.diagnostics = "size " + label + ": watchdog timeout: exceeded 30000 ms wall clock";
    return out;
  }
  if (script.run_error) {
    out.diagnostics = "size " + label + ": " + *script.run_error;
    return out;
  }

  out.outputs = reference_for(task, size, inputs, seed);
  bool corrupt = false;
  for (const auto& r : script.corruptions) corrupt = corrupt || r.applies(label);
  bool nan = false;
  for (const auto& r : script.nans) nan = nan || r.applies(label);
  if (corrupt && task.id == TaskId::hmc) {
    out.outputs[0] = inputs.at(1);  // unmixed chains: initial states returned untouched
  } else if (corrupt || nan) {
    for (auto& b : out.outputs) {
      if (b.kind() == ElemKind::i8) {
        for (auto& v : b.i8()) v = static_cast<std::int8_t>(-v);
      } else if (b.kind() == ElemKind::u32) {
        for (auto& v : b.u32()) v ^= 1u;
      } else {
        for (auto& v : b.f32()) v = nan ? std::numeric_limits<float>::quiet_NaN() : v + 1.0f;
      }
    }
  }

  const double modelled = modelled_seconds(task, size) * script.slowdown_at(label);
  auto rep = [&](bool timed, int index) {
    return rep_time_ ? rep_time_(size, timed, index, modelled) : modelled;
  };
  out.timing = run_protocol(rep, observer_for(size));
  out.ok = true;
  return out;
}

}  // namespace kevo::backend
