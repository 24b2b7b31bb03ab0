#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "kevo/taskbench/types.hpp"

namespace kevo::testing {

inline std::vector<float> floats(const taskbench::FieldBuffer& b) {
  auto s = b.f32();
  return {s.begin(), s.end()};
}

inline std::vector<double> doubles(const taskbench::FieldBuffer& b) {
  auto s = b.f32();
  return {s.begin(), s.end()};
}

inline taskbench::FieldBuffer f32_buffer(std::vector<std::size_t> extents, std::span<const float> values) {
  taskbench::FieldBuffer b(taskbench::ElemKind::f32, std::move(extents));
  std::copy(values.begin(), values.end(), b.f32().begin());
  return b;
}

template <class A, class B>
double max_abs_diff(const A& a, const B& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])));
  return m;
}

inline taskbench::SizeConfig size_n(taskbench::TaskId id, std::int64_t n, int steps, const char* name = "N") {
  taskbench::SizeConfig s;
  s.task = id;
  s.params = {{name, n}};
  s.steps = steps;
  return s;
}

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "kevo-test-XXXXXX").string();
    path_ = ::mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kevo::testing
