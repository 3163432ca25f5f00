#pragma once

#include <filesystem>
#include <string>

namespace epc_test {

// Path of a shipped problem file, resolved relative to this source tree so
// the binary can run from any build directory.
inline std::string problem_path(const std::string& name) {
  namespace fs = std::filesystem;
  fs::path here = fs::path(__FILE__).parent_path();
  return (here.parent_path() / "problems" / name).string();
}

}  // namespace epc_test
