#include "blackbench/environment.hpp"

#include <sys/utsname.h>
#include <unistd.h>

#include <fstream>

#ifndef BLACKBENCH_BUILD_FLAGS
#define BLACKBENCH_BUILD_FLAGS "unknown"
#endif

namespace blackbench {

namespace {

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos && colon + 2 <= line.size()) return line.substr(colon + 2);
    }
  }
  return "unknown";
}

std::string os_name() {
  utsname u{};
  if (::uname(&u) != 0) return "unknown";
  return std::string(u.sysname) + " " + u.release + " " + u.machine;
}

std::string compiler() {
#if defined(__clang__)
  return std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  return std::string("gcc ") + __VERSION__;
#else
  return "unknown";
#endif
}

std::string hostname() {
  char buf[256] = {};
  if (::gethostname(buf, sizeof buf - 1) != 0 || buf[0] == '\0') return "unknown";
  return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> capture_environment() {
  std::string flags = BLACKBENCH_BUILD_FLAGS;
  if (flags.empty()) flags = "unknown";
  return {{"cpu", cpu_model()},
          {"os", os_name()},
          {"compiler", compiler()},
          {"build_flags", flags},
          {"hostname", hostname()}};
}

}  // namespace blackbench
