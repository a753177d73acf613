#pragma once

#include <cmath>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include <unistd.h>

#include "kswap/instance.hpp"

namespace th {

inline kswap::Instance floats(std::vector<double> p, int m) {
  return kswap::instance_from_floats(m, p);
}

// Dyadic value at the instance grid; only for values exactly representable there.
inline kswap::Exact dy(const kswap::Instance& inst, double v) {
  return kswap::Exact(static_cast<kswap::int128>(std::ldexp(v, inst.scale_log2)));
}

inline kswap::Exact sum(const kswap::Instance& inst, std::initializer_list<int> jobs) {
  kswap::Exact s;
  for (const int j : jobs) s += inst.p(j);
  return s;
}

inline std::vector<kswap::Exact> exacts(const kswap::Instance& inst, std::initializer_list<double> vs) {
  std::vector<kswap::Exact> out;
  for (const double v : vs) out.push_back(dy(inst, v));
  return out;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("kswap_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace th
