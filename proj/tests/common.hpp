#pragma once

#include "tenfact/builders.hpp"
#include "tenfact/category.hpp"
#include "tenfact/groups.hpp"
#include "tenfact/io.hpp"

#include <algorithm>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(TENFACT_DATA_DIR) / name;
}

inline std::vector<std::string> shipped_category_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(TENFACT_DATA_DIR)) {
    const std::string name = e.path().filename().string();
    if (name.ends_with(".cat.json")) out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> shipped_group_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(TENFACT_DATA_DIR)) {
    const std::string name = e.path().filename().string();
    if (name.ends_with(".grp.json")) out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Builder outputs used across suites: small groups, Rep(Z/p) in
// characteristic p, Taft-like data and the Fibonacci ring.
inline std::vector<std::pair<std::string, tenfact::CategoryData>> small_builder_zoo() {
  using namespace tenfact;
  std::vector<std::pair<std::string, CategoryData>> out;
  out.emplace_back("vec_z1", vec_of_group(cyclic_group(1)));
  out.emplace_back("vec_z2", vec_of_group(cyclic_group(2)));
  out.emplace_back("vec_z3", vec_of_group(cyclic_group(3)));
  out.emplace_back("vec_z4", vec_of_group(cyclic_group(4)));
  out.emplace_back("vec_s3", vec_of_group(symmetric_group(3)));
  out.emplace_back("vec_z2xz2", vec_of_group(direct_product(cyclic_group(2), cyclic_group(2))));
  for (std::size_t p : {2, 3, 5}) out.emplace_back("rep_z" + std::to_string(p), rep_zp_char_p(p));
  for (std::size_t n = 2; n <= 4; ++n) out.emplace_back("taft" + std::to_string(n), taft_like(n));
  out.emplace_back("fib", fibonacci());
  return out;
}

}  // namespace testing_support
