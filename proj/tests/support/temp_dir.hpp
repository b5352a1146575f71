// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_TESTS_TEMP_DIR_HPP
#define SECRISK_TESTS_TEMP_DIR_HPP

#include <filesystem>
#include <random>
#include <string>

namespace secrisk::testing {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("secrisk-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace secrisk::testing

#endif  // SECRISK_TESTS_TEMP_DIR_HPP
