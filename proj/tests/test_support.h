#ifndef CAUSENET_TESTS_TEST_SUPPORT_H_
#define CAUSENET_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <random>
#include <string>

#include "causenet/text.h"
#include "causenet/util.h"

namespace causenet::testing {

inline std::filesystem::path SourcePath(const std::string& relative) {
  return std::filesystem::path(CAUSENET_SOURCE_DIR) / relative;
}

inline TextNormalizer DefaultNormalizer() {
  return TextNormalizer(LoadStopwords(SourcePath("data/stopwords.txt")));
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("causenet_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
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

}  // namespace causenet::testing

#endif  // CAUSENET_TESTS_TEST_SUPPORT_H_
