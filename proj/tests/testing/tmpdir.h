// tests/testing/tmpdir.h

#ifndef CSTK_TESTS_TESTING_TMPDIR_H_
#define CSTK_TESTS_TESTING_TMPDIR_H_

#include <atomic>
#include <filesystem>
#include <string>

namespace cstk::testing {

// Self-cleaning unique temp directory for test artifacts.
class TmpDir {
 public:
  TmpDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("cstk_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TmpDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TmpDir(const TmpDir&) = delete;
  TmpDir& operator=(const TmpDir&) = delete;

  std::string Path(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace cstk::testing

#endif  // CSTK_TESTS_TESTING_TMPDIR_H_
