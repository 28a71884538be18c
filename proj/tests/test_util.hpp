#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

// Shared plumbing for the test binaries: fixture lookup (BALSCHED_FIXTURES is
// set by the test harness) and self-cleaning temp files.

namespace testutil {

inline std::filesystem::path fixture(const std::string& name) {
    const char* dir = std::getenv("BALSCHED_FIXTURES");
    if (!dir) throw std::runtime_error("BALSCHED_FIXTURES is not set");
    return std::filesystem::path(dir) / name;
}

class TempDir {
  public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path_ = base / ("balsched_test_" + std::to_string(rd()) +
                        std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::filesystem::path write(const std::string& name,
                                const std::string& content) const {
        const auto file = path_ / name;
        std::ofstream out(file);
        out << content;
        return file;
    }

  private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace testutil
