#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace slink::testing {

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("slink-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::filesystem::path source_dir() {
    return std::filesystem::path(SLINK_SOURCE_DIR);
}

inline std::filesystem::path data_dir() {
    return source_dir() / "data";
}

} // namespace slink::testing
