#pragma once

#include <filesystem>

#include "ci/common/bytes.hpp"

namespace ci {

Bytes read_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename, so readers never see a torn file.
void write_file_atomic(const std::filesystem::path& path, ByteView data);
void append_file(const std::filesystem::path& path, ByteView data);

}  // namespace ci
