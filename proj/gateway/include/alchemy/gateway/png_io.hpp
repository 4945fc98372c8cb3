#pragma once

#include <filesystem>
#include <utility>

#include "alchemy/matrix.hpp"

namespace alchemy::gateway {

/// 8-bit RGBA PNG. Alpha round-trips through the A plane.
ArgbMatrix read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ArgbMatrix& m);

/// Width and height from the header only.
std::pair<int, int> png_dimensions(const std::filesystem::path& path);

}  // namespace alchemy::gateway
