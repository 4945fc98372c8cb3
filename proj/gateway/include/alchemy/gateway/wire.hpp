#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alchemy/matrix.hpp"

namespace alchemy::gateway {

/// Binary frame message on WS /frames:
///   bytes 0-3   'A' 'M' 'F' '1'
///   bytes 4-15  u32 width, u32 height, u32 frame_index (little-endian)
///   bytes 16-   width * height * 4 bytes, RGBA, row-major
inline constexpr std::size_t kFrameHeaderSize = 16;

std::vector<std::uint8_t> encode_frame(const ArgbMatrix& m, std::uint32_t frame_index);

struct DecodedFrame {
    std::uint32_t frame_index = 0;
    ArgbMatrix frame;
};

/// Throws WireFormatError on a bad magic, short header or payload size mismatch.
DecodedFrame decode_frame(std::span<const std::uint8_t> bytes);

}  // namespace alchemy::gateway
