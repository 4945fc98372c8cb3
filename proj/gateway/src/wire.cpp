#include "alchemy/gateway/wire.hpp"

#include <string>

#include "alchemy/gateway/errors.hpp"

namespace alchemy::gateway {

namespace {

constexpr std::uint8_t kMagic[4] = {'A', 'M', 'F', '1'};

void put_u32(std::uint8_t* p, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> encode_frame(const ArgbMatrix& m, std::uint32_t frame_index) {
    std::vector<std::uint8_t> out(kFrameHeaderSize + m.cell_count() * 4);
    std::copy(std::begin(kMagic), std::end(kMagic), out.begin());
    put_u32(out.data() + 4, static_cast<std::uint32_t>(m.width()));
    put_u32(out.data() + 8, static_cast<std::uint32_t>(m.height()));
    put_u32(out.data() + 12, frame_index);

    const auto r = m.plane(Channel::R).cells();
    const auto g = m.plane(Channel::G).cells();
    const auto b = m.plane(Channel::B).cells();
    const auto a = m.plane(Channel::A).cells();
    std::uint8_t* p = out.data() + kFrameHeaderSize;
    for (std::size_t i = 0; i < m.cell_count(); ++i, p += 4) {
        p[0] = r[i];
        p[1] = g[i];
        p[2] = b[i];
        p[3] = a[i];
    }
    return out;
}

DecodedFrame decode_frame(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kFrameHeaderSize) throw WireFormatError("frame message shorter than its header");
    if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
        throw WireFormatError("frame message has the wrong magic");
    }
    const std::uint32_t w = get_u32(bytes.data() + 4);
    const std::uint32_t h = get_u32(bytes.data() + 8);
    if (w == 0 || h == 0) throw WireFormatError("frame message declares an empty frame");
    const std::uint64_t expected = kFrameHeaderSize + std::uint64_t{w} * h * 4;
    if (bytes.size() != expected) {
        throw WireFormatError("frame payload is " + std::to_string(bytes.size()) + " bytes, header implies " +
                              std::to_string(expected));
    }

    DecodedFrame out{get_u32(bytes.data() + 12), ArgbMatrix(static_cast<int>(w), static_cast<int>(h))};
    auto r = out.frame.plane(Channel::R).cells();
    auto g = out.frame.plane(Channel::G).cells();
    auto b = out.frame.plane(Channel::B).cells();
    auto a = out.frame.plane(Channel::A).cells();
    const std::uint8_t* p = bytes.data() + kFrameHeaderSize;
    for (std::size_t i = 0; i < out.frame.cell_count(); ++i, p += 4) {
        r[i] = p[0];
        g[i] = p[1];
        b[i] = p[2];
        a[i] = p[3];
    }
    return out;
}

}  // namespace alchemy::gateway
