#pragma once

// Versioned little-endian binary container for a trained network. The byte
// layout is documented in docs/state_format.md.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "nfc/network.hpp"

namespace nfc {

inline constexpr std::uint32_t kStateFormatVersion = 1;

std::vector<std::byte> serialize(const Network& net);
/// Throws MalformedPayload or VersionMismatch.
Network deserialize(std::span<const std::byte> bytes);

void save_state(const std::filesystem::path& path, const Network& net);
Network load_state(const std::filesystem::path& path);

}  // namespace nfc
