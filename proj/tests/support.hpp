#pragma once

#include <optional>

#include "nfc/error.hpp"

namespace test {

/// Code of the nfc::Error thrown by f, or nullopt if it returned normally.
template <typename F>
std::optional<nfc::Errc> error_code(F&& f) {
  try {
    f();
  } catch (const nfc::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace test
