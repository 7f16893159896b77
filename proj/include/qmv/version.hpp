#pragma once

namespace qmv {
inline constexpr const char* kVersion = "qmv 0.1.0";
}
