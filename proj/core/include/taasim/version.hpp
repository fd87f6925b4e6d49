// version.hpp — engine identity, embedded in run manifests.
#pragma once

namespace taasim {

inline constexpr const char* kEngineName = "taasim";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace taasim
