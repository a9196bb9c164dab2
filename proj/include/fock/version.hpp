#pragma once

namespace fock {

inline constexpr const char* kToolName = "fock-lab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace fock
