#ifndef RESIDUA_VERSION_HPP
#define RESIDUA_VERSION_HPP

namespace residua {

inline constexpr const char* version = "0.1.0";

}  // namespace residua

#endif  // RESIDUA_VERSION_HPP
