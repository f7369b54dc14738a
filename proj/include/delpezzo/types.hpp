#pragma once

#include <cstdint>

namespace delpezzo {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

}  // namespace delpezzo
