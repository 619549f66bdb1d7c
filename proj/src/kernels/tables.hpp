#pragma once

#include "wps/kernels/kernels.hpp"

// Backend tables, one per translation unit so each can carry its own
// target-specific compile flags.
namespace wps::kernels {

extern const Table scalar_table;

#if defined(__x86_64__) || defined(_M_X64)
extern const Table avx2_table;
#endif

#if defined(__aarch64__)
extern const Table neon_table;
#endif

}  // namespace wps::kernels
