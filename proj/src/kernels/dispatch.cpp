#include <cstdlib>
#include <string>

#include "tables.hpp"
#include "wps/errors.hpp"

namespace wps::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table* select_default() {
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) {
    return &avx2_table;
  }
#endif
#if defined(__aarch64__)
  return &neon_table;
#endif
  return &scalar_table;
}

const Table* select_by_name(const std::string& name) {
  if (name == "scalar") {
    return &table(Backend::scalar);
  }
  if (name == "avx2") {
    return &table(Backend::avx2);
  }
  if (name == "neon") {
    return &table(Backend::neon);
  }
  throw input_error("unknown kernel backend '" + name + "' (expected scalar, avx2 or neon)");
}

}  // namespace

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
    case Backend::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Backend b) {
  switch (b) {
    case Backend::scalar:
      return scalar_table;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (cpu_has_avx2()) {
        return avx2_table;
      }
#endif
      throw input_error("avx2 kernel backend is not available on this machine");
    case Backend::neon:
#if defined(__aarch64__)
      return neon_table;
#else
      throw input_error("neon kernel backend is not available on this machine");
#endif
  }
  throw input_error("unknown kernel backend");
}

const Table& active() {
  static const Table* chosen = [] {
    if (const char* env = std::getenv("WPS_KERNELS")) {
      return select_by_name(env);
    }
    return select_default();
  }();
  return *chosen;
}

}  // namespace wps::kernels
