#include "masspack/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace masspack {

std::size_t thread_count() {
  if (const char* env = std::getenv("MASSPACK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
}

}  // namespace masspack
