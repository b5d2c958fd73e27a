#include "cantor2w/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cantor2w {

std::size_t thread_count() {
  if (const char* env = std::getenv("CANTOR2W_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace cantor2w
