#include "strengthlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace strengthlab {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STRENGTHLAB_THREADS")) {
    try {
      const unsigned long value = std::stoul(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace strengthlab
