#include "roughimg/parallel.hpp"

#include <cstdlib>
#include <string>

namespace roughimg {

int resolve_threads(int requested) {
  if (requested >= 1) return requested;
  if (const char* env = std::getenv("ROUGHIMG_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace roughimg
