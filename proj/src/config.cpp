#include "soficlab/config.hpp"

#include <cstdlib>

namespace soficlab {

std::size_t size_cap() {
  const char* env = std::getenv("SOFICLAB_SIZE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultSizeCap;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) {
    throw std::invalid_argument(std::string("SOFICLAB_SIZE_CAP must be a positive integer, got '") + env + "'");
  }
  return static_cast<std::size_t>(value);
}

SizeCapExceeded::SizeCapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
    : std::runtime_error("size cap exceeded: " + what + " needs dimension " + std::to_string(requested) +
                         " > cap " + std::to_string(cap) + " (raise SOFICLAB_SIZE_CAP)") {}

void enforce_size_cap(const std::string& what, std::size_t requested, std::size_t cap) {
  if (requested > cap) throw SizeCapExceeded(what, requested, cap);
}

}  // namespace soficlab
