#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace soficlab {

inline constexpr std::size_t kDefaultSizeCap = 4096;

/// Largest matrix dimension the tensor and amplification constructions will
/// build. SOFICLAB_SIZE_CAP overrides the default of 4096.
std::size_t size_cap();

class SizeCapExceeded : public std::runtime_error {
 public:
  SizeCapExceeded(const std::string& what, std::size_t requested, std::size_t cap);
};

/// Throws SizeCapExceeded when requested > cap.
void enforce_size_cap(const std::string& what, std::size_t requested, std::size_t cap = size_cap());

inline constexpr const char* kVersion = "soficlab 0.1.0";

}  // namespace soficlab
