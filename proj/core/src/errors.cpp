#include "heraldkit/errors.hpp"

namespace heraldkit {

TruncationError::TruncationError(std::size_t required_n_max, std::size_t cap)
    : std::runtime_error("truncation cap " + std::to_string(cap) +
                         " exceeded: tail bound requires N_max = " +
                         std::to_string(required_n_max)),
      required_n_max_(required_n_max),
      cap_(cap) {}

}  // namespace heraldkit
