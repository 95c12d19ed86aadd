#pragma once

#include <stdexcept>
#include <string>

namespace bpo {

// violated feasibility (box or budget), as opposed to malformed input
struct InfeasibleError : std::invalid_argument {
  explicit InfeasibleError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace bpo
