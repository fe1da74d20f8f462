// Built-in countermodels and model pairs used by the claims.
#pragma once

#include <string>
#include <vector>

#include "altlab/kripke.hpp"

namespace altlab {

// Throws Error for unknown names.
PointedModel zoo(const std::string& name);
const std::vector<std::string>& zoo_names();

}  // namespace altlab
