// The reproducible claims behind verify-paper and the acceptance binary.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "altlab/kripke.hpp"

namespace altlab {

struct ClaimContext {
  std::function<PointedModel(const std::string&)> zoo;  // defaults to the built-in zoo
  std::uint64_t seed = 0;
  bool timing = true;  // false zeroes elapsed_ms for byte-stable output

  ClaimContext();
};

struct ClaimResult {
  std::string claim;
  std::string status;  // pass, fail or skip
  nlohmann::json details;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;

  nlohmann::json to_json() const;
};

struct Claim {
  std::string id;
  std::string summary;
  std::function<ClaimResult(const ClaimContext&)> run;
};

// Sorted by id.
const std::vector<Claim>& claims();
const Claim& find_claim(const std::string& id);
std::vector<ClaimResult> run_claims(const ClaimContext& ctx, const std::optional<std::string>& only = std::nullopt);

}  // namespace altlab
