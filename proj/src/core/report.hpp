#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace circw {

// Machine-readable verdict for one replicated claim.
struct ClaimReport {
  std::string claim_id;
  std::string statement;
  bool pass = false;
  std::vector<std::string> witnesses;  // violations, or extremal words on pass
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json stats = nlohmann::json::object();

  nlohmann::json to_json() const {
    return nlohmann::json{{"claim", claim_id},
                          {"statement", statement},
                          {"verdict", pass ? "pass" : "fail"},
                          {"witnesses", witnesses},
                          {"parameters", parameters},
                          {"stats", stats}};
  }
};

}  // namespace circw
