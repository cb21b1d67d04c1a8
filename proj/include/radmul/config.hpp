#pragma once

// Run configuration: algebra fragment, symbol, truncation, tolerances, seed.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "radmul/fock.hpp"
#include "radmul/freeprod_verify.hpp"
#include "radmul/symbol_hankel.hpp"

namespace radmul {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::shared_ptr<const AmalgamatedSystem> system;
  RadialSymbol symbol = RadialSymbol::delta0();
  VerifyOptions options;
  std::uint64_t seed = 0;
  nlohmann::json source;

  /// FNV-1a of the canonical JSON dump of the source configuration.
  [[nodiscard]] std::string digest() const;
  [[nodiscard]] std::size_t hankel_dim() const;
};

/// A complex number given as a JSON number or an [re, im] pair.
cplx parse_complex(const nlohmann::json& j);

std::shared_ptr<const AmalgamatedSystem> parse_algebra(const nlohmann::json& j);
RadialSymbol parse_symbol(const nlohmann::json& j);
nlohmann::json symbol_to_json(const RadialSymbol& phi);

/// Throws ConfigError on any malformed or invalid field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Preset algebra fragments: "DIH" (N = C, two Z/2 factors) and "MAT2"
/// (N = M_2, two Z/2 factors, one trivial and one acting by Ad(diag(1, -1))).
nlohmann::json preset_algebra(const std::string& name);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace radmul
