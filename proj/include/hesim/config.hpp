/*
 * Copyright 2026 The hesim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Run configuration: a flat key-value text file (TOML-compatible subset:
// `key = value` lines, `#` comments, optional quotes) plus JSON round-trip
// for manifests. Command-line flags override file values.

#ifndef HESIM_CONFIG_HPP
#define HESIM_CONFIG_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hesim/ckks.hpp"
#include "hesim/secure_array.hpp"
#include "hesim/solvers.hpp"

namespace hesim::cli {

struct RunConfig {
  std::string scheme = "lax_wendroff";  // upwind | lax_wendroff
  int dim = 1;
  u32 nx = 64;
  u32 ny = 64;
  double a_x = 1.0;
  double a_y = 1.0;
  double cfl = 0.5;
  double t_end = 1.0;
  std::string backend = "exact";  // exact | encrypted
  double eps_boot = 1e-6;
  int lmax = 33;
  int lrefresh = 25;
  u32 ring_dim = u32{1} << 13;
  int scale_bits = 40;
  u64 seed = 1;
  std::string refresh_policy = "standard";  // standard | iterative

  bool operator==(const RunConfig&) const = default;

  pde::Scheme scheme_enum() const {
    if (scheme == "upwind") return pde::Scheme::Upwind;
    if (scheme == "lax_wendroff") return pde::Scheme::LaxWendroff;
    throw ConfigError("unknown scheme: " + scheme);
  }

  ckks::RefreshPolicy policy_enum() const {
    if (refresh_policy == "standard") return ckks::RefreshPolicy::Standard;
    if (refresh_policy == "iterative") return ckks::RefreshPolicy::Iterative;
    throw ConfigError("unknown refresh_policy: " + refresh_policy);
  }

  void validate() const {
    (void)scheme_enum();
    (void)policy_enum();
    if (backend != "exact" && backend != "encrypted") {
      throw ConfigError("backend must be exact or encrypted");
    }
    if (dim != 1 && dim != 2) throw ConfigError("dim must be 1 or 2");
    if (lrefresh <= 0 || lrefresh > lmax) {
      throw ConfigError("lrefresh must satisfy 0 < lrefresh <= lmax");
    }
    if (eps_boot < 0) throw ConfigError("eps_boot must be nonnegative");
  }

  pde::GridSpec grid() const { return pde::GridSpec{dim, nx, ny}; }

  pde::AdvectionConfig advection() const {
    pde::AdvectionConfig cfg;
    cfg.a_x = a_x;
    cfg.a_y = a_y;
    cfg.cfl = cfl;
    cfg.t_end = t_end;
    cfg.scheme = scheme_enum();
    return cfg;
  }

  /// Builds the run backend. Encrypted backends get a context sized so the
  /// batch matches the packed data, fresh keys, and an empty rotation-key set
  /// (run_simulation fills it during setup).
  secure::Backend make_backend() const {
    validate();
    if (backend == "exact") {
      return secure::Backend::exact(lmax, lrefresh);
    }
    const u32 packed = dim == 1 ? nx : nx * ny;
    ckks::ContextParams params;
    params.ring_dim = ring_dim;
    params.batch_size = static_cast<u32>(next_power_of_two(packed));
    params.max_level = lmax;
    params.refresh_level = lrefresh;
    params.scale_bits = scale_bits;
    auto ctx = ckks::make_context(params);
    Rng key_rng(seed);
    auto keys = std::make_shared<ckks::KeyBundle>(ckks::keygen(*ctx, key_rng));
    auto rot = std::make_shared<ckks::RotKeySet>();
    return secure::Backend::encrypted(std::move(ctx), std::move(keys),
                                      std::move(rot), seed + 1, eps_boot,
                                      policy_enum());
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

inline std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !(in >> std::ws).eof()) {
    throw ConfigError("bad value for " + key + ": " + value);
  }
  return out;
}

}  // namespace detail

/// Parses the flat key-value format. Unknown keys are rejected so typos
/// surface immediately.
inline RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value, got: " + line);
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::unquote(detail::trim(line.substr(eq + 1)));
    if (key == "scheme") cfg.scheme = value;
    else if (key == "dim") cfg.dim = detail::parse_number<int>(key, value);
    else if (key == "nx") cfg.nx = detail::parse_number<u32>(key, value);
    else if (key == "ny") cfg.ny = detail::parse_number<u32>(key, value);
    else if (key == "a_x") cfg.a_x = detail::parse_number<double>(key, value);
    else if (key == "a_y") cfg.a_y = detail::parse_number<double>(key, value);
    else if (key == "cfl") cfg.cfl = detail::parse_number<double>(key, value);
    else if (key == "t_end") cfg.t_end = detail::parse_number<double>(key, value);
    else if (key == "backend") cfg.backend = value;
    else if (key == "eps_boot") cfg.eps_boot = detail::parse_number<double>(key, value);
    else if (key == "lmax") cfg.lmax = detail::parse_number<int>(key, value);
    else if (key == "lrefresh") cfg.lrefresh = detail::parse_number<int>(key, value);
    else if (key == "ring_dim") cfg.ring_dim = detail::parse_number<u32>(key, value);
    else if (key == "scale_bits") cfg.scale_bits = detail::parse_number<int>(key, value);
    else if (key == "seed") cfg.seed = detail::parse_number<u64>(key, value);
    else if (key == "refresh_policy") cfg.refresh_policy = value;
    else throw ConfigError("unknown config key: " + key);
  }
  return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

inline nlohmann::json to_json(const RunConfig& cfg) {
  return nlohmann::json{
      {"scheme", cfg.scheme},       {"dim", cfg.dim},
      {"nx", cfg.nx},               {"ny", cfg.ny},
      {"a_x", cfg.a_x},             {"a_y", cfg.a_y},
      {"cfl", cfg.cfl},             {"t_end", cfg.t_end},
      {"backend", cfg.backend},     {"eps_boot", cfg.eps_boot},
      {"lmax", cfg.lmax},           {"lrefresh", cfg.lrefresh},
      {"ring_dim", cfg.ring_dim},   {"scale_bits", cfg.scale_bits},
      {"seed", cfg.seed},           {"refresh_policy", cfg.refresh_policy},
  };
}

inline RunConfig from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.scheme = j.at("scheme").get<std::string>();
  cfg.dim = j.at("dim").get<int>();
  cfg.nx = j.at("nx").get<u32>();
  cfg.ny = j.at("ny").get<u32>();
  cfg.a_x = j.at("a_x").get<double>();
  cfg.a_y = j.at("a_y").get<double>();
  cfg.cfl = j.at("cfl").get<double>();
  cfg.t_end = j.at("t_end").get<double>();
  cfg.backend = j.at("backend").get<std::string>();
  cfg.eps_boot = j.at("eps_boot").get<double>();
  cfg.lmax = j.at("lmax").get<int>();
  cfg.lrefresh = j.at("lrefresh").get<int>();
  cfg.ring_dim = j.at("ring_dim").get<u32>();
  cfg.scale_bits = j.at("scale_bits").get<int>();
  cfg.seed = j.at("seed").get<u64>();
  cfg.refresh_policy = j.at("refresh_policy").get<std::string>();
  return cfg;
}

}  // namespace hesim::cli

#endif  // HESIM_CONFIG_HPP
