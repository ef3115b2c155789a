#include "run_config.hpp"

#include <cstdio>

namespace gp::cli {

using nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string version() { return GP_VERSION_STRING; }

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["seed"] = seed;
  j["dim"] = dim;
  j["element"] = element;
  j["alpha"] = alpha;
  j["rounds"] = rounds;
  j["cells"] = cells;
  j["policy"] = policy;
  j["fraction"] = fraction;
  j["max_marked"] = max_marked;
  j["input"] = input;
  j["output"] = output;
  j["extra"] = extra;
  j["tolerances"] = {{"kappa", tol.kappa}, {"identity", tol.identity}, {"decay", tol.decay}, {"monotone", tol.monotone}};
  return j;
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json().dump())));
  return buf;
}

ordered_json RunConfig::header() const {
  ordered_json j;
  j["tool"] = "gp";
  j["version"] = version();
  j["config_hash"] = hash();
  j["tolerances"] = to_json()["tolerances"];
  j["config"] = to_json();
  return j;
}

std::string RunConfig::tsv_header() const {
  std::string s;
  s += "# gp " + version() + "\n";
  s += "# config_hash " + hash() + "\n";
  s += "# tolerances " + to_json()["tolerances"].dump() + "\n";
  s += "# config " + to_json().dump() + "\n";
  return s;
}

} // namespace gp::cli
