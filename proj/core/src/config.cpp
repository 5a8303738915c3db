#include "necklab/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace necklab {

namespace {

using cplx = std::complex<double>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x))
      throw std::invalid_argument("trailing garbage");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(field, "not a real number: '" + v + "'");
  }
}

long parse_int(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing garbage");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(field, "not an integer: '" + v + "'");
  }
}

// "(re,im)" tokens or bare reals, whitespace separated, ascending degree
std::vector<cplx> parse_coeffs(const std::string& field, const std::string& v) {
  std::vector<cplx> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) {
    if (tok.front() == '(') {
      const auto comma = tok.find(',');
      if (comma == std::string::npos || tok.back() != ')')
        throw ConfigError(field, "malformed complex token '" + tok + "'");
      out.emplace_back(
          parse_real(field, tok.substr(1, comma - 1)),
          parse_real(field, tok.substr(comma + 1, tok.size() - comma - 2)));
    } else {
      out.emplace_back(parse_real(field, tok), 0.0);
    }
  }
  if (out.empty()) throw ConfigError(field, "empty coefficient list");
  return out;
}

struct RawBubble {
  std::map<std::string, std::string> kv;
};

}  // namespace

ExperimentConfig parse_config(std::istream& is) {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::vector<RawBubble> bubbles;
  std::string line, section;
  RawBubble* open_bubble = nullptr;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno),
                          "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section == "bubble") {
        bubbles.emplace_back();
        open_bubble = &bubbles.back();
      } else {
        open_bubble = nullptr;
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError(key, "key outside of any section");
    if (open_bubble)
      open_bubble->kv[key] = val;
    else
      sections[section][key] = val;
  }

  ExperimentConfig cfg;
  auto get = [&](const std::string& sec,
                 const std::string& key) -> const std::string* {
    auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };

  // required field first, so an empty config names it
  const std::string* kmax = get("sequence", "k_max");
  if (!kmax) throw ConfigError("sequence.k_max", "missing required field");
  const long k_max = parse_int("sequence.k_max", *kmax);
  long k_min = 1;
  if (const auto* v = get("sequence", "k_min"))
    k_min = parse_int("sequence.k_min", *v);
  if (k_min < 0 || k_max < k_min)
    throw ConfigError("sequence.k_min", "need 0 <= k_min <= k_max");
  cfg.setup.ks.clear();
  for (long k = k_min; k <= k_max; ++k)
    cfg.setup.ks.push_back(static_cast<int>(k));

  if (const auto* v = get("sequence", "body")) {
    std::istringstream bs(*v);
    if (!(bs >> cfg.setup.body[0] >> cfg.setup.body[1] >> cfg.setup.body[2]))
      throw ConfigError("sequence.body", "expected three reals");
  }
  if (const auto* v = get("sequence", "r"))
    cfg.setup.r = parse_real("sequence.r", *v);
  if (const auto* v = get("sequence", "delta"))
    cfg.setup.delta = parse_real("sequence.delta", *v);
  if (const auto* v = get("sequence", "inject_neck"))
    cfg.setup.inject_neck = parse_real("sequence.inject_neck", *v);
  if (!(cfg.setup.r > 0.0 && cfg.setup.r < 1.0))
    throw ConfigError("sequence.r", "need 0 < r < 1");
  if (!(cfg.setup.delta > 0.0 && cfg.setup.delta < 1.0))
    throw ConfigError("sequence.delta", "need 0 < delta < 1");

  if (const auto* v = get("grid", "central_n_r"))
    cfg.setup.central_n_r = static_cast<int>(parse_int("grid.central_n_r", *v));
  if (const auto* v = get("grid", "central_n_theta"))
    cfg.setup.central_n_theta =
        static_cast<int>(parse_int("grid.central_n_theta", *v));
  if (const auto* v = get("grid", "patch_nodes_per_decade"))
    cfg.setup.patch_nodes_per_decade =
        static_cast<int>(parse_int("grid.patch_nodes_per_decade", *v));
  if (const auto* v = get("grid", "patch_n_theta"))
    cfg.setup.patch_n_theta =
        static_cast<int>(parse_int("grid.patch_n_theta", *v));

  if (const auto* v = get("thresholds", "eps"))
    cfg.setup.eps = parse_real("thresholds.eps", *v);
  if (const auto* v = get("thresholds", "theta"))
    cfg.setup.theta = parse_real("thresholds.theta", *v);
  if (const auto* v = get("thresholds", "tol_ei"))
    cfg.setup.tol_ei = parse_real("thresholds.tol_ei", *v);
  if (!(cfg.setup.eps > 0.0))
    throw ConfigError("thresholds.eps", "must be positive");
  if (!(cfg.setup.theta > 0.0))
    throw ConfigError("thresholds.theta", "must be positive");
  if (!(cfg.setup.tol_ei > 0.0))
    throw ConfigError("thresholds.tol_ei", "must be positive");

  if (const auto* v = get("output", "dir")) cfg.out_dir = *v;
  if (const auto* v = get("output", "seed"))
    cfg.seed = static_cast<unsigned long>(parse_int("output.seed", *v));

  for (std::size_t b = 0; b < bubbles.size(); ++b) {
    const std::string path = "bubble[" + std::to_string(b) + "]";
    auto& kv = bubbles[b].kv;
    auto need = [&](const std::string& key) -> const std::string& {
      auto it = kv.find(key);
      if (it == kv.end())
        throw ConfigError(path + "." + key, "missing required field");
      return it->second;
    };
    std::vector<cplx> p = parse_coeffs(path + ".p", need("p"));
    std::vector<cplx> q = parse_coeffs(path + ".q", need("q"));
    BubbleSpec spec{RationalMap(std::move(p), std::move(q)), 0.0, 0.0, 1.0,
                    0.25};
    if (auto it = kv.find("cx"); it != kv.end())
      spec.cx = parse_real(path + ".cx", it->second);
    if (auto it = kv.find("cy"); it != kv.end())
      spec.cy = parse_real(path + ".cy", it->second);
    if (auto it = kv.find("t0"); it != kv.end())
      spec.t0 = parse_real(path + ".t0", it->second);
    if (auto it = kv.find("rate"); it != kv.end())
      spec.rate = parse_real(path + ".rate", it->second);
    if (!(spec.t0 > 0.0) || !(spec.rate > 0.0 && spec.rate < 1.0))
      throw ConfigError(path + ".rate", "need t0 > 0 and 0 < rate < 1");
    if (std::hypot(spec.cx, spec.cy) >= 1.0)
      throw ConfigError(path + ".cx", "center must lie inside B_1");
    cfg.setup.bubbles.push_back(std::move(spec));
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path, "cannot open config file");
  return parse_config(is);
}

}  // namespace necklab
