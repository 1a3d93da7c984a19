#include "rnls/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace rnls {

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::string all;
        for (const auto& v : violations) all += (all.empty() ? "" : "\n") + v;
        return all;
      }()),
      violations_(std::move(violations)) {}

std::vector<int> RunConfig::data_modes() const {
  if (!all_modes) return data.modes;
  std::vector<int> modes;
  for (int j = -band_radius; j <= band_radius; ++j) modes.push_back(j);
  return modes;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  return items;
}

template <typename T>
T parse_number(const std::string& text, const char* kind) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string("expected ") + kind + ", got '" + text + "'");
  }
  return value;
}

Real parse_real(const std::string& text) {
  const Real value = parse_number<Real>(text, "a real number");
  if (!std::isfinite(value)) throw std::invalid_argument("expected a finite number, got '" + text + "'");
  return value;
}

int parse_int(const std::string& text) { return parse_number<int>(text, "an integer"); }

std::uint64_t parse_u64(const std::string& text) {
  return parse_number<std::uint64_t>(text, "an unsigned 64-bit integer");
}

bool parse_bool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw std::invalid_argument("expected true or false, got '" + text + "'");
}

Vector2 parse_vector2(const std::string& text) {
  const auto items = split_list(text);
  if (items.size() != 2) throw std::invalid_argument("expected two comma-separated numbers, got '" + text + "'");
  return {parse_real(items[0]), parse_real(items[1])};
}

std::string show(bool b) { return b ? "true" : "false"; }
std::string show(const Vector2& v) { return format_real(v[0]) + ", " + format_real(v[1]); }

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define REAL_KEY(NAME, FIELD)                                                        \
  Key {                                                                              \
    NAME, [](RunConfig& c, const std::string& v) { c.FIELD = parse_real(v); },       \
        [](const RunConfig& c) { return format_real(c.FIELD); }                      \
  }
#define INT_KEY(NAME, FIELD)                                                         \
  Key {                                                                              \
    NAME, [](RunConfig& c, const std::string& v) { c.FIELD = parse_int(v); },        \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }                   \
  }
#define BOOL_KEY(NAME, FIELD)                                                        \
  Key {                                                                              \
    NAME, [](RunConfig& c, const std::string& v) { c.FIELD = parse_bool(v); },       \
        [](const RunConfig& c) { return show(c.FIELD); }                             \
  }
#define VEC_KEY(NAME, FIELD)                                                         \
  Key {                                                                              \
    NAME, [](RunConfig& c, const std::string& v) { c.FIELD = parse_vector2(v); },    \
        [](const RunConfig& c) { return show(c.FIELD); }                             \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      REAL_KEY("grid.L", half_width),
      INT_KEY("grid.N", grid_points),
      INT_KEY("band.J", band_radius),
      {"data.family", [](RunConfig& c, const std::string& v) { c.data.family = data_family_from(v); },
       [](const RunConfig& c) { return to_string(c.data.family); }},
      REAL_KEY("data.amplitude", data.amplitude),
      REAL_KEY("data.width", data.width),
      VEC_KEY("data.center", data.center),
      VEC_KEY("data.xi", data.xi),
      {"data.modes",
       [](RunConfig& c, const std::string& v) {
         c.all_modes = v == "all";
         c.data.modes.clear();
         if (c.all_modes) return;
         for (const auto& item : split_list(v)) c.data.modes.push_back(parse_int(item));
       },
       [](const RunConfig& c) {
         if (c.all_modes) return std::string("all");
         std::string out;
         for (int j : c.data.modes) out += (out.empty() ? "" : ", ") + std::to_string(j);
         return out;
       }},
      INT_KEY("data.bumps", data.bumps),
      REAL_KEY("data.spread", data.spread),
      REAL_KEY("data.max_frequency", data.max_frequency),
      REAL_KEY("stepper.dt", stepper.dt),
      REAL_KEY("stepper.T", stepper.horizon),
      BOOL_KEY("stepper.dealias", stepper.dealias),
      INT_KEY("stepper.snapshot_stride", stepper.snapshot_stride),
      BOOL_KEY("diagnostics.morawetz", diagnostics.morawetz),
      {"diagnostics.morawetz_cutoff",
       [](RunConfig& c, const std::string& v) {
         if (v == "none") {
           c.diagnostics.morawetz_cutoff.reset();
         } else {
           c.diagnostics.morawetz_cutoff = parse_int(v);
         }
       },
       [](const RunConfig& c) {
         return c.diagnostics.morawetz_cutoff ? std::to_string(*c.diagnostics.morawetz_cutoff)
                                              : std::string("none");
       }},
      BOOL_KEY("diagnostics.params", diagnostics.params),
      REAL_KEY("diagnostics.mass_fraction", diagnostics.mass_fraction),
      INT_KEY("scatter.windows", scatter.windows),
      REAL_KEY("scatter.threshold", scatter.threshold),
      REAL_KEY("scatter.onset", scatter.onset),
      INT_KEY("bilinear.i_high", bilinear.i_high),
      INT_KEY("bilinear.first_octave", bilinear.first_octave),
      INT_KEY("bilinear.last_octave", bilinear.last_octave),
      {"bilinear.p",
       [](RunConfig& c, const std::string& v) {
         c.bilinear.p = v == "inf" ? INFINITY : parse_real(v);
       },
       [](const RunConfig& c) {
         return std::isinf(c.bilinear.p) ? std::string("inf") : format_real(c.bilinear.p);
       }},
      REAL_KEY("bilinear.q", bilinear.q),
      REAL_KEY("bilinear.L", bilinear.half_width),
      INT_KEY("bilinear.N", bilinear.grid_points),
      REAL_KEY("bilinear.horizon", bilinear.horizon),
      INT_KEY("bilinear.J", bilinear.band_radius),
      INT_KEY("bilinear.angular_order", bilinear.angular_order),
      INT_KEY("bilinear.linear_samples", bilinear.linear_samples),
      INT_KEY("bilinear.geometric_samples", bilinear.geometric_samples),
      REAL_KEY("covariance.max_ratio", covariance_max_ratio),
      BOOL_KEY("output.snapshots", write_snapshots),
      {"output.dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; },
       [](const RunConfig& c) { return c.output_dir; }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
  };
  return table;
}

#undef REAL_KEY
#undef INT_KEY
#undef BOOL_KEY
#undef VEC_KEY

struct Violation {
  std::string message;
  std::vector<std::string> keys;
};

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<Violation> check(const RunConfig& c) {
  std::vector<Violation> out;
  auto fail = [&](std::string message, std::vector<std::string> keys) {
    out.push_back({std::move(message), std::move(keys)});
  };
  if (!(c.half_width > 0.0)) fail("grid.L must be positive", {"grid.L"});
  if (!power_of_two(c.grid_points) || c.grid_points < 8) {
    fail("grid.N must be a power of two >= 8, got " + std::to_string(c.grid_points), {"grid.N"});
  }
  if (c.band_radius < 0 || c.band_radius > ModeBand::kMaxRadius) {
    fail("band.J must lie in [0, " + std::to_string(ModeBand::kMaxRadius) + "]", {"band.J"});
  }
  if (!(c.data.width > 0.0)) fail("data.width must be positive", {"data.width"});
  if (!(c.data.amplitude >= 0.0)) fail("data.amplitude must be >= 0", {"data.amplitude"});
  if (c.data.bumps < 1) fail("data.bumps must be >= 1", {"data.bumps"});
  if (!(c.data.spread >= 0.0)) fail("data.spread must be >= 0", {"data.spread"});
  if (!(c.data.max_frequency >= 0.0)) fail("data.max_frequency must be >= 0", {"data.max_frequency"});
  if (!c.all_modes && c.data.family != DataFamily::kZero && c.data.modes.empty()) {
    fail("data.modes must list at least one mode", {"data.modes"});
  }
  for (int j : c.data.modes) {
    if (std::abs(j) > c.band_radius) {
      fail("data.modes places initial data in mode " + std::to_string(j) + " outside band.J = " +
               std::to_string(c.band_radius),
           {"data.modes", "band.J"});
    }
  }
  if (!(c.stepper.dt > 0.0)) fail("stepper.dt must be positive", {"stepper.dt"});
  if (!(c.stepper.horizon >= c.stepper.dt)) fail("stepper.T must be at least stepper.dt", {"stepper.T", "stepper.dt"});
  if (c.stepper.snapshot_stride < 1) fail("stepper.snapshot_stride must be >= 1", {"stepper.snapshot_stride"});
  if (!(c.diagnostics.mass_fraction > 0.0 && c.diagnostics.mass_fraction < 1.0)) {
    fail("diagnostics.mass_fraction must lie in (0, 1)", {"diagnostics.mass_fraction"});
  }
  if (c.scatter.windows < 1) fail("scatter.windows must be >= 1", {"scatter.windows"});
  if (!(c.scatter.threshold > 0.0 && c.scatter.threshold < 1.0)) {
    fail("scatter.threshold must lie in (0, 1)", {"scatter.threshold"});
  }
  if (!(c.covariance_max_ratio > 0.0)) fail("covariance.max_ratio must be positive", {"covariance.max_ratio"});
  try {
    c.bilinear.validate();
  } catch (const DomainError& e) {
    fail(e.what(), {"bilinear.p"});
  }
  if (out.empty()) {
    const Real needed = required_half_width(c);
    if (c.half_width < needed) {
      std::ostringstream msg;
      msg << "grid.L = " << format_real(c.half_width) << " is below the resolution heuristic "
          << "x_spread + 2 k_max T = " << format_real(needed) << " for stepper.T";
      fail(msg.str(), {"grid.L", "stepper.T"});
    }
  }
  return out;
}

} // namespace

Real required_half_width(const RunConfig& c) {
  if (c.data.family == DataFamily::kZero) return 0.0;
  // A Gaussian of width w keeps all but ~1e-8 of its mass within 4w, and of its
  // spectrum within 4/w.
  Real x_spread = 4.0 * c.data.width;
  Real k_max = 4.0 / c.data.width;
  if (c.data.family == DataFamily::kGaussian) {
    x_spread += c.data.center.norm();
    k_max += c.data.xi.norm();
  } else {
    x_spread += c.data.spread;
    // Random bumps may be as narrow as width / 2.
    k_max = 8.0 / c.data.width + c.data.max_frequency;
  }
  return x_spread + 2.0 * k_max * c.stepper.horizon;
}

std::vector<std::string> validate(const RunConfig& config) {
  std::vector<std::string> out;
  for (const auto& v : check(config)) out.push_back(v.message);
  return out;
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, const Key*> by_name;
  for (const auto& k : keys()) by_name[k.name] = &k;

  RunConfig config;
  std::vector<std::string> errors;
  std::map<std::string, int> line_of;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string content = trim(raw.substr(0, raw.find('#')));
    if (content.empty()) continue;
    const std::string where = "line " + std::to_string(line) + ": ";
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + "expected 'key = value', got '" + content + "'");
      continue;
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    const auto it = by_name.find(key);
    if (it == by_name.end()) {
      errors.push_back(where + "unknown key '" + key + "'");
      continue;
    }
    if (line_of.count(key)) {
      errors.push_back(where + "duplicate key '" + key + "' (first set on line " +
                       std::to_string(line_of[key]) + ")");
      continue;
    }
    line_of[key] = line;
    try {
      it->second->set(config, value);
    } catch (const std::exception& e) {
      errors.push_back(where + key + ": " + e.what());
    }
  }
  for (const auto& v : check(config)) {
    std::string where;
    for (const auto& key : v.keys) {
      const auto it = line_of.find(key);
      const std::string at = it == line_of.end() ? "default" : "line " + std::to_string(it->second);
      where += (where.empty() ? "" : ", ") + at + " (" + key + ")";
    }
    errors.push_back(where + ": " + v.message);
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string echo(const RunConfig& config) {
  std::string out;
  for (const auto& k : keys()) out += k.name + " = " + k.get(config) + "\n";
  return out;
}

} // namespace rnls
