#include "adpasmc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace adpasmc {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a finite number, got '" + s + "'");
  }
  return v;
}

long long parse_integer(const std::string& text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  return out;
}

Eigen::VectorXd parse_vector(const std::string& text, Eigen::Index n, bool allow_scalar) {
  const std::vector<double> v = parse_list(text);
  if (allow_scalar && v.size() == 1) return Eigen::VectorXd::Constant(n, v[0]);
  if (static_cast<Eigen::Index>(v.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " comma-separated values" +
                                (allow_scalar ? " or one scalar" : "") + ", got " +
                                std::to_string(v.size()));
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), n);
}

std::string format_vector(const Eigen::VectorXd& v, bool collapse) {
  if (collapse && v.size() > 0 && (v.array() == v(0)).all()) return format_double(v(0));
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v(i));
  }
  return out;
}

template <typename Cfg>
struct Entry {
  std::string key;
  int phase = 0;  // phase 1 entries are applied after derived defaults are rebuilt
  std::function<void(Cfg&, const std::string&)> set;
  std::function<std::string(const Cfg&)> get;
};

#define FIELD(expr) [](auto& c) -> auto& { return c.expr; }

template <typename Cfg, typename Ref>
Entry<Cfg> number(std::string key, Ref ref) {
  return {std::move(key), 0, [ref](Cfg& c, const std::string& v) { ref(c) = parse_double(v); },
          [ref](const Cfg& c) { return format_double(ref(c)); }};
}

template <typename Cfg, typename Ref>
Entry<Cfg> integer(std::string key, Ref ref) {
  return {std::move(key), 0,
          [ref](Cfg& c, const std::string& v) {
            using T = std::remove_reference_t<decltype(ref(c))>;
            const long long n = parse_integer(v);
            if (n < 0) throw std::invalid_argument("expected a non-negative integer");
            ref(c) = static_cast<T>(n);
          },
          [ref](const Cfg& c) { return std::to_string(ref(c)); }};
}

template <typename Cfg, typename Ref>
Entry<Cfg> text(std::string key, Ref ref) {
  return {std::move(key), 0, [ref](Cfg& c, const std::string& v) { ref(c) = trim(v); },
          [ref](const Cfg& c) { return ref(c); }};
}

template <typename Cfg, typename E, typename Ref>
Entry<Cfg> choice(std::string key, Ref ref, std::vector<std::pair<std::string, E>> options) {
  return {std::move(key), 0,
          [ref, options](Cfg& c, const std::string& v) {
            const std::string s = trim(v);
            std::string names;
            for (const auto& [name, value] : options) {
              if (name == s) {
                ref(c) = value;
                return;
              }
              names += (names.empty() ? "" : "|") + name;
            }
            throw std::invalid_argument("expected one of " + names + ", got '" + s + "'");
          },
          [ref, options](const Cfg& c) {
            for (const auto& [name, value] : options) {
              if (ref(c) == value) return name;
            }
            return std::string("?");
          }};
}

template <typename Cfg, typename Ref>
Entry<Cfg> vector(std::string key, Ref ref, Eigen::Index n, bool allow_scalar) {
  return {std::move(key), 0,
          [ref, n, allow_scalar](Cfg& c, const std::string& v) {
            ref(c) = parse_vector(v, n, allow_scalar);
          },
          [ref, allow_scalar](const Cfg& c) {
            return format_vector(Eigen::VectorXd(ref(c)), allow_scalar);
          }};
}

template <typename Cfg, typename Ref>
Entry<Cfg> diagonal(std::string key, Ref ref, Eigen::Index n) {
  return {std::move(key), 0,
          [ref, n](Cfg& c, const std::string& v) {
            ref(c) = parse_vector(v, n, true).asDiagonal();
          },
          [ref](const Cfg& c) { return format_vector(Eigen::VectorXd(ref(c).diagonal()), true); }};
}

template <typename Cfg, typename Ref>
Entry<Cfg> signal(std::string key, Ref ref) {
  return {std::move(key), 1, [ref](Cfg& c, const std::string& v) { ref(c) = Signal::parse(trim(v)); },
          [ref](const Cfg& c) { return ref(c).to_string(); }};
}

template <typename Cfg, typename Ref>
void add_attitude_smc(std::vector<Entry<Cfg>>& e, Ref base) {
  auto f = [base](auto member) {
    return [base, member](auto& c) -> auto& { return base(c).*member; };
  };
  const std::string s = "smc_attitude.";
  e.push_back(number<Cfg>(s + "k20", f(&AttitudeSmcParams::k20)));
  e.push_back(number<Cfg>(s + "kappa1", f(&AttitudeSmcParams::kappa1)));
  e.push_back(number<Cfg>(s + "kappa0", f(&AttitudeSmcParams::kappa0)));
  e.push_back(number<Cfg>(s + "l0", f(&AttitudeSmcParams::l0)));
  e.push_back(number<Cfg>(s + "al", f(&AttitudeSmcParams::al)));
  e.push_back(number<Cfg>(s + "eps", f(&AttitudeSmcParams::eps)));
  e.push_back(number<Cfg>(s + "lambda0", f(&AttitudeSmcParams::lambda0)));
  e.push_back(number<Cfg>(s + "r_bar", f(&AttitudeSmcParams::r_bar)));
  e.push_back(number<Cfg>(s + "e_bar", f(&AttitudeSmcParams::e_bar)));
  e.push_back(number<Cfg>(s + "r_m", f(&AttitudeSmcParams::r_m)));
  e.push_back(number<Cfg>(s + "tau_f", f(&AttitudeSmcParams::tau_f)));
  e.push_back(number<Cfg>(s + "k1_init", f(&AttitudeSmcParams::k1_init)));
  e.push_back(number<Cfg>(s + "l_floor", f(&AttitudeSmcParams::l_floor)));
  e.push_back(number<Cfg>(s + "s_deadzone", f(&AttitudeSmcParams::s_deadzone)));
  e.push_back(choice<Cfg, RateLaw>(s + "r_law", f(&AttitudeSmcParams::r_law),
                                   {{"rate", RateLaw::Rate}, {"clamp", RateLaw::Clamp}}));
}

template <typename Cfg, typename Ref>
void add_airspeed_smc(std::vector<Entry<Cfg>>& e, Ref base) {
  auto f = [base](auto member) {
    return [base, member](auto& c) -> auto& { return base(c).*member; };
  };
  const std::string s = "smc_airspeed.";
  e.push_back(number<Cfg>(s + "k1v", f(&AirspeedSmcParams::k1v)));
  e.push_back(number<Cfg>(s + "k2v", f(&AirspeedSmcParams::k2v)));
  e.push_back(number<Cfg>(s + "lv0", f(&AirspeedSmcParams::lv0)));
  e.push_back(number<Cfg>(s + "lv", f(&AirspeedSmcParams::lv)));
  e.push_back(number<Cfg>(s + "eps_v", f(&AirspeedSmcParams::eps_v)));
  e.push_back(number<Cfg>(s + "lambda_v0", f(&AirspeedSmcParams::lambda_v0)));
  e.push_back(number<Cfg>(s + "r_bar_v", f(&AirspeedSmcParams::r_bar_v)));
  e.push_back(number<Cfg>(s + "e_b", f(&AirspeedSmcParams::e_b)));
  e.push_back(number<Cfg>(s + "r_mv", f(&AirspeedSmcParams::r_mv)));
  e.push_back(number<Cfg>(s + "tau_f", f(&AirspeedSmcParams::tau_f)));
  e.push_back(number<Cfg>(s + "l_floor", f(&AirspeedSmcParams::l_floor)));
  e.push_back(number<Cfg>(s + "s_deadzone", f(&AirspeedSmcParams::s_deadzone)));
  e.push_back(choice<Cfg, RateLaw>(s + "r_law", f(&AirspeedSmcParams::r_law),
                                   {{"rate", RateLaw::Rate}, {"clamp", RateLaw::Clamp}}));
}

const std::vector<Entry<ScenarioConfig>>& scenario_registry() {
  using C = ScenarioConfig;
  static const std::vector<Entry<C>> reg = [] {
    std::vector<Entry<C>> e;
    e.push_back(text<C>("name", FIELD(name)));
    e.push_back(number<C>("duration", FIELD(duration)));
    e.push_back(number<C>("dt", FIELD(dt)));
    e.push_back(choice<C, Integrator>("integrator", FIELD(integrator),
                                      {{"euler", Integrator::Euler}, {"rk4", Integrator::Rk4}}));
    e.push_back(integer<C>("seed", FIELD(seed)));
    e.push_back(integer<C>("decimate", FIELD(decimate)));
    e.push_back(choice<C, AirspeedControllerKind>(
        "airspeed_controller", FIELD(airspeed_controller),
        {{"adp_asmc", AirspeedControllerKind::AdpAsmc},
         {"ftsm_gst", AirspeedControllerKind::FtsmGst}}));
    e.push_back(number<C>("thrust_limit", FIELD(thrust_limit)));

    e.push_back(number<C>("uav.mass", FIELD(uav.mass)));
    e.push_back(number<C>("uav.ixx", FIELD(uav.ixx)));
    e.push_back(number<C>("uav.iyy", FIELD(uav.iyy)));
    e.push_back(number<C>("uav.izz", FIELD(uav.izz)));
    e.push_back(number<C>("uav.ixz", FIELD(uav.ixz)));
    e.push_back(number<C>("uav.gravity", FIELD(uav.gravity)));
    e.push_back(number<C>("uav.drag_coeff", FIELD(uav.drag_coeff)));
    e.push_back(choice<C, EulerConvention>(
        "uav.euler_convention", FIELD(uav.euler_convention),
        {{"rotated", EulerConvention::Rotated}, {"standard", EulerConvention::Standard}}));
    e.push_back(choice<C, BetaConvention>(
        "uav.beta_convention", FIELD(uav.beta_convention),
        {{"axial_ratio", BetaConvention::AxialRatio}, {"standard", BetaConvention::Standard}}));
    e.push_back(choice<C, AeroModel>("uav.aero_model", FIELD(uav.aero_model),
                                     {{"none", AeroModel::None},
                                      {"drag", AeroModel::Drag},
                                      {"flow_aligned", AeroModel::FlowAligned}}));
    e.push_back(number<C>("uav.theta_margin", FIELD(uav.theta_margin)));
    e.push_back(number<C>("uav.aero_angle_margin", FIELD(uav.aero_angle_margin)));
    e.push_back(number<C>("uav.min_airspeed", FIELD(uav.min_airspeed)));

    e.push_back(vector<C>("initial.position", FIELD(initial.position), 3, false));
    e.push_back(vector<C>("initial.euler_deg", FIELD(initial.euler_deg), 3, false));
    e.push_back(vector<C>("initial.rates_deg_s", FIELD(initial.rates_deg_s), 3, false));
    e.push_back(number<C>("initial.airspeed", FIELD(initial.airspeed)));

    e.push_back(signal<C>("reference.phi", FIELD(reference.theta_deg[0])));
    e.push_back(signal<C>("reference.theta", FIELD(reference.theta_deg[1])));
    e.push_back(signal<C>("reference.psi", FIELD(reference.theta_deg[2])));
    e.push_back(signal<C>("reference.airspeed", FIELD(reference.airspeed)));

    Entry<C> preset{"disturbance.preset", 0,
                    [](C& c, const std::string& v) {
                      const std::string s = trim(v);
                      if (s != "benchmark" && s != "none") {
                        throw std::invalid_argument("expected one of benchmark|none, got '" + s + "'");
                      }
                      c.disturbance_preset = s;
                    },
                    [](const C& c) { return c.disturbance_preset; }};
    e.push_back(preset);
    e.push_back(signal<C>("disturbance.dm_x", FIELD(disturbance.d_m[0])));
    e.push_back(signal<C>("disturbance.dm_y", FIELD(disturbance.d_m[1])));
    e.push_back(signal<C>("disturbance.dm_z", FIELD(disturbance.d_m[2])));
    e.push_back(signal<C>("disturbance.du_x", FIELD(disturbance.d_u[0])));
    e.push_back(signal<C>("disturbance.du_y", FIELD(disturbance.d_u[1])));
    e.push_back(signal<C>("disturbance.du_z", FIELD(disturbance.d_u[2])));
    e.push_back(signal<C>("disturbance.dv", FIELD(disturbance.d_v)));

    add_attitude_smc(e, [](auto& c) -> auto& { return c.smc_attitude; });
    add_airspeed_smc(e, [](auto& c) -> auto& { return c.smc_airspeed; });

    e.push_back(number<C>("adp.beta_w", FIELD(adp.beta_w)));
    e.push_back(diagonal<C>("adp.q_e", FIELD(adp.q_e), 7));
    e.push_back(vector<C>("adp.r_u", FIELD(adp.r_u), 4, false));
    e.push_back(number<C>("adp.c0", FIELD(adp.c0)));
    e.push_back(number<C>("adp.a0", FIELD(adp.a0)));
    e.push_back(diagonal<C>("adp.gamma_a", FIELD(adp.gamma_a), kBasisSize));
    e.push_back(vector<C>("adp.gamma_b", FIELD(adp.gamma_b), kBasisSize, true));
    e.push_back(vector<C>("adp.psi_weights", FIELD(adp.psi_weights), 7, true));
    e.push_back(number<C>("adp.weight_init_max", FIELD(adp.weight_init_max)));

    e.push_back(number<C>("ftsm_gst.k_s", FIELD(ftsm_gst.k_s)));
    e.push_back(number<C>("ftsm_gst.gamma_f1", FIELD(ftsm_gst.gamma_f1)));
    e.push_back(number<C>("ftsm_gst.gamma_f2", FIELD(ftsm_gst.gamma_f2)));
    e.push_back(number<C>("ftsm_gst.k1f", FIELD(ftsm_gst.k1f)));
    e.push_back(number<C>("ftsm_gst.k2f", FIELD(ftsm_gst.k2f)));
    return e;
  }();
  return reg;
}

const std::vector<Entry<SisoDemoConfig>>& siso_registry() {
  using C = SisoDemoConfig;
  static const std::vector<Entry<C>> reg = [] {
    std::vector<Entry<C>> e;
    e.push_back(text<C>("name", FIELD(name)));
    e.push_back(number<C>("duration", FIELD(options.duration)));
    e.push_back(number<C>("dt", FIELD(options.dt)));
    e.push_back(number<C>("x0", FIELD(options.x0)));
    e.push_back(integer<C>("decimate", FIELD(decimate)));
    add_airspeed_smc(e, [](auto& c) -> auto& { return c.params; });
    return e;
  }();
  return reg;
}

#undef FIELD

template <typename Cfg>
void apply(Cfg& cfg, const std::vector<Entry<Cfg>>& reg, const std::vector<KeyValue>& entries,
           int phase) {
  for (const KeyValue& kv : entries) {
    const auto it = std::find_if(reg.begin(), reg.end(),
                                 [&](const Entry<Cfg>& e) { return e.key == kv.key; });
    if (it == reg.end()) {
      throw ConfigError(kv.origin + ": unknown key '" + kv.key + "'");
    }
    if (it->phase != phase) continue;
    try {
      it->set(cfg, kv.value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(kv.origin + ": " + kv.key + ": " + e.what());
    }
  }
}

/// Later entries (overrides) replace earlier ones with the same key.
std::vector<KeyValue> merge(const std::vector<KeyValue>& entries) {
  std::vector<KeyValue> out;
  for (const KeyValue& kv : entries) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const KeyValue& o) { return o.key == kv.key; });
    if (it == out.end()) out.push_back(kv);
    else *it = kv;
  }
  return out;
}

std::vector<KeyValue> collect(const std::string& path, const std::vector<std::string>& overrides) {
  std::vector<KeyValue> all;
  if (!path.empty()) all = read_kv_file(path);
  for (const std::string& o : overrides) all.push_back(parse_override(o));
  return merge(all);
}

}  // namespace

std::vector<KeyValue> parse_kv_text(std::string_view text, const std::string& source) {
  std::vector<KeyValue> out;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string origin = source + ":" + std::to_string(line_no);
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(origin + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ": expected 'key = value'");
    const std::string name = trim(line.substr(0, eq));
    if (name.empty()) throw ConfigError(origin + ": missing key before '='");
    const std::string key = section.empty() ? name : section + "." + name;
    if (!seen.insert(key).second) throw ConfigError(origin + ": duplicate key '" + key + "'");
    out.push_back({key, trim(line.substr(eq + 1)), origin});
  }
  return out;
}

std::vector<KeyValue> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_kv_text(buf.str(), path);
}

KeyValue parse_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("--set '" + std::string(assignment) + "': expected key=value");
  }
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("--set '" + std::string(assignment) + "': missing key");
  return {key, trim(assignment.substr(eq + 1)), "--set " + key};
}

ScenarioConfig build_scenario(const std::vector<KeyValue>& entries) {
  const auto& reg = scenario_registry();
  ScenarioConfig cfg;
  apply(cfg, reg, entries, 0);
  cfg.reference = default_reference(cfg.initial);
  cfg.disturbance =
      cfg.disturbance_preset == "none" ? DisturbanceProfile::none() : DisturbanceProfile::benchmark();
  apply(cfg, reg, entries, 1);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
  return build_scenario(collect(path, overrides));
}

KeyValueList describe(const ScenarioConfig& cfg) {
  KeyValueList out;
  for (const auto& e : scenario_registry()) out.emplace_back(e.key, e.get(cfg));
  return out;
}

std::vector<std::string> scenario_keys() {
  std::vector<std::string> keys;
  for (const auto& e : scenario_registry()) keys.push_back(e.key);
  return keys;
}

void SisoDemoConfig::validate() const {
  if (!(options.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(options.duration >= 0.0 && options.duration <= 30.0)) {
    throw std::invalid_argument("duration must lie in [0, 30]");
  }
  if (!std::isfinite(options.x0)) throw std::invalid_argument("x0 must be finite");
  if (decimate < 1) throw std::invalid_argument("decimate must be >= 1");
  params.validate();
}

SisoDemoConfig build_siso_demo(const std::vector<KeyValue>& entries) {
  SisoDemoConfig cfg;
  apply(cfg, siso_registry(), entries, 0);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

SisoDemoConfig load_siso_demo(const std::string& path, const std::vector<std::string>& overrides) {
  return build_siso_demo(collect(path, overrides));
}

KeyValueList describe(const SisoDemoConfig& cfg) {
  KeyValueList out;
  for (const auto& e : siso_registry()) out.emplace_back(e.key, e.get(cfg));
  return out;
}

}  // namespace adpasmc
