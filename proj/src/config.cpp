#include "deit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "deit/doppler.hpp"
#include "deit/error.hpp"
#include "deit/units.hpp"

namespace deit {

namespace {

enum class Kind { Number, Count, Flag, Choice, NumberOrAuto, List, Text };

struct KeySpec {
  const char* section;
  const char* key;
  Kind kind;
  std::vector<std::string> choices = {};
};

// Canonical order of the emitted document.
const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> keys = {
      {"fields", "coupling_rabi_MHz", Kind::Number},
      {"fields", "coupling_power_mW", Kind::Number},
      {"fields", "coupling_power_uW", Kind::Number},
      {"fields", "coupling_radius_mm", Kind::Number},
      {"fields", "coupling_alpha", Kind::Number},
      {"fields", "coupling_detuning_MHz", Kind::Number},
      {"fields", "signal_rabi_MHz", Kind::Number},
      {"fields", "signal_power_mW", Kind::Number},
      {"fields", "signal_power_uW", Kind::Number},
      {"fields", "signal_radius_mm", Kind::Number},
      {"fields", "signal_alpha", Kind::Number},
      {"fields", "signal_detuning_MHz", Kind::Number},
      {"fields", "probe_rabi_MHz", Kind::Number},
      {"fields", "probe_power_mW", Kind::Number},
      {"fields", "probe_power_uW", Kind::Number},
      {"fields", "probe_radius_mm", Kind::Number},
      {"fields", "probe_alpha", Kind::Number},
      {"fields", "relative_linewidth_MHz", Kind::Number},
      {"fields", "laser_mode", Kind::Choice, {"phase_locked", "independent"}},
      {"cell", "temperature_C", Kind::Number},
      {"cell", "density_cm3", Kind::Number},
      {"cell", "top_rate_Hz", Kind::Number},
      {"cell", "doppler_temperature_C", Kind::Number},
      {"cell", "cell_length_m", Kind::Number},
      {"cell", "optical_depth", Kind::NumberOrAuto},
      {"cell", "zeeman_aa_Hz", Kind::Number},
      {"cell", "zeeman_bb_Hz", Kind::Number},
      {"cell", "gamma_c_MHz", Kind::Number},
      {"model", "decay_mode", Kind::Choice, {"trace_conserving", "literal"}},
      {"model", "doppler", Kind::Flag},
      {"model", "quadrature_order", Kind::Count},
      {"model", "ablate_srs", Kind::Flag},
      {"grid", "start_MHz", Kind::Number},
      {"grid", "stop_MHz", Kind::Number},
      {"grid", "count", Kind::Count},
      {"grid", "reference", Kind::Choice, {"absolute", "signal"}},
      {"sweep", "parameter", Kind::Text},
      {"sweep", "start", Kind::Number},
      {"sweep", "stop", Kind::Number},
      {"sweep", "count", Kind::Count},
      {"sweep", "values", Kind::List},
      {"sweep", "output", Kind::Choice, {"gain", "populations", "spectrum"}},
      {"sweep", "series_parameter", Kind::Text},
      {"sweep", "series_values", Kind::List},
  };
  return keys;
}

const std::vector<std::string> kUnitSuffixes = {"MHz", "Hz", "kHz", "mW", "uW", "W", "mm", "m",
                                                "cm", "C", "K", "cm3", "m3", "s"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const KeySpec* lookup(const std::string& section, const std::string& key) {
  for (const auto& k : schema())
    if (k.section == section && k.key == key) return &k;
  return nullptr;
}

const KeySpec* lookup_any(const std::string& key) {
  for (const auto& k : schema())
    if (k.key == key) return &k;
  return nullptr;
}

// Split "coupling_power_mW" into ("coupling_power", "mW") when the tail is a unit.
std::pair<std::string, std::string> split_unit(const std::string& key) {
  const auto pos = key.rfind('_');
  if (pos == std::string::npos) return {key, ""};
  const std::string tail = key.substr(pos + 1);
  if (std::find(kUnitSuffixes.begin(), kUnitSuffixes.end(), tail) == kUnitSuffixes.end())
    return {key, ""};
  return {key.substr(0, pos), tail};
}

[[noreturn]] void reject_unknown(const std::string& section, const std::string& key, int line) {
  if (const KeySpec* other = lookup_any(key))
    throw ConfigError(line, key, std::string("belongs in [") + other->section + "], not [" + section + "]");
  // Same stem, different unit: point at the accepted spelling.
  const auto [stem, unit] = split_unit(key);
  std::vector<std::string> candidates;
  for (const auto& k : schema()) {
    const auto [kstem, kunit] = split_unit(k.key);
    if (kunit.empty()) continue;
    if (kstem == stem || (unit.empty() && kstem == key)) candidates.push_back(k.key);
  }
  if (!candidates.empty()) {
    std::string list;
    for (const auto& c : candidates) list += (list.empty() ? "" : " or ") + c;
    throw ConfigError(line, key, "unit suffix mismatch; expected " + list);
  }
  throw ConfigError(line, key, "unknown key");
}

double parse_number(const ConfigEntry& e) {
  const char* begin = e.value.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ConfigError(e.line, e.key, "expected a number, got '" + e.value + "'");
  return v;
}

int parse_count(const ConfigEntry& e) {
  const double v = parse_number(e);
  if (v != std::floor(v) || v < 1 || v > 1e7)
    throw ConfigError(e.line, e.key, "expected a positive integer, got '" + e.value + "'");
  return static_cast<int>(v);
}

bool parse_flag(const ConfigEntry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ConfigError(e.line, e.key, "expected true or false, got '" + e.value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void check_value(const KeySpec& spec, const ConfigEntry& e) {
  switch (spec.kind) {
    case Kind::Number: parse_number(e); break;
    case Kind::Count: parse_count(e); break;
    case Kind::Flag: parse_flag(e); break;
    case Kind::Choice:
      if (std::find(spec.choices.begin(), spec.choices.end(), e.value) == spec.choices.end()) {
        std::string list;
        for (const auto& c : spec.choices) list += (list.empty() ? "" : ", ") + c;
        throw ConfigError(e.line, e.key, "expected one of " + list + ", got '" + e.value + "'");
      }
      break;
    case Kind::NumberOrAuto:
      if (e.value != "auto") parse_number(e);
      break;
    case Kind::List:
      if (split_list(e.value).empty()) throw ConfigError(e.line, e.key, "empty list");
      break;
    case Kind::Text:
      if (e.value.empty()) throw ConfigError(e.line, e.key, "empty value");
      break;
  }
}

std::size_t canonical_rank(const ConfigEntry& e) {
  const auto& keys = schema();
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (keys[i].key == e.key && keys[i].section == e.section) return i;
  return keys.size();
}

class Resolver {
 public:
  explicit Resolver(const std::vector<ConfigEntry>& entries) {
    for (const auto& e : entries) by_key_[e.key] = &e;
  }

  const ConfigEntry* get(const std::string& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? nullptr : it->second;
  }
  bool has(const std::string& key) const { return get(key) != nullptr; }
  double number(const std::string& key, double fallback) const {
    const auto* e = get(key);
    return e ? parse_number(*e) : fallback;
  }

  // At most one of `keys`; error names the later line.
  const ConfigEntry* exclusive(const std::vector<std::string>& keys, const std::string& what) const {
    const ConfigEntry* first = nullptr;
    for (const auto& k : keys) {
      const auto* e = get(k);
      if (!e) continue;
      if (!first) {
        first = e;
        continue;
      }
      const ConfigEntry* later = e->line >= first->line ? e : first;
      const ConfigEntry* earlier = later == e ? first : e;
      throw ConfigError(later->line, later->key,
                        "over-specified " + what + ": conflicts with '" + earlier->key + "'" +
                            (earlier->line > 0 ? " on line " + std::to_string(earlier->line) : ""));
    }
    return first;
  }

 private:
  std::map<std::string, const ConfigEntry*> by_key_;
};

// Wrap domain errors raised by atom-config with the key that fed them.
template <typename F>
auto with_context(const ConfigEntry* e, const std::string& fallback_key, F&& fn) {
  try {
    return fn();
  } catch (const InvalidParameter& ex) {
    throw ConfigError(e ? e->line : 0, e ? e->key : fallback_key, ex.what());
  }
}

FieldInput resolve_field(const Resolver& r, const std::string& name, double default_alpha,
                         double gamma_c, std::vector<std::string>& missing) {
  FieldInput f;
  const auto* power = r.exclusive({name + "_power_mW", name + "_power_uW"}, name + " power");
  const auto* rabi = r.get(name + "_rabi_MHz");
  if (rabi && power) {
    const ConfigEntry* later = rabi->line >= power->line ? rabi : power;
    const ConfigEntry* earlier = later == rabi ? power : rabi;
    throw ConfigError(later->line, later->key,
                      "over-specified " + name + " field: give either a Rabi frequency or power + radius, not both ('" +
                          earlier->key + "')");
  }
  const auto* radius = r.get(name + "_radius_mm");
  const auto* alpha = r.get(name + "_alpha");
  f.detuning_mhz = r.number(name + "_detuning_MHz", 0.0);
  if (rabi) {
    for (const auto* extra : {radius, alpha})
      if (extra)
        throw ConfigError(extra->line, extra->key,
                          "only meaningful with a " + name + " power; conflicts with '" + rabi->key + "'");
    f.rabi_mhz = parse_number(*rabi);
    if (f.rabi_mhz < 0) throw ConfigError(rabi->line, rabi->key, "Rabi frequency must be non-negative");
    return f;
  }
  if (!power) {
    missing.push_back(name + "_rabi_MHz | " + name + "_power_mW + " + name + "_radius_mm");
    return f;
  }
  if (!radius) throw ConfigError(power->line, power->key, "needs " + name + "_radius_mm");
  f.from_power = true;
  f.power_mw = parse_number(*power);
  if (power->key.ends_with("_uW")) f.power_mw *= 1e-3;
  f.radius_mm = parse_number(*radius);
  f.alpha_defaulted = alpha == nullptr;
  f.alpha = alpha ? parse_number(*alpha) : default_alpha;
  f.rabi_mhz = with_context(power, name, [&] {
    return rabi_from_power(f.power_mw, f.radius_mm, f.alpha, gamma_c);
  });
  return f;
}

std::vector<double> sweep_values(const Resolver& r) {
  const auto* values = r.get("values");
  const auto* start = r.get("start");
  const auto* stop = r.get("stop");
  const auto* count = r.get("count");
  if (values) {
    for (const auto* e : {start, stop, count})
      if (e) throw ConfigError(e->line, e->key, "over-specified sweep grid: conflicts with 'values'");
    std::vector<double> out;
    for (const auto& item : split_list(values->value)) {
      ConfigEntry tmp = *values;
      tmp.value = item;
      out.push_back(parse_number(tmp));
    }
    return out;
  }
  if (!start || !stop || !count)
    throw ConfigError(0, "sweep", "needs either 'values' or all of start, stop, count");
  const double a = parse_number(*start), b = parse_number(*stop);
  const int n = parse_count(*count);
  if (n == 1) return {a};
  return linear_grid(a, b, n);
}

}  // namespace

std::vector<std::string> known_keys() {
  std::vector<std::string> out;
  for (const auto& k : schema()) out.emplace_back(k.key);
  return out;
}

std::vector<double> GridSpec::probe_grid(double delta_s_mhz) const {
  const double offset = reference == GridReference::Signal ? delta_s_mhz : 0.0;
  if (count == 1) return {start_mhz + offset};
  return linear_grid(start_mhz + offset, stop_mhz + offset, count);
}

std::optional<std::string> SimulationConfig::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return e.value;
  return std::nullopt;
}

bool SimulationConfig::operator==(const SimulationConfig& o) const {
  return entries == o.entries && coupling == o.coupling && signal == o.signal && probe == o.probe &&
         fields == o.fields && relax == o.relax && cell == o.cell && top_source == o.top_source &&
         doppler_width_mhz == o.doppler_width_mhz && optical_depth_auto == o.optical_depth_auto &&
         decay_mode == o.decay_mode && doppler == o.doppler && quadrature_order == o.quadrature_order &&
         ablate_srs == o.ablate_srs && laser_mode == o.laser_mode && grid == o.grid && sweep == o.sweep;
}

SimulationConfig resolve_config(std::vector<ConfigEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const ConfigEntry& a, const ConfigEntry& b) {
    return canonical_rank(a) < canonical_rank(b);
  });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].key == entries[i - 1].key) {
      const auto& later = entries[i].line >= entries[i - 1].line ? entries[i] : entries[i - 1];
      throw ConfigError(later.line, later.key, "duplicate key");
    }
  for (const auto& e : entries) {
    const KeySpec* spec = lookup(e.section, e.key);
    if (!spec) reject_unknown(e.section, e.key, e.line);
    check_value(*spec, e);
  }

  SimulationConfig c;
  c.entries = entries;
  const Resolver r(c.entries);
  std::vector<std::string> missing;

  const double gamma_c = r.number("gamma_c_MHz", units::kCesiumExcitedDecayMHz);
  c.coupling = resolve_field(r, "coupling", default_coupling_alpha(), gamma_c, missing);
  c.signal = resolve_field(r, "signal", default_signal_alpha(), gamma_c, missing);
  c.probe = resolve_field(r, "probe", default_probe_alpha(), gamma_c, missing);

  const auto* top = r.exclusive({"temperature_C", "density_cm3", "top_rate_Hz"}, "ToP-rate chain");
  if (!top) missing.push_back("temperature_C | density_cm3 | top_rate_Hz");

  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += "\n  " + m;
    throw ConfigError(0, "", "missing required keys:" + list);
  }

  if (top->key == "temperature_C" && r.has("doppler_temperature_C")) {
    const auto* d = r.get("doppler_temperature_C");
    throw ConfigError(d->line, d->key, "over-specified: the cell temperature already sets the Doppler temperature ('temperature_C')");
  }

  c.top_source = top->key;
  const double top_value = parse_number(*top);
  double density = 0.0, doppler_t = 0.0;
  with_context(top, top->key, [&] {
    if (top->key == "temperature_C") {
      density = density_from_temperature(top_value);
      doppler_t = top_value;
    } else {
      density = top->key == "density_cm3" ? top_value : density_from_top_rate(top_value);
      if (density < 0) throw InvalidParameter("must be non-negative");
      const auto* d = r.get("doppler_temperature_C");
      if (!d && !(density > 0))
        throw InvalidParameter("zero density has no vapour temperature; add doppler_temperature_C");
      doppler_t = d ? parse_number(*d) : temperature_from_density(density);
    }
    return 0;
  });
  const double top_hz = top_rate_from_density(density);

  c.relax = with_context(top, top->key, [&] {
    return RelaxationModel(gamma_c, top_hz, r.number("zeeman_aa_Hz", 20.0), r.number("zeeman_bb_Hz", 20.0));
  });

  c.cell.temperature_c = doppler_t;
  c.cell.density_cm3 = density;
  c.cell.cell_length_m = r.number("cell_length_m", 0.075);
  const auto* od = r.get("optical_depth");
  c.optical_depth_auto = !od || od->value == "auto";
  c.cell.optical_depth = with_context(od, "optical_depth", [&] {
    return c.optical_depth_auto ? calibrate_od(density, c.cell.cell_length_m) : parse_number(*od);
  });
  c.warnings = with_context(top, top->key, [&] { return c.cell.validate(); });

  const auto* linewidth = r.exclusive({"relative_linewidth_MHz", "laser_mode"}, "signal/probe linewidth");
  double rel = 0.0;
  if (linewidth && linewidth->key == "laser_mode") {
    c.laser_mode = linewidth->value == "independent" ? LaserMode::Independent : LaserMode::PhaseLocked;
    rel = c.laser_mode == LaserMode::Independent ? kIndependentLaserLinewidthMHz : 0.0;
  } else if (linewidth) {
    rel = parse_number(*linewidth);
    if (rel < 0) throw ConfigError(linewidth->line, linewidth->key, "must be non-negative");
    c.laser_mode = rel > 0 ? LaserMode::Independent : LaserMode::PhaseLocked;
  }

  c.fields.coupling = {c.coupling.rabi_mhz, c.coupling.detuning_mhz};
  c.fields.signal = {c.signal.rabi_mhz, c.signal.detuning_mhz};
  c.fields.probe = {c.probe.rabi_mhz, 0.0};
  c.fields.wavenumber = units::kCesiumD1Wavenumber;
  c.fields.relative_linewidth_mhz = rel;

  if (const auto* d = r.get("decay_mode"))
    c.decay_mode = d->value == "literal" ? DecayMode::Literal : DecayMode::TraceConserving;
  if (const auto* d = r.get("doppler")) c.doppler = parse_flag(*d);
  if (const auto* q = r.get("quadrature_order")) {
    c.quadrature_order = parse_count(*q);
    if (c.quadrature_order < 8) throw ConfigError(q->line, q->key, "quadrature order must be at least 8");
  }
  if (const auto* a = r.get("ablate_srs")) c.ablate_srs = parse_flag(*a);
  c.doppler_width_mhz = c.doppler ? doppler_width(doppler_t, c.fields.wavenumber) : 0.0;

  c.grid.start_mhz = r.number("start_MHz", c.grid.start_mhz);
  c.grid.stop_mhz = r.number("stop_MHz", c.grid.stop_mhz);
  if (const auto* n = r.get("count")) {
    if (n->section == "grid") c.grid.count = parse_count(*n);
  }
  if (const auto* g = r.get("reference"))
    c.grid.reference = g->value == "signal" ? GridReference::Signal : GridReference::Absolute;
  if (c.grid.count > 1 && !(c.grid.stop_mhz > c.grid.start_mhz)) {
    const auto* s = r.get("stop_MHz");
    throw ConfigError(s ? s->line : 0, "stop_MHz", "grid stop must exceed start");
  }
  return c;
}

namespace {

// The sweep and grid sections both use `count`; keep them apart by section.
std::vector<ConfigEntry> section_entries(const std::vector<ConfigEntry>& all, const std::string& section) {
  std::vector<ConfigEntry> out;
  for (const auto& e : all)
    if (e.section == section) out.push_back(e);
  return out;
}

}  // namespace

SimulationConfig parse_config(const std::string& text) {
  std::vector<ConfigEntry> entries;
  std::set<std::string> seen_sections;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  const std::set<std::string> sections = {"fields", "cell", "model", "grid", "sweep"};
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "", "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!sections.contains(section)) throw ConfigError(line, section, "unknown section");
      if (!seen_sections.insert(section).second) throw ConfigError(line, section, "section repeated");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value'");
    ConfigEntry e{section, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError(line, "", "missing key");
    if (section.empty()) throw ConfigError(line, e.key, "key outside any [section]");
    if (e.value.empty()) throw ConfigError(line, e.key, "missing value");
    entries.push_back(std::move(e));
  }

  // `count` appears in both [grid] and [sweep]; resolve the sweep separately.
  std::vector<ConfigEntry> sweep = section_entries(entries, "sweep");
  std::vector<ConfigEntry> rest;
  for (auto& e : entries)
    if (e.section != "sweep") rest.push_back(e);

  SimulationConfig c = resolve_config(rest);
  if (!sweep.empty()) {
    std::stable_sort(sweep.begin(), sweep.end(), [](const ConfigEntry& a, const ConfigEntry& b) {
      return canonical_rank(a) < canonical_rank(b);
    });
    std::set<std::string> keys;
    for (const auto& e : sweep) {
      const KeySpec* spec = lookup("sweep", e.key);
      if (!spec) reject_unknown("sweep", e.key, e.line);
      if (!keys.insert(e.key).second) throw ConfigError(e.line, e.key, "duplicate key");
      check_value(*spec, e);
    }
    const Resolver r(sweep);
    SweepSpec spec;
    const auto* p = r.get("parameter");
    if (!p) throw ConfigError(0, "parameter", "[sweep] needs a parameter");
    const KeySpec* target = lookup_any(p->value);
    if (!target || std::string(target->section) == "sweep" || std::string(target->section) == "grid")
      throw ConfigError(p->line, p->key, "'" + p->value + "' is not a configuration field");
    if (target->kind != Kind::Number)
      throw ConfigError(p->line, p->key, "'" + p->value + "' is not numeric");
    spec.parameter = p->value;
    spec.values = sweep_values(r);
    if (const auto* o = r.get("output"))
      spec.output = o->value == "populations" ? SweepOutput::Populations
                    : o->value == "spectrum"  ? SweepOutput::Spectrum
                                              : SweepOutput::Gain;
    const auto* sp = r.get("series_parameter");
    const auto* sv = r.get("series_values");
    if ((sp == nullptr) != (sv == nullptr))
      throw ConfigError((sp ? sp : sv)->line, (sp ? sp : sv)->key,
                        "series_parameter and series_values go together");
    if (sp) {
      const KeySpec* st = lookup_any(sp->value);
      if (!st || std::string(st->section) == "sweep" || std::string(st->section) == "grid")
        throw ConfigError(sp->line, sp->key, "'" + sp->value + "' is not a configuration field");
      spec.series_parameter = sp->value;
      spec.series_values = split_list(sv->value);
    }
    // Every point must resolve; catch bad combinations before any solve.
    for (const auto& series : spec.series_values.empty() ? std::vector<std::string>{""} : spec.series_values) {
      std::vector<std::pair<std::string, std::string>> ov;
      if (!series.empty()) ov.emplace_back(spec.series_parameter, series);
      ov.emplace_back(spec.parameter, format_exact(spec.values.front()));
      try {
        with_overrides(c, ov);
      } catch (const ConfigError& ex) {
        throw ConfigError(p->line, p->key, std::string("sweep point does not resolve: ") + ex.what());
      }
    }
    c.entries.insert(c.entries.end(), sweep.begin(), sweep.end());
    c.sweep = spec;
  }
  return c;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_exact(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string emit_config(const SimulationConfig& config) {
  std::string out;
  std::string section;
  for (const auto& e : config.entries) {
    if (e.section != section) {
      if (!section.empty()) out += "\n";
      section = e.section;
      out += "[" + section + "]\n";
    }
    out += e.key + " = " + e.value + "\n";
  }
  return out;
}

SimulationConfig with_overrides(const SimulationConfig& config,
                                const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::vector<ConfigEntry> entries = config.entries;
  for (const auto& [key, value] : overrides) {
    const KeySpec* spec = lookup_any(key);
    if (!spec || std::string(spec->section) == "sweep") throw ConfigError(0, key, "unknown key");
    auto it = std::find_if(entries.begin(), entries.end(), [&](const ConfigEntry& e) { return e.key == key; });
    if (it != entries.end()) {
      it->value = value;
    } else {
      entries.push_back({spec->section, key, value, 0});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const ConfigEntry& a, const ConfigEntry& b) {
    return canonical_rank(a) < canonical_rank(b);
  });
  SimulationConfig tmp;
  tmp.entries = std::move(entries);
  return parse_config(emit_config(tmp));
}

}  // namespace deit
