#include "specpert/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "specpert/errors.hpp"

namespace specpert {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

KeyValues KeyValues::from_string(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SimError(Err::BadConfig,
                     "config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw SimError(Err::BadConfig, "config: empty key");
    kv.values_[key] = value;
  }
  return kv;
}

KeyValues KeyValues::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SimError(Err::IoError, "config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

std::string KeyValues::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str())
    throw SimError(Err::BadConfig, "config: " + key + " is not a number");
  return v;
}

int KeyValues::get_int(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return static_cast<int>(std::strtol(it->second.c_str(), nullptr, 10));
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw SimError(Err::BadConfig, "config: " + key + " is not a boolean");
}

std::uint64_t KeyValues::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return std::strtoull(it->second.c_str(), nullptr, 10);
}

std::vector<double> KeyValues::get_double_list(const std::string& key) const {
  std::vector<double> out;
  auto it = values_.find(key);
  if (it == values_.end()) return out;
  std::istringstream is(it->second);
  std::string field;
  while (std::getline(is, field, ',')) {
    if (trim(field).empty()) continue;
    out.push_back(std::strtod(field.c_str(), nullptr));
  }
  return out;
}

double ExperimentConfig::delta() const { return std::pow(h, delta_exponent); }

double ExperimentConfig::window_max_abs() const {
  return std::abs(z0) + std::sqrt(h) * window_radius;
}

BasisSpec ExperimentConfig::basis() const {
  if (model.domain() == DomainKind::Torus) {
    int k = basis_cutoff;
    if (k <= 0) k = static_cast<int>(std::ceil(std::sqrt(2.0 * window_max_abs()) / h));
    return BasisSpec::fourier_torus(k, h);
  }
  int n_max = basis_cutoff;
  if (n_max <= 0) n_max = static_cast<int>(std::ceil(window_max_abs() / h - 0.5));
  return BasisSpec::scaled_hermite(n_max, h);
}

std::string ExperimentConfig::ensemble_tag() const {
  std::string tag = model.kind == SymbolKind::TorusExp
                        ? "torus_exp_q" + std::to_string(model.q)
                        : "complex_ho";
  tag += perturbation == PerturbKind::RandomMatrix ? "_matrix" : "_potential";
  tag += law == CoeffLaw::ComplexGaussian ? "_gaussian" : "_uniform_phase";
  return tag;
}

ExperimentConfig ExperimentConfig::from_keyvalues(const KeyValues& kv) {
  ExperimentConfig cfg;
  const std::string model = kv.get_string("model", "torus_exp");
  if (model == "torus_exp") {
    cfg.model = SymbolModel::torus_exp(kv.get_int("q", 1));
    if (cfg.model.q < 1) throw SimError(Err::BadConfig, "config: q must be >= 1");
  } else if (model == "complex_ho") {
    cfg.model = SymbolModel::complex_ho();
  } else {
    throw SimError(Err::BadConfig, "config: model must be torus_exp or complex_ho");
  }
  cfg.h = kv.get_double("h", cfg.h);
  if (cfg.h <= 0.0 || cfg.h > 1.0) throw SimError(Err::BadConfig, "config: h must be in (0,1]");
  cfg.delta_exponent = kv.get_double("delta_exponent", cfg.delta_exponent);
  if (cfg.delta_exponent <= 3.0)
    throw SimError(Err::BadConfig, "config: delta_exponent must exceed 3");
  cfg.z0 = {kv.get_double("z0_re", cfg.z0.real()), kv.get_double("z0_im", cfg.z0.imag())};
  cfg.window_radius = kv.get_double("window_radius", cfg.window_radius);
  if (cfg.window_radius <= 0.0)
    throw SimError(Err::BadConfig, "config: window_radius must be positive");
  cfg.realizations = kv.get_int("realizations", cfg.realizations);
  if (cfg.realizations < 1) throw SimError(Err::BadConfig, "config: realizations must be >= 1");
  const std::string pert = kv.get_string("perturbation", "potential");
  if (pert == "matrix")
    cfg.perturbation = PerturbKind::RandomMatrix;
  else if (pert == "potential")
    cfg.perturbation = PerturbKind::RandomPotential;
  else
    throw SimError(Err::BadConfig, "config: perturbation must be matrix or potential");
  const std::string law = kv.get_string("law", "gaussian");
  if (law == "gaussian")
    cfg.law = CoeffLaw::ComplexGaussian;
  else if (law == "uniform_phase")
    cfg.law = CoeffLaw::UniformPhase;
  else
    throw SimError(Err::BadConfig, "config: law must be gaussian or uniform_phase");
  cfg.clamp = kv.get_bool("clamp", cfg.clamp);
  cfg.clamp_c = kv.get_double("clamp_c", cfg.clamp_c);
  cfg.basis_cutoff = kv.get_int("basis_cutoff", cfg.basis_cutoff);
  cfg.master_seed = kv.get_u64("master_seed", cfg.master_seed);
  cfg.out_dir = kv.get_string("out_dir", cfg.out_dir);
  return cfg;
}

}  // namespace specpert
