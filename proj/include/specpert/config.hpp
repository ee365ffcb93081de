#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specpert/matrix.hpp"
#include "specpert/operators.hpp"
#include "specpert/symbols.hpp"

namespace specpert {

/// Line-oriented `key = value` configuration with `#` comments.
class KeyValues {
 public:
  static KeyValues from_file(const std::string& path);
  static KeyValues from_string(const std::string& text);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;  // comma-separated

  const std::map<std::string, std::string>& raw() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct ExperimentConfig {
  SymbolModel model = SymbolModel::torus_exp(1);
  double h = 0.01;
  double delta_exponent = 4.0;  // delta = h^exponent, exponent > 3
  cplx z0 = {1.6, 0.0};
  double window_radius = 5.0;
  int realizations = 400;
  PerturbKind perturbation = PerturbKind::RandomPotential;
  CoeffLaw law = CoeffLaw::ComplexGaussian;
  bool clamp = false;
  double clamp_c = 2.0;
  int basis_cutoff = 0;  // 0: choose from the coverage rule
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";

  double delta() const;
  /// Largest |z| the run studies: the rescaled window pulled back to the
  /// energy plane.
  double window_max_abs() const;
  BasisSpec basis() const;  // applies the coverage rule when cutoff is 0
  std::string ensemble_tag() const;

  static ExperimentConfig from_keyvalues(const KeyValues& kv);
};

}  // namespace specpert
