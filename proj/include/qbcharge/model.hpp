#pragma once

// Planar charger + battery-cell array Hamiltonian.
//
// Cells B_ij sit on layers i = 1..n with positions j = 0..i. The charger C
// couples to the first layer, cells couple to the two nearest cells of the
// next layer, and neighbouring cells of one layer tunnel into each other.
// Every bond is rescaled by the same distance factor kappa(d), d = s / omega_cell.

#include "qbcharge/hilbert.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qbcharge {

struct SystemConfig {
  int n_layers = 1;          ///< 0 = charger only
  double omega_c = 4.0;      ///< charger frequency
  double omega_cell = 4.0;   ///< uniform cell frequency
  double g = 0.01;           ///< charger / inter-layer coupling
  double t_e = 0.001;        ///< intra-layer tunneling
  double s = 1.0;            ///< raw separation, d = s / omega_cell
  double drive_amplitude = 0.1;
  double drive_frequency = 4.0;
  int cutoff = 4;            ///< Fock levels per mode
  std::string kappa_law = "exp";

  double distance() const { return s / omega_cell; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Named distance-decay laws kappa(d). "exp" (exp(-d)) is the only built-in.
class DistanceLawRegistry {
public:
  using Law = std::function<double(double)>;

  static const DistanceLawRegistry& builtin();

  void add(std::string name, Law law);
  bool contains(const std::string& name) const;
  /// Evaluates the named law; throws std::invalid_argument for d < 0 or unknown names.
  double evaluate(const std::string& name, double d) const;

private:
  std::map<std::string, Law> laws_;
};

/// exp(-d)
double kappa(double d);

struct Bond {
  std::size_t first;   ///< site index (0 = charger)
  std::size_t second;

  friend bool operator==(const Bond&, const Bond&) = default;
};

struct Geometry {
  std::vector<std::string> sites;  ///< "C", then cells layer-major
  std::vector<Bond> charger_bonds;
  std::vector<Bond> interlayer_bonds;
  std::vector<Bond> intralayer_bonds;

  std::size_t cell_count() const { return sites.size() - 1; }
  std::size_t site_index(const std::string& label) const;
};

std::string cell_label(int layer, int position);

Geometry build_geometry(int n_layers);

struct HamiltonianParts {
  OperatorMatrix h_static;     ///< free + coupling + tunneling terms
  OperatorMatrix drive_lower;  ///< F * a (charger)
  OperatorMatrix number;       ///< total excitation number N
  ModeLayout layout;
};

/// Lab-frame Hamiltonian at time t: h_static + drive_lower e^{i w t} + h.c.
OperatorMatrix lab_hamiltonian(const HamiltonianParts& parts, double omega_f, double t);

/// Builds the array Hamiltonian for any layer count. Warns on stderr above
/// 4096 basis states and refuses anything above 16384 (dense storage).
HamiltonianParts build_hamiltonian(const SystemConfig& config,
                                   const DistanceLawRegistry& laws = DistanceLawRegistry::builtin());

/// Charger plus the two first-layer cells, assembled term by term.
HamiltonianParts build_minimal_cell(const SystemConfig& config,
                                    const DistanceLawRegistry& laws = DistanceLawRegistry::builtin());

/// Time-independent generator in the frame rotating at omega_f:
/// h_static - omega_f N + drive_lower + drive_lower^dagger.
OperatorMatrix rotating_frame(const HamiltonianParts& parts, double omega_f);

}  // namespace qbcharge
