#include "qbcharge/model.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace qbcharge {

namespace {

constexpr std::size_t kLargeDimensionWarning = 4096;
constexpr std::size_t kMaxDimension = 16384;

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw std::invalid_argument("SystemConfig." + field + ": " + why);
}

// x^dagger y + y^dagger x
OperatorMatrix hopping(const OperatorMatrix& x, const OperatorMatrix& y) {
  OperatorMatrix term = x.adjoint() * y;
  return term + term.adjoint();
}

ModeLayout layout_for(const Geometry& geometry, int cutoff) {
  return ModeLayout(geometry.sites, cutoff);
}

}  // namespace

void SystemConfig::validate() const {
  require(n_layers >= 0, "n_layers", "must be nonnegative");
  require(std::isfinite(omega_c) && omega_c > 0.0, "omega_c", "must be positive");
  require(std::isfinite(omega_cell) && omega_cell > 0.0, "omega_cell", "must be positive");
  require(std::isfinite(g) && g >= 0.0, "g", "must be nonnegative");
  require(std::isfinite(t_e) && t_e >= 0.0, "t_e", "must be nonnegative");
  require(std::isfinite(s) && s >= 0.0, "s", "must be nonnegative");
  require(std::isfinite(drive_amplitude) && drive_amplitude >= 0.0, "drive_amplitude", "must be nonnegative");
  require(std::isfinite(drive_frequency) && drive_frequency > 0.0, "drive_frequency", "must be positive");
  require(cutoff >= 2, "cutoff", "must be at least 2");
  require(!kappa_law.empty(), "kappa_law", "must name a distance law");
}

const DistanceLawRegistry& DistanceLawRegistry::builtin() {
  static const DistanceLawRegistry registry = [] {
    DistanceLawRegistry r;
    r.add("exp", [](double d) { return std::exp(-d); });
    return r;
  }();
  return registry;
}

void DistanceLawRegistry::add(std::string name, Law law) {
  laws_.insert_or_assign(std::move(name), std::move(law));
}

bool DistanceLawRegistry::contains(const std::string& name) const {
  return laws_.count(name) != 0;
}

double DistanceLawRegistry::evaluate(const std::string& name, double d) const {
  if (!(d >= 0.0)) throw std::invalid_argument("kappa: distance must be nonnegative");
  auto it = laws_.find(name);
  if (it == laws_.end()) throw std::invalid_argument("kappa: unknown distance law '" + name + "'");
  return it->second(d);
}

double kappa(double d) {
  return DistanceLawRegistry::builtin().evaluate("exp", d);
}

std::size_t Geometry::site_index(const std::string& label) const {
  for (std::size_t k = 0; k < sites.size(); ++k)
    if (sites[k] == label) return k;
  throw std::invalid_argument("Geometry: unknown site '" + label + "'");
}

std::string cell_label(int layer, int position) {
  if (layer < 10 && position < 10) return "B" + std::to_string(layer) + std::to_string(position);
  return "B" + std::to_string(layer) + "_" + std::to_string(position);
}

Geometry build_geometry(int n_layers) {
  if (n_layers < 0) throw std::invalid_argument("build_geometry: n_layers must be nonnegative");
  Geometry geo;
  geo.sites.push_back("C");
  // first_index[i] = site index of B_i0
  std::vector<std::size_t> first_index(static_cast<std::size_t>(n_layers) + 2, 0);
  for (int i = 1; i <= n_layers; ++i) {
    first_index[static_cast<std::size_t>(i)] = geo.sites.size();
    for (int j = 0; j <= i; ++j) geo.sites.push_back(cell_label(i, j));
  }
  auto cell = [&](int i, int j) { return first_index[static_cast<std::size_t>(i)] + static_cast<std::size_t>(j); };

  if (n_layers >= 1) {
    geo.charger_bonds.push_back({0, cell(1, 0)});
    geo.charger_bonds.push_back({0, cell(1, 1)});
  }
  for (int i = 1; i < n_layers; ++i) {
    for (int j = 0; j <= i; ++j) {
      geo.interlayer_bonds.push_back({cell(i, j), cell(i + 1, j)});
      geo.interlayer_bonds.push_back({cell(i, j), cell(i + 1, j + 1)});
    }
  }
  for (int i = 1; i <= n_layers; ++i)
    for (int j = 0; j < i; ++j) geo.intralayer_bonds.push_back({cell(i, j), cell(i, j + 1)});
  return geo;
}

OperatorMatrix lab_hamiltonian(const HamiltonianParts& parts, double omega_f, double t) {
  const Complex phase = std::exp(Complex{0.0, omega_f * t});
  OperatorMatrix drive = parts.drive_lower * phase;
  return parts.h_static + drive + drive.adjoint();
}

HamiltonianParts build_hamiltonian(const SystemConfig& config, const DistanceLawRegistry& laws) {
  config.validate();
  const Geometry geo = build_geometry(config.n_layers);
  ModeLayout layout = layout_for(geo, config.cutoff);
  if (layout.dimension() > kMaxDimension)
    throw std::invalid_argument("build_hamiltonian: Hilbert space dimension " + std::to_string(layout.dimension()) +
                                " exceeds the dense limit; reduce n_layers or cutoff");
  if (layout.dimension() > kLargeDimensionWarning)
    std::cerr << "warning: dense Hilbert space of dimension " << layout.dimension()
              << " (cost grows as cutoff^modes)\n";

  const double k = laws.evaluate(config.kappa_law, config.distance());
  const OperatorMatrix a_local = destroy_op(config.cutoff);

  std::vector<OperatorMatrix> lower;
  lower.reserve(geo.sites.size());
  for (int m = 0; m < layout.mode_count(); ++m) lower.push_back(embed(a_local, m, layout));

  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  OperatorMatrix number = OperatorMatrix::Zero(dim, dim);
  OperatorMatrix h = OperatorMatrix::Zero(dim, dim);
  for (std::size_t m = 0; m < lower.size(); ++m) {
    OperatorMatrix n_m = lower[m].adjoint() * lower[m];
    number += n_m;
    h += (m == 0 ? config.omega_c : config.omega_cell) * n_m;
  }
  for (const Bond& b : geo.charger_bonds) h += k * config.g * hopping(lower[b.first], lower[b.second]);
  for (const Bond& b : geo.interlayer_bonds) h += k * config.g * hopping(lower[b.first], lower[b.second]);
  for (const Bond& b : geo.intralayer_bonds) h += k * config.t_e * hopping(lower[b.first], lower[b.second]);

  OperatorMatrix drive = config.drive_amplitude * lower[0];
  return {std::move(h), std::move(drive), std::move(number), std::move(layout)};
}

HamiltonianParts build_minimal_cell(const SystemConfig& config, const DistanceLawRegistry& laws) {
  SystemConfig cfg = config;
  cfg.n_layers = 1;
  cfg.validate();
  ModeLayout layout({"C", "B10", "B11"}, cfg.cutoff);
  const double k = laws.evaluate(cfg.kappa_law, cfg.distance());

  const OperatorMatrix a_local = destroy_op(cfg.cutoff);
  const OperatorMatrix a = embed(a_local, 0, layout);
  const OperatorMatrix b10 = embed(a_local, 1, layout);
  const OperatorMatrix b11 = embed(a_local, 2, layout);

  const OperatorMatrix na = a.adjoint() * a;
  const OperatorMatrix n10 = b10.adjoint() * b10;
  const OperatorMatrix n11 = b11.adjoint() * b11;

  OperatorMatrix h = cfg.omega_c * na + cfg.omega_cell * n10 + cfg.omega_cell * n11;
  OperatorMatrix injection = k * cfg.g * (a.adjoint() * b10 + a.adjoint() * b11);
  OperatorMatrix tunneling = k * cfg.t_e * (b10.adjoint() * b11);
  h += injection + injection.adjoint();
  h += tunneling + tunneling.adjoint();

  OperatorMatrix drive = cfg.drive_amplitude * a;
  OperatorMatrix number = na + n10 + n11;
  return {std::move(h), std::move(drive), std::move(number), std::move(layout)};
}

OperatorMatrix rotating_frame(const HamiltonianParts& parts, double omega_f) {
  return parts.h_static - omega_f * parts.number + parts.drive_lower + parts.drive_lower.adjoint();
}

}  // namespace qbcharge
