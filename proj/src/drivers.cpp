#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "gwp/experiments.hpp"
#include "gwp/matrix_io.hpp"

namespace gwp {

namespace {

std::vector<std::string> indexed(const std::string& prefix, Index n) {
  std::vector<std::string> names;
  for (Index i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

std::vector<std::string> matrix_names(const std::string& prefix, Index n) {
  std::vector<std::string> names;
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= n; ++j) {
      names.push_back(prefix + std::to_string(i) + std::to_string(j));
    }
  }
  return names;
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

void append(std::vector<double>& row, const Vector& v) {
  row.insert(row.end(), v.data(), v.data() + v.size());
}

// Row-major, matching the column naming.
void append(std::vector<double>& row, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
  }
}

double single_hbar(const ExperimentConfig& cfg, const char* mode) {
  if (cfg.hbar.size() != 1) {
    throw ConfigError(std::string(mode) + " takes a single hbar value");
  }
  return cfg.hbar.front();
}

struct EgorovEndpoint {
  Vector mean;
  Vector std_error;
};

EgorovEndpoint egorov_endpoint(const ExperimentConfig& cfg, const SimParams& params,
                               const Potential& v, Execution exec) {
  const GwpState init = cfg.initial_packet();
  const auto state = GaussianState::from_wave_packet(init.z, init.c, params.hbar);
  Ensemble e = sample(state, cfg.n_samples, cfg.seed, exec);
  advance_ensemble(e, cfg.stepper().steps(), cfg.dt, params, v, exec);
  const Index n = e.phase_dim();
  EgorovEndpoint out{Vector(n), Vector(n)};
  for (Index k = 0; k < n; ++k) {
    const Estimate est = expect(e, [k](const Vector& z) { return z(k); }, exec);
    out.mean(k) = est.mean;
    out.std_error(k) = est.std_error;
  }
  return out;
}

}  // namespace

std::size_t Table::index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t k = index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[k]);
  return out;
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
    os << '\n';
  }
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(out, table);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

Table ensemble_table(const Ensemble& e) {
  const Index d = e.phase_dim() / 2;
  Table t;
  t.columns = {"i"};
  append(t.columns, indexed("q", d));
  append(t.columns, indexed("p", d));
  for (Index i = 0; i < e.size(); ++i) {
    std::vector<double> row{static_cast<double>(i)};
    append(row, Vector(e.samples.col(i)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_propagate(const ExperimentConfig& cfg) {
  cfg.validate();
  const SimParams params(single_hbar(cfg, "propagate"), cfg.mass);
  const auto v = make_potential(cfg.potential, cfg.dim);
  const StepperConfig stepper = cfg.stepper();
  const Index d = cfg.dim;

  Table t;
  t.columns = {"t"};
  append(t.columns, indexed("q", d));
  append(t.columns, indexed("p", d));
  append(t.columns, matrix_names("A", d));
  append(t.columns, matrix_names("B", d));
  append(t.columns, matrix_names("S", 2 * d));
  append(t.columns, {"H", "h_moment"});
  append(t.columns, indexed("qm", d));
  append(t.columns, indexed("pm", d));
  append(t.columns, indexed("qcl", d));
  append(t.columns, indexed("pcl", d));
  append(t.columns, {"Vhbar", "Vcl"});

  GwpState packet = cfg.initial_packet();
  MomentState moments{packet.z, sigma(packet.c)};
  PhasePoint classical = packet.z;

  auto record = [&](long step) {
    std::vector<double> row{static_cast<double>(step) * cfg.dt};
    append(row, packet.z.q);
    append(row, packet.z.p);
    append(row, packet.c.real());
    append(row, packet.c.imag());
    append(row, moments.sigma.matrix());
    row.push_back(gwp_hamiltonian(packet.z, packet.c, params, *v));
    row.push_back(moment_hamiltonian(moments.z, moments.sigma, params, *v));
    append(row, moments.z.q);
    append(row, moments.z.p);
    append(row, classical.q);
    append(row, classical.p);
    row.push_back(
        v->corrected_value(packet.z.q, spd_inverse(packet.c.imag()), params.hbar));
    row.push_back(v->value(classical.q));
    t.rows.push_back(std::move(row));
  };

  record(0);
  const long steps = stepper.steps();
  for (long k = 1; k <= steps; ++k) {
    packet = splitting_step(packet, cfg.dt, params, *v);
    moments = moment_splitting_step(moments, cfg.dt, params, *v);
    classical = verlet_step(classical, cfg.dt, params, *v);
    if (k % cfg.record_stride == 0) record(k);
  }
  return t;
}

Table run_egorov(const ExperimentConfig& cfg, Execution exec) {
  cfg.validate();
  const SimParams params(single_hbar(cfg, "egorov"), cfg.mass);
  const auto v = make_potential(cfg.potential, cfg.dim);
  const Index d = cfg.dim;
  const GwpState init = cfg.initial_packet();
  const auto state = GaussianState::from_wave_packet(init.z, init.c, params.hbar);

  std::vector<Observable> observables;
  for (Index k = 0; k < 2 * d; ++k) {
    observables.push_back([k](const Vector& z) { return z(k); });
  }
  observables.push_back([&v, d](const Vector& z) { return v->value(z.head(d)); });

  const ExpectationSeries series = egorov_expectations(
      state, cfg.n_samples, cfg.seed, params, *v, cfg.stepper(), observables, exec);

  Table t;
  t.columns = {"t"};
  append(t.columns, indexed("q", d));
  append(t.columns, indexed("p", d));
  t.columns.push_back("V");
  append(t.columns, indexed("se_q", d));
  append(t.columns, indexed("se_p", d));
  t.columns.push_back("se_V");
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    std::vector<double> row{series.times[k]};
    row.insert(row.end(), series.means[k].begin(), series.means[k].end());
    row.insert(row.end(), series.std_errors[k].begin(), series.std_errors[k].end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

ConvergencePoint convergence_point(const ExperimentConfig& cfg, double hbar,
                                   Execution exec) {
  cfg.validate();
  const auto v = make_potential(cfg.potential, cfg.dim);
  const SimParams params(hbar, cfg.mass);
  const long steps = cfg.stepper().steps();
  GwpState packet = cfg.initial_packet();
  PhasePoint classical = packet.z;
  for (long k = 0; k < steps; ++k) {
    packet = splitting_step(packet, cfg.dt, params, *v);
    classical = verlet_step(classical, cfg.dt, params, *v);
  }
  const EgorovEndpoint ref = egorov_endpoint(cfg, params, *v, exec);
  return ConvergencePoint{hbar, (packet.z.stacked() - ref.mean).norm(),
                          (classical.stacked() - ref.mean).norm(), ref.std_error.norm()};
}

Table run_convergence(const ExperimentConfig& cfg, Execution exec) {
  cfg.validate();
  if (cfg.hbar.size() < 2) throw ConfigError("convergence needs at least two hbar values");
  Table t;
  t.columns = {"hbar",     "err_semi",     "err_cl",    "mc_se",
               "log_hbar", "log_err_semi", "log_err_cl"};
  for (double hbar : cfg.hbar) {
    const ConvergencePoint c = convergence_point(cfg, hbar, exec);
    t.rows.push_back({hbar, c.err_semi, c.err_cl, c.mc_se, std::log(hbar),
                      std::log(c.err_semi), std::log(c.err_cl)});
  }
  return t;
}

}  // namespace gwp
