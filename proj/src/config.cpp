#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gwp/experiments.hpp"
#include "gwp/matrix_io.hpp"

namespace gwp {

namespace {

const std::set<std::string> kModes{"propagate", "egorov", "convergence", "check"};

template <class Int>
Int parse_integer(const std::string& text) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("expected an integer, got '" + text + "'");
  }
  return value;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"system.potential", [](ExperimentConfig& c, const std::string& v) { c.potential = v; }},
      {"system.dimension",
       [](ExperimentConfig& c, const std::string& v) { c.dim = parse_integer<Index>(v); }},
      {"system.mass", [](ExperimentConfig& c, const std::string& v) { c.mass = parse_real(v); }},
      {"system.hbar",
       [](ExperimentConfig& c, const std::string& v) {
         if (!v.empty() && v.front() == '[') {
           const Vector h = parse_vector(v);
           c.hbar.assign(h.data(), h.data() + h.size());
         } else {
           c.hbar = {parse_real(v)};
         }
       }},
      {"initial.q0", [](ExperimentConfig& c, const std::string& v) { c.q0 = parse_vector(v); }},
      {"initial.p0", [](ExperimentConfig& c, const std::string& v) { c.p0 = parse_vector(v); }},
      {"initial.A0", [](ExperimentConfig& c, const std::string& v) { c.a0 = parse_matrix(v); }},
      {"initial.B0", [](ExperimentConfig& c, const std::string& v) { c.b0 = parse_matrix(v); }},
      {"integrator.dt", [](ExperimentConfig& c, const std::string& v) { c.dt = parse_real(v); }},
      {"integrator.t_final",
       [](ExperimentConfig& c, const std::string& v) { c.t_final = parse_real(v); }},
      {"integrator.record_stride",
       [](ExperimentConfig& c, const std::string& v) { c.record_stride = parse_integer<int>(v); }},
      {"egorov.n_samples",
       [](ExperimentConfig& c, const std::string& v) { c.n_samples = parse_integer<Index>(v); }},
      {"egorov.seed",
       [](ExperimentConfig& c, const std::string& v) {
         c.seed = parse_integer<std::uint64_t>(v);
       }},
      {"output.path", [](ExperimentConfig& c, const std::string& v) { c.output = v; }},
      {"output.mode", [](ExperimentConfig& c, const std::string& v) { c.mode = v; }},
  };
  return table;
}

}  // namespace

ExperimentConfig ExperimentConfig::torsional_default() {
  ExperimentConfig c;
  c.q0 = Vector{{1.0, 0.0}};
  c.p0 = Vector{{-1.0, 1.0}};
  c.a0 = Matrix{{1.0, 0.5}, {0.5, 1.0}};
  c.b0 = c.a0;
  return c;
}

void ExperimentConfig::validate() const {
  if (dim < 1) throw ConfigError("dimension must be positive");
  if (q0.size() != dim || p0.size() != dim) {
    throw ConfigError("q0 and p0 must have `dimension` entries");
  }
  if (a0.rows() != dim || b0.rows() != dim) {
    throw ConfigError("A0 and B0 must be dimension x dimension");
  }
  if (max_abs(a0 - a0.transpose()) > 1e-12 || max_abs(b0 - b0.transpose()) > 1e-12) {
    throw ConfigError("A0 and B0 must be symmetric");
  }
  if (!(min_eigenvalue(b0) > 0.0)) throw ConfigError("B0 must be positive definite");
  if (!(mass > 0.0)) throw ConfigError("mass must be positive");
  if (hbar.empty()) throw ConfigError("hbar is required");
  for (double h : hbar) {
    if (!(h > 0.0)) throw ConfigError("hbar values must be positive");
  }
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_final >= 0.0)) throw ConfigError("t_final must be non-negative");
  if (record_stride < 1) throw ConfigError("record_stride must be at least 1");
  if (n_samples < 1) throw ConfigError("n_samples must be at least 1");
  if (!kModes.contains(mode)) throw ConfigError("unknown mode '" + mode + "'");
  try {
    make_potential(potential, dim);
  } catch (const NumericalError& e) {
    throw ConfigError(e.what());
  }
}

GwpState ExperimentConfig::initial_packet() const {
  return GwpState{PhasePoint{q0, p0}, SiegelPoint(a0, b0)};
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  cfg.q0.resize(0);
  cfg.p0.resize(0);
  bool dim_given = false;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == std::string::npos) {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line_no);
    try {
      it->second(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(key + ": " + e.what(), line_no);
    }
    if (key == "system.dimension") dim_given = true;
  }
  if (!dim_given) cfg.dim = cfg.q0.size();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "[system]\n"
     << "potential = " << cfg.potential << "\n"
     << "dimension = " << cfg.dim << "\n"
     << "mass = " << format_real(cfg.mass) << "\n";
  if (cfg.hbar.size() == 1) {
    os << "hbar = " << format_real(cfg.hbar.front()) << "\n";
  } else {
    os << "hbar = "
       << format_vector(Eigen::Map<const Vector>(cfg.hbar.data(),
                                                 static_cast<Index>(cfg.hbar.size())))
       << "\n";
  }
  os << "\n[initial]\n"
     << "q0 = " << format_vector(cfg.q0) << "\n"
     << "p0 = " << format_vector(cfg.p0) << "\n"
     << "A0 = " << format_matrix(cfg.a0) << "\n"
     << "B0 = " << format_matrix(cfg.b0) << "\n"
     << "\n[integrator]\n"
     << "dt = " << format_real(cfg.dt) << "\n"
     << "t_final = " << format_real(cfg.t_final) << "\n"
     << "record_stride = " << cfg.record_stride << "\n"
     << "\n[egorov]\n"
     << "n_samples = " << cfg.n_samples << "\n"
     << "seed = " << cfg.seed << "\n"
     << "\n[output]\n";
  if (!cfg.output.empty()) os << "path = " << cfg.output << "\n";
  os << "mode = " << cfg.mode << "\n";
  return os.str();
}

}  // namespace gwp
