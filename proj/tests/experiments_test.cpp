#include "gwp/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gwp/errors.hpp"
#include "test_support.hpp"

namespace gwp {
namespace {

using testing::MatrixNear;

std::string csv(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

Matrix row_matrix(const Table& t, std::size_t row, const std::string& prefix, Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      m(i, j) = t.rows[row][t.index(prefix + std::to_string(i + 1) + std::to_string(j + 1))];
    }
  }
  return m;
}

TEST(ConfigTest, RoundTrips) {
  ExperimentConfig cfg = ExperimentConfig::torsional_default();
  cfg.hbar = {0.2, 0.1, 0.05};
  cfg.seed = 18446744073709551615ULL;
  cfg.output = "out.csv";
  cfg.mode = "convergence";
  const ExperimentConfig again = parse_config(serialize_config(cfg));
  EXPECT_EQ(again, cfg);
  EXPECT_EQ(serialize_config(again), serialize_config(cfg));
}

TEST(ConfigTest, ParsesCommentsAndInfersDimension) {
  const ExperimentConfig cfg = parse_config(R"(
# comment
[system]
potential = harmonic(2)   # trailing
hbar = 0.3
[initial]
q0 = [0.5]
p0 = [0]
A0 = [[0]]
B0 = [1]
[integrator]
dt = 0.05
t_final = 1
)");
  EXPECT_EQ(cfg.dim, 1);
  EXPECT_EQ(cfg.potential, "harmonic(2)");
  EXPECT_EQ(cfg.hbar, std::vector<double>{0.3});
  EXPECT_DOUBLE_EQ(cfg.b0(0, 0), 1.0);
}

TEST(ConfigTest, ReportsLineOfFirstError) {
  const std::string base = serialize_config(ExperimentConfig::torsional_default());
  try {
    parse_config("[system]\npotential = torsional\nbogus = 1\n");
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_config("[system]\nmass = heavy\n");
    FAIL() << "bad number accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("system.mass"), std::string::npos);
  }
  EXPECT_THROW(parse_config("[system\n"), ConfigError);
  EXPECT_THROW(parse_config("just words\n"), ConfigError);
}

TEST(ConfigTest, ValidatesInvariants) {
  auto broken = [](auto mutate) {
    ExperimentConfig cfg = ExperimentConfig::torsional_default();
    mutate(cfg);
    return cfg;
  };
  EXPECT_THROW(broken([](auto& c) { c.b0 = Matrix{{1.0, 0.0}, {0.0, -1.0}}; }).validate(),
               ConfigError);
  EXPECT_THROW(broken([](auto& c) { c.dt = 0.0; }).validate(), ConfigError);
  EXPECT_THROW(broken([](auto& c) { c.n_samples = 0; }).validate(), ConfigError);
  EXPECT_THROW(broken([](auto& c) { c.mode = "plot"; }).validate(), ConfigError);
  EXPECT_THROW(broken([](auto& c) { c.q0 = Vector::Zero(3); }).validate(), ConfigError);
  EXPECT_THROW(broken([](auto& c) { c.potential = "torsional"; c.dim = 1; }).validate(),
               ConfigError);
  EXPECT_NO_THROW(ExperimentConfig::torsional_default().validate());
}

TEST(PropagateTest, PaperSetupShapeAndInvariants) {
  const ExperimentConfig cfg = ExperimentConfig::torsional_default();
  const Table t = run_propagate(cfg);
  ASSERT_EQ(t.rows.size(), 501u);
  EXPECT_EQ(csv(t).substr(0, 33), "t,q1,q2,p1,p2,A11,A12,A21,A22,B11");
  const auto times = t.column("t");
  for (std::size_t k = 1; k < times.size(); ++k) EXPECT_GT(times[k], times[k - 1]);
  EXPECT_DOUBLE_EQ(times.back(), 5.0);

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    ASSERT_EQ(t.rows[r].size(), t.columns.size());
    const SiegelPoint c(row_matrix(t, r, "A", 2), row_matrix(t, r, "B", 2));
    EXPECT_LE(max_abs(row_matrix(t, r, "S", 4) - sigma(c).matrix()), 1e-10) << r;
    const double h = t.rows[r][t.index("H")];
    EXPECT_LE(std::abs(h - t.rows[r][t.index("h_moment")]), 1e-12 * std::max(1.0, std::abs(h)));
  }
}

TEST(PropagateTest, FreeRunMovesLinearly) {
  ExperimentConfig cfg = ExperimentConfig::torsional_default();
  cfg.potential = "quadratic([[0, 0], [0, 0]], [0, 0])";
  cfg.mass = 2.0;
  cfg.t_final = 1.0;
  cfg.record_stride = 10;
  const Table t = run_propagate(cfg);
  ASSERT_EQ(t.rows.size(), 11u);
  for (const auto& row : t.rows) {
    const double time = row[t.index("t")];
    for (Index i = 0; i < 2; ++i) {
      const std::string k = std::to_string(i + 1);
      EXPECT_NEAR(row[t.index("q" + k)], cfg.q0(i) + time * cfg.p0(i) / cfg.mass, 1e-13);
      EXPECT_EQ(row[t.index("p" + k)], cfg.p0(i));
    }
  }
}

TEST(EgorovRunTest, HarmonicMeanTracksClassicalPath) {
  ExperimentConfig cfg = ExperimentConfig::torsional_default();
  cfg.potential = "harmonic(1)";
  cfg.t_final = 2.0;
  cfg.record_stride = 20;
  cfg.n_samples = 4000;
  const Table e = run_egorov(cfg);
  const Table p = run_propagate(cfg);
  ASSERT_EQ(e.rows.size(), p.rows.size());
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    for (const char* name : {"q1", "q2", "p1", "p2"}) {
      const std::string n(name);
      const double classical = p.rows[r][p.index(n.substr(0, 1) + "cl" + n.substr(1))];
      EXPECT_LE(std::abs(e.rows[r][e.index(n)] - classical), 5 * e.rows[r][e.index("se_" + n)] + 1e-12);
    }
  }
}

TEST(EgorovRunTest, SingleSampleIsOneVerletTrajectory) {
  ExperimentConfig cfg = ExperimentConfig::torsional_default();
  cfg.n_samples = 1;
  cfg.t_final = 1.0;
  const Table e = run_egorov(cfg);
  const GaussianState state = GaussianState::from_wave_packet(
      PhasePoint{cfg.q0, cfg.p0}, SiegelPoint(cfg.a0, cfg.b0), cfg.hbar.front());
  PhasePoint z = PhasePoint::from_stacked(sample(state, 1, cfg.seed).samples.col(0));
  const TorsionalPotential v;
  const SimParams params(cfg.hbar.front(), cfg.mass);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (r > 0) z = verlet_step(z, cfg.dt, params, v);
    EXPECT_EQ(e.rows[r][e.index("q1")], z.q(0));
    EXPECT_EQ(e.rows[r][e.index("p2")], z.p(1));
    EXPECT_EQ(e.rows[r][e.index("V")], v.value(z.q));
    EXPECT_EQ(e.rows[r][e.index("se_q1")], 0.0);
  }
}

TEST(ConvergenceTest, RejectsSingleHbar) {
  EXPECT_THROW(run_convergence(ExperimentConfig::torsional_default()), ConfigError);
}

TEST(ConvergenceTest, ErrorsVanishAtTimeZero) {
  ExperimentConfig cfg = ExperimentConfig::torsional_default();
  cfg.hbar = {0.2, 0.1};
  cfg.t_final = 0.0;
  cfg.n_samples = 2000;
  const Table t = run_convergence(cfg);
  ASSERT_EQ(t.rows.size(), 2u);
  for (const auto& row : t.rows) {
    EXPECT_LE(row[t.index("err_semi")], 5 * row[t.index("mc_se")]);
    EXPECT_EQ(row[t.index("err_semi")], row[t.index("err_cl")]);
  }
}

TEST(DeterminismTest, RepeatedRunsGiveIdenticalCsv) {
  ExperimentConfig cfg = ExperimentConfig::torsional_default();
  cfg.t_final = 1.0;
  cfg.n_samples = 500;
  EXPECT_EQ(csv(run_propagate(cfg)), csv(run_propagate(cfg)));
  EXPECT_EQ(csv(run_egorov(cfg)), csv(run_egorov(cfg)));
  EXPECT_EQ(csv(run_egorov(cfg, Execution::kSerial)), csv(run_egorov(cfg, Execution::kParallel)));
  cfg.hbar = {0.2, 0.1};
  EXPECT_EQ(csv(run_convergence(cfg)), csv(run_convergence(cfg)));
}

TEST(CsvTest, SeventeenDigitsAndEnsembleColumns) {
  Table t{{"x"}, {{0.1}}};
  EXPECT_EQ(csv(t), "x\n0.10000000000000001\n");
  const Ensemble e{Matrix{{1.0, 2.0}, {3.0, 4.0}}, 0};
  EXPECT_EQ(csv(ensemble_table(e)), "i,q1,p1\n0,1,3\n1,2,4\n");
}

TEST(ChecksTest, DefaultSuitePassesReproducibly) {
  const CheckReport a = run_checks(5, 20);
  EXPECT_TRUE(a.all_passed());
  const CheckReport b = run_checks(5, 20);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].residual, b.results[i].residual) << a.results[i].name;
  }
}

TEST(ChecksTest, SignErrorInAdStarIsCaught) {
  CheckOps ops;
  ops.ad_star = [](const SymElement& xi, const SymElement& mu) {
    return SymElement(-ad_star(xi, mu).matrix());
  };
  const CheckReport report = run_checks(5, 20, ops);
  EXPECT_FALSE(report.all_passed());
  std::ostringstream os;
  print_report(os, report);
  EXPECT_NE(os.str().find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace gwp
