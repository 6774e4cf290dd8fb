#include "dualpol/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dualpol/errors.hpp"
#include "dualpol/rng.hpp"

namespace dualpol {

namespace {

constexpr std::uint64_t kStreamSimulate = 0x53494D0000000000ull;   // "SIM"
constexpr std::uint64_t kStreamBootstrap = 0x424F4F0000000000ull;  // "BOO"

struct FlatOutcomes {
  // Cell list in row-major order plus the loss outcome at the end.
  std::vector<std::pair<int, int>> cells;
  std::vector<double> cdf;  // cumulative, final entry ~1
};

FlatOutcomes flatten(const JointDistribution& dist) {
  FlatOutcomes out;
  double acc = 0.0;
  for (int i = 0; i < dist.na; ++i)
    for (int j = 0; j < dist.nb; ++j) {
      out.cells.push_back({i, j});
      acc += dist.cell(i, j);
      out.cdf.push_back(acc);
    }
  out.cdf.push_back(1.0);  // loss
  return out;
}

struct ParityStats {
  bool has_z = false, has_y = false;
  double c_z = 0.0, c_y = 0.0, zy_mean = 0.0;
  long long n = 0;
};

bool axis_available_z(const JointDistribution& d) {
  for (int i = 0; i < d.na; ++i)
    for (int j = 0; j < d.nb; ++j) {
      if (d.pair_level && i != j) continue;
      if (!d.parity_z(i, j)) return false;
    }
  return true;
}

bool axis_available_y(const JointDistribution& d) {
  for (int i = 0; i < d.na; ++i)
    for (int j = 0; j < d.nb; ++j) {
      if (d.pair_level && i != j) continue;
      if (!d.parity_y(i, j)) return false;
    }
  return true;
}

ParityStats parity_stats(const CoincidenceTable& table) {
  ParityStats out;
  out.has_z = axis_available_z(table.semantics);
  out.has_y = axis_available_y(table.semantics);
  double sz = 0.0, sy = 0.0, szy = 0.0;
  long long n = 0;
  for (int i = 0; i < table.semantics.na; ++i)
    for (int j = 0; j < table.semantics.nb; ++j) {
      const long long c = table.counts[std::size_t(i)][std::size_t(j)];
      if (c == 0) continue;
      n += c;
      const auto pz = table.semantics.parity_z(i, j);
      const auto py = table.semantics.parity_y(i, j);
      if (pz) sz += double(*pz) * c;
      if (py) sy += double(*py) * c;
      if (pz && py) szy += double(*pz * *py) * c;
    }
  out.n = n;
  if (n > 0) {
    out.c_z = sz / n;
    out.c_y = sy / n;
    out.zy_mean = szy / n;
  }
  return out;
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / double(xs.size() - 1));
}

int sign_of(double x) { return x < 0.0 ? -1 : +1; }

/// Primary witness value (auxiliary reading when defined, otherwise the
/// paper-literal one) from plug-in correlators.
std::optional<double> primary_w(const WitnessValue& wv) {
  if (wv.w_sep_aux) return wv.w_sep_aux;
  return wv.w_paper;
}

}  // namespace

long long CoincidenceTable::coincidences() const {
  long long n = 0;
  for (const auto& row : counts)
    for (long long c : row) n += c;
  return n;
}

CoincidenceTable simulate_counts(const TwoQubitState& rho, const AnalyzerModel& arm_a,
                                 const AnalyzerModel& arm_b, long long n_pairs,
                                 std::uint64_t seed, std::uint64_t stream_salt) {
  if (n_pairs < 1) throw ValidationError("[witness] n_pairs must be >= 1");
  CoincidenceTable table;
  table.semantics = joint_probabilities(rho, arm_a, arm_b);
  table.n_pairs = n_pairs;
  const FlatOutcomes flat = flatten(table.semantics);
  const std::uint64_t stream = kStreamSimulate + stream_salt;
  for (long long e = 0; e < n_pairs; ++e) {
    const std::size_t idx = sample_cdf(flat.cdf, uniform_at(seed, stream, std::uint64_t(e)));
    if (idx >= flat.cells.size())
      ++table.loss_count;
    else
      ++table.counts[std::size_t(flat.cells[idx].first)][std::size_t(flat.cells[idx].second)];
  }
  return table;
}

CoincidenceTable table_from_probabilities(const JointDistribution& dist, long long n_pairs) {
  if (n_pairs < 1) throw ValidationError("[witness] n_pairs must be >= 1");
  CoincidenceTable table;
  table.semantics = dist;
  table.n_pairs = n_pairs;
  const FlatOutcomes flat = flatten(dist);
  // Largest-remainder rounding over the 17 outcomes.
  std::vector<double> probs;
  double prev = 0.0;
  for (double c : flat.cdf) {
    probs.push_back(c - prev);
    prev = c;
  }
  std::vector<long long> alloc(probs.size());
  std::vector<std::pair<double, std::size_t>> remainder;
  long long used = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double exact = probs[k] * double(n_pairs);
    alloc[k] = (long long)(std::floor(exact));
    used += alloc[k];
    remainder.push_back({exact - std::floor(exact), k});
  }
  std::sort(remainder.begin(), remainder.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (long long k = 0; k < n_pairs - used; ++k) ++alloc[remainder[std::size_t(k)].second];
  for (std::size_t k = 0; k < flat.cells.size(); ++k)
    table.counts[std::size_t(flat.cells[k].first)][std::size_t(flat.cells[k].second)] = alloc[k];
  table.loss_count = alloc.back();
  return table;
}

CoincidenceTable bell_parity_sampler(const TwoQubitState& rho, long long n_pairs,
                                     std::uint64_t seed) {
  return simulate_counts(rho, AnalyzerModel::bell_parity(), AnalyzerModel::bell_parity(), n_pairs,
                         seed);
}

WitnessReport estimate_from_counts(const CoincidenceTable& table, const Visibilities& arm_a,
                                   const Visibilities& arm_b, int bootstrap_b,
                                   std::uint64_t seed) {
  WitnessReport report;
  report.n_pairs = table.n_pairs;
  const ParityStats stats = parity_stats(table);
  report.n_used = stats.n;
  if (stats.n == 0) throw std::runtime_error("[witness] zero coincidences in table");

  if (stats.has_z) report.c_z_obs = stats.c_z;
  if (stats.has_y) report.c_y_obs = stats.c_y;
  report.eta_z_a = arm_a.eta_z;
  report.eta_y_a = arm_a.eta_y;
  report.eta_z_b = arm_b.eta_z;
  report.eta_y_b = arm_b.eta_y;

  if (stats.n < 100) {
    report.se_insufficient = true;
    const WitnessValue wv = witness(report.c_z_obs, report.c_y_obs, arm_a, arm_b);
    report.w_paper = wv.w_paper;
    report.w_sep_aux = wv.w_sep_aux;
    report.c_z_corr = wv.c_z_corr;
    report.c_y_corr = wv.c_y_corr;
    report.verdict_paper = wv.verdict_paper;
    report.verdict_aux = wv.verdict_aux;
    report.verdict = wv.verdict_aux;
    report.over_correction = wv.over_correction;
    return report;
  }

  const double n = double(stats.n);
  const double var_z = (1.0 - stats.c_z * stats.c_z) / n;
  const double var_y = (1.0 - stats.c_y * stats.c_y) / n;
  const double cov = (stats.zy_mean - stats.c_z * stats.c_y) / n;
  if (stats.has_z) report.se_c_z = std::sqrt(std::max(var_z, 0.0));
  if (stats.has_y) report.se_c_y = std::sqrt(std::max(var_y, 0.0));

  const WitnessValue wv =
      witness(report.c_z_obs, report.c_y_obs, arm_a, arm_b, report.se_c_z, report.se_c_y);
  report.w_paper = wv.w_paper;
  report.w_sep_aux = wv.w_sep_aux;
  report.c_z_corr = wv.c_z_corr;
  report.c_y_corr = wv.c_y_corr;
  report.verdict_paper = wv.verdict_paper;
  report.verdict_aux = wv.verdict_aux;
  report.verdict = wv.verdict_aux;
  report.over_correction = wv.over_correction;

  // Delta method, covariance included: W is a smooth function of the two
  // conditional correlator means.
  auto delta_se = [&](double gain_z, double gain_y) {
    const double gz = -double(sign_of(stats.c_z)) / gain_z;
    const double gy = -double(sign_of(stats.c_y)) / gain_y;
    const double v = gz * gz * var_z + gy * gy * var_y + 2.0 * gz * gy * cov;
    return std::sqrt(std::max(v, 0.0));
  };
  std::optional<double> se_delta_primary;
  if (stats.has_z && stats.has_y) {
    if (wv.w_sep_aux) {
      se_delta_primary =
          delta_se(*arm_a.eta_z * *arm_b.eta_z, *arm_a.eta_y * *arm_b.eta_y);
    } else if (wv.w_paper) {
      se_delta_primary = delta_se(1.0, 1.0);
    }
  }
  report.se_w_delta = se_delta_primary;
  report.se_w = se_delta_primary;

  // Nonparametric bootstrap over pair records (loss included), percentile CI.
  if (bootstrap_b > 0 && stats.has_z && stats.has_y && (wv.w_sep_aux || wv.w_paper)) {
    const FlatOutcomes flat = flatten(table.semantics);
    std::vector<double> emp_cdf;
    double acc = 0.0;
    for (std::size_t k = 0; k < flat.cells.size(); ++k) {
      acc += double(table.counts[std::size_t(flat.cells[k].first)]
                                [std::size_t(flat.cells[k].second)]) /
             double(table.n_pairs);
      emp_cdf.push_back(acc);
    }
    emp_cdf.push_back(1.0);
    std::vector<int> cell_pz(flat.cells.size()), cell_py(flat.cells.size());
    for (std::size_t k = 0; k < flat.cells.size(); ++k) {
      const auto [i, j] = flat.cells[k];
      cell_pz[k] = table.semantics.parity_z(i, j).value_or(0);
      cell_py[k] = table.semantics.parity_y(i, j).value_or(0);
    }
    std::vector<double> ws;
    ws.reserve(std::size_t(bootstrap_b));
    for (int b = 0; b < bootstrap_b; ++b) {
      double sz = 0.0, sy = 0.0;
      long long m = 0;
      for (long long e = 0; e < table.n_pairs; ++e) {
        const std::size_t idx = sample_cdf(
            emp_cdf, uniform_at(seed, kStreamBootstrap + std::uint64_t(b), std::uint64_t(e)));
        if (idx >= flat.cells.size()) continue;
        sz += cell_pz[idx];
        sy += cell_py[idx];
        ++m;
      }
      if (m == 0) continue;
      const WitnessValue bwv = witness(sz / double(m), sy / double(m), arm_a, arm_b);
      if (const auto w = primary_w(bwv)) ws.push_back(*w);
    }
    if (ws.size() >= 2) {
      report.se_w_bootstrap = sample_sd(ws);
      std::sort(ws.begin(), ws.end());
      const auto pick = [&](double q) {
        const std::size_t idx = std::min(std::size_t(q * double(ws.size())), ws.size() - 1);
        return ws[idx];
      };
      report.w_ci_lo = pick(0.025);
      report.w_ci_hi = pick(0.975);
    }
  }
  return report;
}

SequentialResult sequential_run(const TwoQubitState& rho, long long n_total, double visibility,
                                std::uint64_t seed, int bootstrap_b) {
  if (n_total < 2 || n_total % 2 != 0)
    throw ValidationError("[witness] sequential run needs an even n_total >= 2");
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw ValidationError("[witness] visibility must be in [0,1]");

  const AnalyzerModel za = AnalyzerModel::sequential(SeqBasis::Z, visibility);
  const AnalyzerModel ya = AnalyzerModel::sequential(SeqBasis::Y, visibility);
  SequentialResult out{{},
                       simulate_counts(rho, za, za, n_total / 2, seed, 1),
                       simulate_counts(rho, ya, ya, n_total / 2, seed, 2)};

  const ParityStats zs = parity_stats(out.z_table);
  const ParityStats ys = parity_stats(out.y_table);
  WitnessReport& report = out.report;
  report.n_pairs = n_total;
  report.n_used = zs.n + ys.n;
  if (report.n_used == 0) throw std::runtime_error("[witness] zero coincidences in table");

  if (zs.n > 0) report.c_z_obs = zs.c_z;
  if (ys.n > 0) report.c_y_obs = ys.c_y;
  const Visibilities vis{visibility, visibility, 1.0};
  report.eta_z_a = report.eta_z_b = visibility;
  report.eta_y_a = report.eta_y_b = visibility;

  const bool enough = zs.n >= 100 && ys.n >= 100;
  std::optional<double> se_cz, se_cy;
  if (enough) {
    se_cz = std::sqrt((1.0 - zs.c_z * zs.c_z) / double(zs.n));
    se_cy = std::sqrt((1.0 - ys.c_y * ys.c_y) / double(ys.n));
  } else {
    report.se_insufficient = true;
  }
  report.se_c_z = se_cz;
  report.se_c_y = se_cy;

  const WitnessValue wv = witness(report.c_z_obs, report.c_y_obs, vis, vis, se_cz, se_cy);
  report.w_paper = wv.w_paper;
  report.w_sep_aux = wv.w_sep_aux;
  report.c_z_corr = wv.c_z_corr;
  report.c_y_corr = wv.c_y_corr;
  report.verdict_paper = wv.verdict_paper;
  report.verdict_aux = wv.verdict_aux;
  report.verdict = wv.verdict_aux;
  report.over_correction = wv.over_correction;

  if (enough && report.c_z_obs && report.c_y_obs) {
    // Independent halves: no covariance term.
    const double gain = std::max(visibility * visibility, 1e-300);
    const bool aux = wv.w_sep_aux.has_value();
    const double gz = aux ? 1.0 / gain : 1.0;
    const double gy = gz;
    const double v = gz * gz * (*se_cz) * (*se_cz) + gy * gy * (*se_cy) * (*se_cy);
    report.se_w_delta = std::sqrt(v);
    report.se_w = report.se_w_delta;

    if (bootstrap_b > 0) {
      auto resample_mean = [&](const CoincidenceTable& table, bool z_axis, std::uint64_t stream,
                               long long* m_out) {
        const FlatOutcomes flat = flatten(table.semantics);
        std::vector<double> emp_cdf;
        double acc = 0.0;
        std::vector<int> parit(flat.cells.size());
        for (std::size_t k = 0; k < flat.cells.size(); ++k) {
          const auto [i, j] = flat.cells[k];
          acc += double(table.counts[std::size_t(i)][std::size_t(j)]) / double(table.n_pairs);
          emp_cdf.push_back(acc);
          parit[k] = (z_axis ? table.semantics.parity_z(i, j) : table.semantics.parity_y(i, j))
                         .value_or(0);
        }
        emp_cdf.push_back(1.0);
        double s = 0.0;
        long long m = 0;
        for (long long e = 0; e < table.n_pairs; ++e) {
          const std::size_t idx = sample_cdf(emp_cdf, uniform_at(seed, stream, std::uint64_t(e)));
          if (idx >= flat.cells.size()) continue;
          s += parit[idx];
          ++m;
        }
        *m_out = m;
        return m > 0 ? s / double(m) : 0.0;
      };
      std::vector<double> ws;
      for (int b = 0; b < bootstrap_b; ++b) {
        long long mz = 0, my = 0;
        const double cz = resample_mean(out.z_table, true,
                                        kStreamBootstrap + 2 * std::uint64_t(b), &mz);
        const double cy = resample_mean(out.y_table, false,
                                        kStreamBootstrap + 2 * std::uint64_t(b) + 1, &my);
        if (mz == 0 || my == 0) continue;
        const WitnessValue bwv = witness(cz, cy, vis, vis);
        if (const auto w = primary_w(bwv)) ws.push_back(*w);
      }
      if (ws.size() >= 2) {
        report.se_w_bootstrap = sample_sd(ws);
        std::sort(ws.begin(), ws.end());
        const auto pick = [&](double q) {
          const std::size_t idx = std::min(std::size_t(q * double(ws.size())), ws.size() - 1);
          return ws[idx];
        };
        report.w_ci_lo = pick(0.025);
        report.w_ci_hi = pick(0.975);
      }
    }
  }
  return out;
}

}  // namespace dualpol
