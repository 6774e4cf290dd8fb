#include "dualpol/resource.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dualpol/analyzer.hpp"
#include "dualpol/counting.hpp"
#include "dualpol/errors.hpp"
#include "dualpol/jones_field.hpp"
#include "dualpol/rng.hpp"

namespace dualpol {

namespace {

constexpr double kEtaFloor = 1e-9;
constexpr std::uint64_t kStreamResource = 0x5245530000000000ull;  // "RES"

struct FlatDist {
  std::vector<double> cdf;  // coincidence cells then loss
  std::vector<int> pz, py;  // per-cell parities (0 when absent)
};

FlatDist flatten_dist(const JointDistribution& dist) {
  FlatDist out;
  double acc = 0.0;
  for (int i = 0; i < dist.na; ++i)
    for (int j = 0; j < dist.nb; ++j) {
      acc += dist.cell(i, j);
      out.cdf.push_back(acc);
      out.pz.push_back(dist.parity_z(i, j).value_or(0));
      out.py.push_back(dist.parity_y(i, j).value_or(0));
    }
  out.cdf.push_back(1.0);
  return out;
}

struct ReplicateStats {
  bool valid = false;
  double w = 0.0, cz_corr = 0.0, cy_corr = 0.0;
};

/// One simulated run of `n` pairs through a single joint distribution.
ReplicateStats run_once(const FlatDist& dist, long long n, double gain_z, double gain_y,
                        std::uint64_t seed, std::uint64_t stream) {
  double sz = 0.0, sy = 0.0;
  long long m = 0;
  for (long long e = 0; e < n; ++e) {
    const std::size_t idx = sample_cdf(dist.cdf, uniform_at(seed, stream, std::uint64_t(e)));
    if (idx + 1 >= dist.cdf.size()) continue;  // loss
    sz += dist.pz[idx];
    sy += dist.py[idx];
    ++m;
  }
  ReplicateStats out;
  if (m == 0) return out;
  out.valid = true;
  out.cz_corr = (sz / double(m)) / gain_z;
  out.cy_corr = (sy / double(m)) / gain_y;
  out.w = 1.0 - (std::abs(out.cz_corr) + std::abs(out.cy_corr));
  return out;
}

/// Sequential protocol: half the pairs per basis configuration.
ReplicateStats run_once_sequential(const FlatDist& dist_z, const FlatDist& dist_y, long long n,
                                   double gain, std::uint64_t seed, std::uint64_t stream) {
  double sz = 0.0, sy = 0.0;
  long long mz = 0, my = 0;
  const long long half = n / 2;
  for (long long e = 0; e < half; ++e) {
    std::size_t idx = sample_cdf(dist_z.cdf, uniform_at(seed, stream, std::uint64_t(e)));
    if (idx + 1 < dist_z.cdf.size()) {
      sz += dist_z.pz[idx];
      ++mz;
    }
    idx = sample_cdf(dist_y.cdf, uniform_at(seed, stream, std::uint64_t(half + e)));
    if (idx + 1 < dist_y.cdf.size()) {
      sy += dist_y.py[idx];
      ++my;
    }
  }
  ReplicateStats out;
  if (mz == 0 || my == 0) return out;
  out.valid = true;
  out.cz_corr = (sz / double(mz)) / gain;
  out.cy_corr = (sy / double(my)) / gain;
  out.w = 1.0 - (std::abs(out.cz_corr) + std::abs(out.cy_corr));
  return out;
}

double sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / double(xs.size() - 1));
}

struct FitResult {
  double c = 0.0;         // fixed slope -1/2
  double exponent = 0.0;  // free slope
  double residual = 0.0;
};

FitResult fit_se_curve(const std::vector<long long>& ns, const std::vector<double>& ses) {
  FitResult out;
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < ns.size(); ++k)
    if (ses[k] > 0.0) {
      xs.push_back(std::log(double(ns[k])));
      ys.push_back(std::log(ses[k]));
    }
  if (xs.empty()) return out;
  double acc = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) acc += ys[k] + 0.5 * xs[k];
  out.c = std::exp(acc / double(xs.size()));
  if (xs.size() >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / double(ys.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    out.exponent = sxy / sxx;
    const double a = my - out.exponent * mx;
    double rss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double r = ys[k] - a - out.exponent * xs[k];
      rss += r * r;
    }
    out.residual = std::sqrt(rss / double(xs.size()));
  }
  return out;
}

struct PreparedScheme {
  bool sequential = false;
  FlatDist dist;           // single-run schemes
  FlatDist dist_z, dist_y; // sequential halves
  double gain_z = 1.0, gain_y = 1.0;
  double eta_z = 1.0, eta_y = 1.0;
  std::string dead_flag;  // nonempty when an axis carries no signal
};

PreparedScheme prepare(const TwoQubitState& rho, const SchemeSpec& spec) {
  PreparedScheme out;
  switch (spec.kind) {
    case SchemeKind::IdealBellParity: {
      out.dist = flatten_dist(
          joint_probabilities(rho, AnalyzerModel::bell_parity(), AnalyzerModel::bell_parity()));
      break;
    }
    case SchemeKind::SequentialSharp: {
      out.sequential = true;
      out.eta_z = out.eta_y = spec.visibility;
      out.gain_z = out.gain_y = spec.visibility * spec.visibility;
      if (spec.visibility < kEtaFloor) {
        out.dead_flag = "eta_z_zero";
        return out;
      }
      const AnalyzerModel za = AnalyzerModel::sequential(SeqBasis::Z, spec.visibility);
      const AnalyzerModel ya = AnalyzerModel::sequential(SeqBasis::Y, spec.visibility);
      out.dist_z = flatten_dist(joint_probabilities(rho, za, za));
      out.dist_y = flatten_dist(joint_probabilities(rho, ya, ya));
      break;
    }
    case SchemeKind::Metasurface: {
      if (!spec.profile)
        throw ValidationError("[witness] metasurface scheme needs a phase profile");
      const JonesField field =
          sample_field(*spec.profile, spec.samples_per_period, spec.samples_per_period);
      const KrausSet kraus = kraus_decompose(field, spec.order_bound, spec.order_bound);
      const PortAssignment ports = PortAssignment::four_port_default();
      Visibilities vis;
      try {
        vis = calibrate_visibilities(kraus, ports);
      } catch (const NoSignalError&) {
        out.dead_flag = "no_signal";
        return out;
      }
      out.eta_z = vis.eta_z.value_or(0.0);
      out.eta_y = vis.eta_y.value_or(0.0);
      if (std::abs(out.eta_z) < kEtaFloor) {
        out.dead_flag = "eta_z_zero";
        return out;
      }
      if (std::abs(out.eta_y) < kEtaFloor) {
        out.dead_flag = "eta_y_zero";
        return out;
      }
      out.gain_z = out.eta_z * out.eta_z;
      out.gain_y = out.eta_y * out.eta_y;
      const AnalyzerModel arm = AnalyzerModel::metasurface(kraus, ports);
      out.dist = flatten_dist(joint_probabilities(rho, arm, arm));
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<ResourceRow> resource_compare(const TwoQubitState& rho, double epsilon,
                                          const std::vector<SchemeSpec>& schemes,
                                          std::uint64_t seed, int replicates) {
  if (!(epsilon > 0.0)) throw ValidationError("[witness] epsilon must be > 0");
  if (replicates < 50)
    throw ValidationError("[witness] resource comparison needs >= 50 replicates");

  std::vector<ResourceRow> rows;
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    const SchemeSpec& spec = schemes[s];
    ResourceRow row;
    row.scheme = spec.label;
    row.epsilon = epsilon;
    const PreparedScheme prep = prepare(rho, spec);
    row.eta_z = prep.eta_z;
    row.eta_y = prep.eta_y;
    if (!prep.dead_flag.empty()) {
      row.unbounded = true;
      row.flag = prep.dead_flag;
      rows.push_back(row);
      continue;
    }

    std::vector<long long> grid = {1000, 4000, 16000, 64000};
    std::vector<double> se_w, se_cz, se_cy;
    const auto measure = [&](long long n, int grid_index) {
      std::vector<double> ws, czs, cys;
      for (int r = 0; r < replicates; ++r) {
        const std::uint64_t stream =
            kStreamResource + ((std::uint64_t(s) << 40) | (std::uint64_t(grid_index) << 32) |
                               std::uint64_t(r));
        const ReplicateStats st =
            prep.sequential
                ? run_once_sequential(prep.dist_z, prep.dist_y, n, prep.gain_z, seed, stream)
                : run_once(prep.dist, n, prep.gain_z, prep.gain_y, seed, stream);
        if (!st.valid) continue;
        ws.push_back(st.w);
        czs.push_back(st.cz_corr);
        cys.push_back(st.cy_corr);
      }
      se_w.push_back(sd(ws));
      se_cz.push_back(sd(czs));
      se_cy.push_back(sd(cys));
    };
    for (std::size_t k = 0; k < grid.size(); ++k) measure(grid[k], int(k));

    FitResult fit = fit_se_curve(grid, se_w);
    // Extend the geometric grid until the fitted requirement is inside it.
    while (fit.c > 0.0) {
      const double n_fit = (fit.c / epsilon) * (fit.c / epsilon);
      if (n_fit <= 2.0 * double(grid.back()) || grid.back() >= 4'000'000) break;
      grid.push_back(grid.back() * 4);
      measure(grid.back(), int(grid.size() - 1));
      fit = fit_se_curve(grid, se_w);
    }

    if (fit.c <= 0.0) {
      row.flag = "deterministic";
      row.n_required_w = 1;
      row.n_required_per_correlator = 1;
      rows.push_back(row);
      continue;
    }
    row.fit_c = fit.c;
    row.fit_exponent = fit.exponent;
    row.fit_residual = fit.residual;
    row.n_required_w = (long long)(std::ceil((fit.c / epsilon) * (fit.c / epsilon)));
    const double c_corr = std::max(fit_se_curve(grid, se_cz).c, fit_se_curve(grid, se_cy).c);
    row.n_required_per_correlator =
        (long long)(std::ceil((c_corr / epsilon) * (c_corr / epsilon)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dualpol
