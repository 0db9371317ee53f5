#include "ubsea/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ubsea::oracle {

NullMoments enumerate_null_moments(const Graph& g, int m_x) {
  const int N = g.node_count();
  if (N > 12) throw std::invalid_argument("null enumeration limited to N <= 12");
  if (m_x < 2 || m_x > N - 2) throw std::invalid_argument("m_x must lie in [2, N-2]");
  const std::int64_t n_x = N - m_x;

  // W = (N-2) R_w is an integer, so all sums stay exact.
  __int128 count = 0, sum_w = 0, sum_w2 = 0, sum_d = 0, sum_d2 = 0;
  for (std::uint32_t code = 0; code < (1u << N); ++code) {
    if (__builtin_popcount(code) != m_x) continue;
    std::int64_t r1 = 0, r2 = 0;
    for (const auto& [u, v] : g.edges()) {
      const bool a = (code >> u) & 1u, b = (code >> v) & 1u;
      if (a && b) ++r1;
      if (!a && !b) ++r2;
    }
    const std::int64_t w = (n_x - 1) * r1 + (m_x - 1) * r2;
    const std::int64_t d = r1 - r2;
    ++count;
    sum_w += w;
    sum_w2 += static_cast<__int128>(w) * w;
    sum_d += d;
    sum_d2 += static_cast<__int128>(d) * d;
  }

  const double C = static_cast<double>(count);
  const double scale = static_cast<double>(N - 2);
  NullMoments out;
  out.mean_rw = static_cast<double>(sum_w) / (C * scale);
  out.var_rw = static_cast<double>(count * sum_w2 - sum_w * sum_w) / (C * C * scale * scale);
  out.mean_rd = static_cast<double>(sum_d) / C;
  out.var_rd = static_cast<double>(count * sum_d2 - sum_d * sum_d) / (C * C);
  return out;
}

SbmExpectations expected_counts_sbm(const ConnectivityMatrix& P, int m, int n, int d1, int d2,
                                    bool directed) {
  P.validate();
  if (m < 2 || n < 2) throw std::invalid_argument("community sizes must be >= 2");
  if (d1 < 0 || d1 > m || d2 < 0 || d2 > n) throw std::invalid_argument("d1/d2 out of range");
  if (!directed && P.p12() != P.p21())
    throw std::invalid_argument("undirected expectations require p12 == p21");

  const double M = m, Nn = n, D1 = d1, D2 = d2, N = m + n;
  const double P11 = P.p11(), P22 = P.p22(), Px = P.p12() + P.p21();
  const double mx = M - D1 + D2, nx = Nn - D2 + D1;
  const double e_edges = M * (M - 1) * P11 + M * Nn * Px + Nn * (Nn - 1) * P22;

  SbmExpectations e;
  e.e_r1 = (M - D1) * (M - D1 - 1) * P11 + (M - D1) * D2 * Px + D2 * (D2 - 1) * P22;
  e.e_r2 = (Nn - D2) * (Nn - D2 - 1) * P22 + (Nn - D2) * D1 * Px + D1 * (D1 - 1) * P11;
  e.e_mu_d = ((M - Nn) - 2 * (D1 - D2)) / N * e_edges;
  e.e_mu_w = (mx - 1) * (nx - 1) / ((N - 1) * (N - 2)) * e_edges;

  const double d_factor = 2 * (M - 1) * P11 - 2 * (Nn - 1) * P22 - (M - Nn) * Px;
  e.rdc = M * Nn / N * d_factor * (1 - D1 / M - D2 / Nn);
  e.rwc = M * Nn * (M - 1) * (Nn - 1) / ((N - 1) * (N - 2)) * (P11 + P22 - Px) *
          (1 + D1 * D1 / (M * (M - 1)) + D2 * D2 / (Nn * (Nn - 1)) - (2 * M - 1) * D1 / (M * (M - 1)) -
           (2 * Nn - 1) * D2 / (Nn * (Nn - 1)) + 2 * D1 * D2 / (M * Nn));

  if (!directed) {
    e.e_r1 /= 2;
    e.e_r2 /= 2;
    e.e_mu_d /= 2;
    e.e_mu_w /= 2;
    e.rdc /= 2;
    e.rwc /= 2;
  }
  return e;
}

TheoremGridReport verify_population_extrema(const ConnectivityMatrix& P, int m, int n) {
  if (m < 2 || n < 2 || m > 30 || n > 30) throw std::invalid_argument("m, n must lie in [2, 30]");
  TheoremGridReport rep;
  rep.d_factor = 2.0 * (m - 1) * P.p11() - 2.0 * (n - 1) * P.p22() - double(m - n) * (P.p12() + P.p21());
  rep.w_sum = P.p11() + P.p22() - P.p12() - P.p21();
  const double w_sign = rep.w_sum > 0 ? 1.0 : -1.0;

  double d_best = -std::numeric_limits<double>::infinity();
  double w_best = -std::numeric_limits<double>::infinity();
  double d_truth = d_best, w_truth = w_best;
  double d_abs_max = 0;
  for (int d1 = 0; d1 <= m; ++d1) {
    for (int d2 = 0; d2 <= n; ++d2) {
      const double mx = m - d1 + d2, nx = n - d2 + d1;
      if (mx < 2 || nx < 2) continue;
      const auto e = expected_counts_sbm(P, m, n, d1, d2, true);
      const double zd = e.rdc / std::sqrt(mx * nx);
      const double zw = w_sign * e.rwc / std::sqrt(mx * nx * (mx - 1) * (nx - 1));
      d_abs_max = std::max(d_abs_max, std::abs(zd));
      const bool at_truth = (d1 == 0 && d2 == 0) || (d1 == m && d2 == n);
      if (zd > d_best) {
        d_best = zd;
        rep.d_argmax = {d1, d2};
      }
      if (zw > w_best) {
        w_best = zw;
        rep.w_argext = {d1, d2};
      }
      if (at_truth) {
        d_truth = std::max(d_truth, zd);
        w_truth = std::max(w_truth, zw);
      }
    }
  }

  auto attains = [](double truth, double best) {
    return truth >= best - 1e-12 * std::max(1.0, std::abs(best));
  };
  rep.d_identically_zero = d_abs_max <= 1e-12;
  rep.d_extremum_at_truth = rep.d_factor != 0 && attains(d_truth, d_best);
  rep.w_extremum_at_truth = rep.w_sum != 0 && attains(w_truth, w_best);
  return rep;
}

}  // namespace ubsea::oracle
