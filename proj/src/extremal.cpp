#include "diskop/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskop {

namespace {

void check_delta_p(double delta, double p) {
  if (!(delta > 0.0) || !(delta < 1.0) || !(p > 1.0))
    throw std::invalid_argument("extremal family: need 0 < delta < 1 and p > 1");
}

}  // namespace

HoloFunction f_delta_p(double delta, double p, int K) {
  check_delta_p(delta, p);
  const double a = delta / p;
  std::vector<cplx> c(K + 1);
  c[0] = 1.0;
  if (K >= 1) c[1] = 2.0 * a;
  for (int k = 1; k < K; ++k) {
    // (1-z^2) f' = 2a f  =>  (k+1) a_{k+1} = (k-1) a_{k-1} + 2a a_k
    c[k + 1] = ((k - 1.0) * c[k - 1] + 2.0 * a * c[k]) / (k + 1.0);
  }
  return HoloFunction(std::move(c));
}

UVBoundary u_v_boundary(double delta, double p, const GridCircle& grid) {
  check_delta_p(delta, p);
  const double a = delta / p;
  const int n = grid.size();
  const double cu = std::cos(a * kPi / 2.0), sv = std::sin(a * kPi / 2.0);
  std::vector<cplx> u(n), v(n);
  for (int j = 0; j < n; ++j) {
    double theta = (j == 0) ? kPi / n : grid.theta(j);  // half-cell offset at the pole
    const double mag = std::pow(std::abs(std::tan(0.5 * theta)), -a);
    const double sign = theta < kPi ? 1.0 : -1.0;
    u[j] = mag * cu;
    v[j] = sign * mag * sv;
  }
  return UVBoundary{BoundaryFunction(grid, std::move(u)), BoundaryFunction(grid, std::move(v))};
}

std::pair<DiskFunction, Weight> phi_delta(double p, double delta, double rho,
                                          const PolarGrid& grid) {
  check_delta_p(delta, p);
  if (!(rho > 0.0) || !(rho < 0.5)) throw std::invalid_argument("phi_delta: need 0 < rho < 1/2");
  const GridCircle& ang = grid.angular;
  const int n = ang.size();
  const double step = ang.step();

  std::vector<double> angular(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double c = ang.theta(j);
    if (c > kPi) c -= 2.0 * kPi;
    if (2.0 * std::abs(std::sin(0.5 * c)) >= rho) continue;  // outside the square window
    angular[j] = power_cell_average(delta - 1.0, c - 0.5 * step, c + 0.5 * step);
  }
  std::vector<cplx> data(grid.radial_size() * n, cplx(0.0));
  for (int i = 0; i < grid.radial_size(); ++i) {
    const double one_minus_r = 1.0 - grid.radii[i];
    if (one_minus_r >= rho) continue;
    for (int j = 0; j < n; ++j) data[i * n + j] = angular[j] * one_minus_r;
  }
  return {DiskFunction(grid, std::move(data)), omega_delta(p, delta, ang)};
}

DiskFunction log_spike(const PolarGrid& grid) {
  std::vector<cplx> radial(grid.radial_size());
  for (int i = 0; i < grid.radial_size(); ++i) {
    const double r = grid.radii[i];
    radial[i] = 1.0 / std::log(2.0 / (1.0 - r * r));
  }
  return DiskFunction::from_radial(grid, radial);
}

namespace {

// ln sec(pi*delta/2) = -ln sin(pi*tau/2), stable for tau down to ~1e-300.
double ln_sec(double tau) { return -std::log(std::sin(0.5 * kPi * tau)); }

}  // namespace

double hp_f_closed(double tau, double p) { return std::exp(ln_sec(tau) / p); }

double lp_u_closed(double tau, double p) {
  const double a = (1.0 - tau) / p;
  return std::cos(0.5 * kPi * a) * hp_f_closed(tau, p);
}

double lp_v_closed(double tau, double p) {
  const double a = (1.0 - tau) / p;
  return std::sin(0.5 * kPi * a) * hp_f_closed(tau, p);
}

namespace {

double power_window_integral(double s, double hi) {
  // integral over (0, hi) of (2 sin(theta/2))^s, via the shared cell helper.
  return power_cell_average(s, 0.0, hi) * hi;
}

}  // namespace

double phi_delta_mixed_norm(double p, double delta, double rho, const PolarGrid& grid) {
  check_delta_p(delta, p);
  double radial = 0.0;  // integral over {1-r < rho} of (1-r)^2 * 2r dr/(1-r^2)
  for (int i = 0; i < grid.radial_size(); ++i) {
    const double omr = 1.0 - grid.radii[i];
    if (omr < rho) radial += grid.w_lp[i] * omr * omr;
  }
  const double h = 2.0 * std::asin(0.5 * rho);
  // Exponent algebra: |phi|^p * omega_delta has angular factor
  // (2 sin(theta/2))^{(delta-1)p + (p-1)(1-delta)} = (...)^{delta-1}.
  const double angular = power_window_integral(delta - 1.0, h) / kPi;
  return std::sqrt(radial) * std::pow(angular, 1.0 / p);
}

double phi_delta_l1_norm(double delta, double rho, const PolarGrid& grid) {
  double radial = 0.0;
  for (int i = 0; i < grid.radial_size(); ++i) {
    const double omr = 1.0 - grid.radii[i];
    if (omr < rho) radial += grid.w_area[i] * omr;
  }
  const double h = 2.0 * std::asin(0.5 * rho);
  return radial * power_window_integral(delta - 1.0, h) / kPi;
}

double lp_f_shift_closed(double tau, double p, double shift) {
  if (!(tau > 0.0) || !(tau < 1.0) || !(p > 0.0))
    throw std::invalid_argument("lp_f_shift_closed: need 0 < tau < 1 and p > 0");
  const double delta = 1.0 - tau;
  const double a = delta / p;
  const double c = std::cos(0.5 * kPi * a);
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(8, gx, gw);

  // log-integrand of |f(e^{i theta}) + shift|^p with f = m e^{i a pi/2},
  // m = cot(theta/2)^a; factored so nothing overflows when m is huge.
  auto ln_integrand = [&](double u) {
    const double theta = std::exp(u);
    const double mu = -a * std::log(std::tan(0.5 * theta));  // ln m
    if (mu > 30.0) {
      const double e = std::exp(-mu);
      return p * mu + 0.5 * p * std::log1p(2.0 * shift * c * e + shift * shift * e * e);
    }
    const double m = std::exp(mu);
    return 0.5 * p * std::log(m * m + 2.0 * shift * c * m + shift * shift);
  };

  // theta in (0, pi - s0) in log-theta panels; the zero of f at theta = pi
  // makes |f|^p cusp there, so the last stretch is graded in log(pi - theta).
  const double u_star = -400.0;
  const double s0 = 0.5;
  const double u_end = std::log(kPi - s0);
  double numeric = 0.0;
  auto add_panels = [&](double lo_all, double hi_all, auto point) {
    const int panels = static_cast<int>(std::ceil((hi_all - lo_all) / 1.0));
    const double width = (hi_all - lo_all) / panels;
    for (int pn = 0; pn < panels; ++pn) {
      const double lo = lo_all + pn * width, hi = lo + width;
      const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < gx.size(); ++i) point(mid + halfw * gx[i], halfw * gw[i]);
    }
  };
  add_panels(u_star, u_end, [&](double u, double w) {
    numeric += w * std::exp(u + ln_integrand(u));
  });
  // s = pi - theta from s0 down to e^{-40}; the remaining sliver carries
  // integrand ~ |shift|^p + O(s^a).
  add_panels(-40.0, std::log(s0), [&](double v, double w) {
    const double s = std::exp(v);
    numeric += w * s * std::exp(ln_integrand(std::log(kPi - s)));
  });
  numeric += std::exp(-40.0) * std::pow(std::abs(shift), p);
  // Below theta*: |f+shift|^p ~ (2/theta)^delta up to O(theta^a) relative.
  const double tail = std::pow(2.0, delta) * std::exp(tau * u_star) / tau;
  return std::pow((numeric + tail) / kPi, 1.0 / p);
}

namespace {

// Deep-regime Triebel-Lizorkin machinery. With a = delta/p and u = ln theta,
//   inner(theta) = theta^{-2a} * I~(theta),
//   I~(theta)    = integral over sigma in (0, 1/theta) of
//                  2 (1-theta sigma)(2-theta sigma) |sigma V|^2 dsigma / sigma,
// where V = theta^{a+1} (I+R)F(z) at z = (1-theta sigma) e^{i theta} stays
// O(1) in scaled coordinates. The theta integral carries e^{tau u} du with
// the exact e^{tau u}/tau tail below u = -400, so tau enters only linearly.
struct DeepEvaluator {
  double a = 0.0;
  double tau = 0.0;
  double p = 2.0;
  FShift shift = FShift::none;

  cplx scaled_v(double sigma, double theta) const {
    const double r = 1.0 - theta * sigma;
    const double half = 0.5 * theta;
    const double sinc_half = (theta < 1e-8) ? 1.0 : std::sin(half) / half;
    const double sinc_full = (theta < 1e-8) ? 1.0 : std::sin(theta) / theta;
    const double x = sigma + r * half * sinc_half * sinc_half;
    const double y = r * sinc_full;
    const cplx omz(x, -y);  // (1-z)/theta
    const cplx z = std::polar(r, theta);
    const cplx opz = 1.0 + z;
    const cplx f_scaled = std::pow(opz / omz, a);  // theta^a f(z)
    const cplx rterm = 2.0 * a * z * f_scaled / (omz * opz);  // theta^{a+1} z f'(z)
    switch (shift) {
      case FShift::none:
        return theta * f_scaled + rterm;
      case FShift::minus_one:
        return 0.5 * (theta * f_scaled - std::exp((1.0 + a) * std::log(theta))) + 0.5 * rterm;
      case FShift::plus_one:
        return 0.5 * (theta * f_scaled + std::exp((1.0 + a) * std::log(theta))) + 0.5 * rterm;
    }
    return 0.0;
  }

  double tilde_i(double theta, const std::vector<double>& gx,
                 const std::vector<double>& gw) const {
    const double wmin = -60.0;
    const double wmax = -std::log(theta);
    double acc = 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil((wmax - wmin) / 2.0)));
    const double width = (wmax - wmin) / panels;
    for (int pn = 0; pn < panels; ++pn) {
      const double lo = wmin + pn * width, hi = lo + width;
      const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double w = mid + halfw * gx[i];
        const double sigma = std::exp(w);
        if (theta * sigma >= 1.0) continue;
        const cplx sv = sigma * scaled_v(sigma, theta);
        const double ts = theta * sigma;
        acc += halfw * gw[i] * 2.0 * (1.0 - ts) * (2.0 - ts) * std::norm(sv);
      }
    }
    // Below sigma_min the integrand is 4 sigma |V(0,theta)|^2 to leading
    // order; add the analytic remainder.
    const double sigma_min = std::exp(wmin);
    acc += 2.0 * std::norm(sigma_min * scaled_v(sigma_min, theta));
    return acc;
  }

  double norm() const {
    std::vector<double> gx, gw;
    gauss_legendre(8, gx, gw);
    const double u_star = -400.0;
    const double u_end = std::log(kPi);
    double numeric = 0.0;
    const int panels = static_cast<int>(std::ceil((u_end - u_star) / 2.0));
    const double width = (u_end - u_star) / panels;
    for (int pn = 0; pn < panels; ++pn) {
      const double lo = u_star + pn * width, hi = lo + width;
      const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double u = mid + halfw * gx[i];
        const double ti = tilde_i(std::exp(u), gx, gw);
        numeric += halfw * gw[i] * std::exp(tau * u) * std::pow(ti, 0.5 * p);
      }
    }
    const double c_inf = tilde_i(std::exp(u_star), gx, gw);
    const double tail = std::pow(c_inf, 0.5 * p) * std::exp(tau * u_star) / tau;
    const double total = (numeric + tail) / kPi;
    return std::pow(total, 1.0 / p);
  }
};

}  // namespace

double triebel_f_deep(double tau, double p, FShift shift) {
  if (!(tau > 0.0) || !(tau < 1.0) || !(p > 1.0))
    throw std::invalid_argument("triebel_f_deep: need 0 < tau < 1 and p > 1");
  DeepEvaluator ev;
  ev.tau = tau;
  ev.a = (1.0 - tau) / p;
  ev.p = p;
  ev.shift = shift;
  return ev.norm();
}

}  // namespace diskop
