#include "coreshell/specfun.hpp"

#include <cmath>
#include <string>

#include "coreshell/errors.hpp"

namespace coreshell::specfun {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;
constexpr double kEps = 2.220446049250313e-16;
constexpr double kSeriesTol = 1e-18;

// Ascending series of I are all-positive, so they stay well conditioned for
// any argument; the asymptotic form takes over at 20 where the neglected
// exponentially small solution is ~e^{-2x} <= 4e-18 relative.
constexpr double kISeriesCut = 20.0;
// The K log-series loses one digit per factor ~10 of I0(x)*ln-term vs K0(x);
// beyond 2 the cosh-integral is used instead.
constexpr double kKSeriesCut = 2.0;

void check_argument(double x, const char* name, bool strictly_positive) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(name) + ": argument must be finite");
    }
    if (strictly_positive ? (x <= 0.0) : (x < 0.0)) {
        throw DomainError(std::string(name) + ": argument out of domain, x = " +
                          std::to_string(x));
    }
    if (x > kMaxArgument) {
        throw RangeError(std::string(name) + ": argument above supported range (" +
                         std::to_string(kMaxArgument) + "), x = " + std::to_string(x));
    }
}

BesselEval i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    int k = 0;
    while (term >= kSeriesTol * sum) {
        ++k;
        term *= q / (static_cast<double>(k) * k);
        sum += term;
    }
    const double err = ((k + 2) * kEps + kSeriesTol) * sum;
    return {sum, 4.0 * err};
}

BesselEval i1_series(double x) {
    if (x == 0.0) return {0.0, 0.0};
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    int k = 0;
    while (term >= kSeriesTol * sum) {
        ++k;
        term *= q / (static_cast<double>(k) * (k + 1.0));
        sum += term;
    }
    const double value = 0.5 * x * sum;
    const double err = ((k + 3) * kEps + kSeriesTol) * std::abs(value);
    return {value, 4.0 * err};
}

// Large-x expansion e^x/sqrt(2 pi x) * sum_k a_k(mu)/x^k with mu = 4 nu^2,
// truncated at the first term below 1e-17 of the running sum.
BesselEval i_asymptotic(double x, double mu) {
    double term = 1.0;
    double sum = 1.0;
    int k = 0;
    while (k < 60) {
        ++k;
        const double odd = 2.0 * k - 1.0;
        term *= (odd * odd - mu) / (8.0 * x * k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    const double value = std::exp(x) * sum / std::sqrt(2.0 * M_PI * x);
    const double err = (std::abs(term) / std::abs(sum) + (k + 4) * kEps) * value;
    return {value, 4.0 * err};
}

// K0 = -(ln(x/2)+gamma) I0(x) + sum_{k>=1} H_k q^k/(k!)^2, q = x^2/4.
BesselEval k0_log_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double harmonic = 0.0;
    double sum = 0.0;
    double i0sum = 1.0;
    int k = 0;
    while (true) {
        ++k;
        term *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        sum += term * harmonic;
        i0sum += term;
        if (term * harmonic < kSeriesTol * (sum + 1.0)) break;
    }
    const double logpiece = -(std::log(0.5 * x) + kEulerGamma) * i0sum;
    const double value = logpiece + sum;
    const double err = (std::abs(logpiece) + std::abs(sum)) * (k + 4) * kEps + kSeriesTol;
    return {value, 4.0 * err};
}

// K1 = 1/x + ln(x/2) I1(x) - (x/4) sum_{k>=0} (psi(k+1)+psi(k+2)) q^k/(k!(k+1)!).
BesselEval k1_log_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double psi_sum = 1.0 - 2.0 * kEulerGamma;  // psi(1) + psi(2)
    double sum = term * psi_sum;
    double i1sum = 1.0;
    int k = 0;
    while (true) {
        ++k;
        term *= q / (static_cast<double>(k) * (k + 1.0));
        psi_sum += 1.0 / k + 1.0 / (k + 1.0);
        sum += term * psi_sum;
        i1sum += term;
        if (term * std::abs(psi_sum) < kSeriesTol * (std::abs(sum) + 1.0)) break;
    }
    const double inv = 1.0 / x;
    const double logpiece = std::log(0.5 * x) * 0.5 * x * i1sum;
    const double value = inv + logpiece - 0.25 * x * sum;
    const double err =
        (inv + std::abs(logpiece) + 0.25 * x * std::abs(sum)) * (k + 5) * kEps + kSeriesTol;
    return {value, 4.0 * err};
}

// Exponentially scaled trapezoid of K_n(x) = int_0^inf e^{-x cosh t} cosh(nt) dt.
// The integrand (as a function extended evenly to the whole line) is analytic,
// so the trapezoid converges geometrically once h resolves the e^{-x t^2/2}
// width ~ 1/sqrt(x).
BesselEval k_integral(double x, int order) {
    const double h = std::min(1.0 / 16.0, 1.0 / (4.0 * std::sqrt(x)));
    const double tmax = std::acosh(1.0 + 46.0 / x);
    const int n = static_cast<int>(std::ceil(tmax / h)) + 1;
    double sum = 0.5;  // t = 0 node: e^0 * cosh(0) weighted by 1/2
    for (int j = 1; j <= n; ++j) {
        const double t = j * h;
        const double c = std::cosh(t);
        const double w = std::exp(-x * (c - 1.0));
        sum += (order == 0) ? w : w * c;
    }
    const double value = h * sum * std::exp(-x);
    const double err = (2e-15 + n * kEps) * value;
    return {value, 4.0 * err};
}

}  // namespace

BesselEval bessel_i0_eval(double x) {
    check_argument(x, "bessel_i0", false);
    return (x <= kISeriesCut) ? i0_series(x) : i_asymptotic(x, 0.0);
}

BesselEval bessel_i1_eval(double x) {
    check_argument(x, "bessel_i1", false);
    return (x <= kISeriesCut) ? i1_series(x) : i_asymptotic(x, 4.0);
}

BesselEval bessel_k0_eval(double x) {
    check_argument(x, "bessel_k0", true);
    return (x <= kKSeriesCut) ? k0_log_series(x) : k_integral(x, 0);
}

BesselEval bessel_k1_eval(double x) {
    check_argument(x, "bessel_k1", true);
    return (x <= kKSeriesCut) ? k1_log_series(x) : k_integral(x, 1);
}

double bessel_i0(double x) { return bessel_i0_eval(x).value; }
double bessel_i1(double x) { return bessel_i1_eval(x).value; }
double bessel_k0(double x) { return bessel_k0_eval(x).value; }
double bessel_k1(double x) { return bessel_k1_eval(x).value; }

}  // namespace coreshell::specfun
