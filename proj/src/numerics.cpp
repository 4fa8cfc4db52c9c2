#include "bandvol/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bandvol::num {

double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol_abs, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::runtime_error("find_root: root not bracketed");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (fb * fc > 0.0) {
            c = a; fc = fa;
            e = d = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.22e-16 * std::fabs(b) + 0.5 * tol_abs;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // inverse quadratic / secant step
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
            const double min2 = std::fabs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

namespace {

// Gauss-Kronrod 15(7) nodes and weights (positive half).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

QuadratureResult gk15(const std::function<double(double)>& f, double a,
                      double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_mid = f(mid);
    double kron = kWgk[7] * f_mid;
    double gauss = kWg[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    return {kron * half, std::fabs(kron - gauss) * std::fabs(half)};
}

void integrate_rec(const std::function<double(double)>& f, double a, double b,
                   double tol_abs, double tol_rel, int depth,
                   const QuadratureResult& whole, QuadratureResult& acc) {
    const bool ok = whole.error <= tol_abs ||
                    whole.error <= tol_rel * std::fabs(whole.value);
    if (ok || depth <= 0) {
        acc.value += whole.value;
        acc.error += whole.error;
        return;
    }
    const double mid = 0.5 * (a + b);
    const QuadratureResult left = gk15(f, a, mid);
    const QuadratureResult right = gk15(f, mid, b);
    integrate_rec(f, a, mid, 0.5 * tol_abs, tol_rel, depth - 1, left, acc);
    integrate_rec(f, mid, b, 0.5 * tol_abs, tol_rel, depth - 1, right, acc);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol_abs, double tol_rel,
                           int max_depth) {
    QuadratureResult acc;
    integrate_rec(f, a, b, tol_abs, tol_rel, max_depth, gk15(f, a, b), acc);
    return acc;
}

void integrate_ode(const Deriv4& f, double t0, double t1, State4& y,
                   double rel_tol, double abs_tol) {
    if (t1 == t0) return;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(0.05, std::fabs(t1 - t0));

    auto axpy = [](const State4& base, double c, const State4& k) {
        State4 r;
        for (int i = 0; i < 4; ++i) r[i] = base[i] + c * k[i];
        return r;
    };

    int steps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++steps > 2000000)
            throw std::runtime_error("integrate_ode: step limit exceeded");
        if (dir * (t + h - t1) > 0.0) h = t1 - t;

        const State4 k1 = f(t, y);
        const State4 k2 = f(t + h / 5.0, axpy(y, h / 5.0, k1));
        State4 tmp = y;
        for (int i = 0; i < 4; ++i)
            tmp[i] += h * (3.0 / 40.0 * k1[i] + 9.0 / 40.0 * k2[i]);
        const State4 k3 = f(t + 3.0 / 10.0 * h, tmp);
        tmp = y;
        for (int i = 0; i < 4; ++i)
            tmp[i] += h * (44.0 / 45.0 * k1[i] - 56.0 / 15.0 * k2[i] +
                           32.0 / 9.0 * k3[i]);
        const State4 k4 = f(t + 4.0 / 5.0 * h, tmp);
        tmp = y;
        for (int i = 0; i < 4; ++i)
            tmp[i] += h * (19372.0 / 6561.0 * k1[i] - 25360.0 / 2187.0 * k2[i] +
                           64448.0 / 6561.0 * k3[i] - 212.0 / 729.0 * k4[i]);
        const State4 k5 = f(t + 8.0 / 9.0 * h, tmp);
        tmp = y;
        for (int i = 0; i < 4; ++i)
            tmp[i] += h * (9017.0 / 3168.0 * k1[i] - 355.0 / 33.0 * k2[i] +
                           46732.0 / 5247.0 * k3[i] + 49.0 / 176.0 * k4[i] -
                           5103.0 / 18656.0 * k5[i]);
        const State4 k6 = f(t + h, tmp);
        State4 y5 = y;
        for (int i = 0; i < 4; ++i)
            y5[i] += h * (35.0 / 384.0 * k1[i] + 500.0 / 1113.0 * k3[i] +
                          125.0 / 192.0 * k4[i] - 2187.0 / 6784.0 * k5[i] +
                          11.0 / 84.0 * k6[i]);
        const State4 k7 = f(t + h, y5);
        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double y4i =
                y[i] + h * (5179.0 / 57600.0 * k1[i] + 7571.0 / 16695.0 * k3[i] +
                            393.0 / 640.0 * k4[i] - 92097.0 / 339200.0 * k5[i] +
                            187.0 / 2100.0 * k6[i] + 1.0 / 40.0 * k7[i]);
            const double scale =
                abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            const double e = (y5[i] - y4i) / scale;
            err += e * e;
        }
        err = std::sqrt(err / 4.0);
        if (err <= 1.0) {
            t += h;
            y = y5;
        }
        const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
        if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(t)))
            throw std::runtime_error("integrate_ode: step underflow");
    }
}

double hermite_function(int n, double xi) {
    if (n < 0) throw std::invalid_argument("hermite_function: n must be >= 0");
    const double g = std::exp(-0.5 * xi * xi) * std::pow(M_PI, -0.25);
    double prev = 0.0;
    double cur = g;
    for (int m = 0; m < n; ++m) {
        const double next = std::sqrt(2.0 / (m + 1.0)) * xi * cur -
                            std::sqrt(m / (m + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double hermite_function_deriv(int n, double xi) {
    // psi_n' = sqrt(2n) psi_{n-1} - xi psi_n
    const double lower = n > 0 ? hermite_function(n - 1, xi) : 0.0;
    return std::sqrt(2.0 * n) * lower - xi * hermite_function(n, xi);
}

}  // namespace bandvol::num
