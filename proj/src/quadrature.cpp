#include "nlk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nlk/errors.hpp"

namespace nlk {

namespace {

// G7,K15 nodes and weights on [-1, 1]; nodes listed as (abscissa,
// gauss weight, kronrod weight), gauss weight 0 on Kronrod-only nodes.
constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct Panel {
    double a, b, value, error;
};

void gk15(const Integrand& f, double a, double b, double& value, double& error) {
    const double mid = 0.5 * (a + b);
    const double hal = 0.5 * (b - a);
    double y0 = f(mid);
    double g7 = kNodes[0][1] * y0;
    double k15 = kNodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = hal * kNodes[i][0];
        double y = f(mid + dx) + f(mid - dx);
        g7 += kNodes[i][1] * y;
        k15 += kNodes[i][2] * y;
    }
    g7 *= hal;
    k15 *= hal;
    value = k15;
    double diff = 200.0 * std::fabs(g7 - k15);
    error = diff * std::sqrt(diff);
    if (!std::isfinite(error)) error = std::fabs(g7 - k15);
}

} // namespace

QuadResult gk_adaptive(const Integrand& f, double a, double b, double abs_tol, double rel_tol,
                       int max_intervals) {
    QuadResult out;
    if (a == b) return out;

    std::vector<Panel> heap;
    Panel root{};
    root.a = a;
    root.b = b;
    gk15(f, a, b, root.value, root.error);
    out.n_eval += 15;
    heap.push_back(root);

    auto cmp = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::make_heap(heap.begin(), heap.end(), cmp);

    double total = root.value;
    double total_err = root.error;
    int used = 1;
    while (total_err > abs_tol && total_err > rel_tol * std::fabs(total)) {
        if (used >= max_intervals) break;
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Panel worst = heap.back();
        heap.pop_back();
        if (worst.error <= 0.0 || worst.b - worst.a < 1e-300) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        double mid = 0.5 * (worst.a + worst.b);
        Panel left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
        gk15(f, left.a, left.b, left.value, left.error);
        gk15(f, right.a, right.b, right.value, right.error);
        out.n_eval += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++used;
    }
    // Re-sum in a fixed order for reproducibility and a fresh error total.
    std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double v = 0.0, e = 0.0;
    for (const Panel& p : heap) {
        v += p.value;
        e += p.error;
    }
    out.value = v;
    out.error = e;
    return out;
}

QuadResult integrate_endpoint_singular(const Integrand& f, double a, double b, double exp_a,
                                       double exp_b, double abs_tol, double rel_tol) {
    if (!(exp_a > -1.0) || !(exp_b > -1.0))
        throw InvalidParameter("integrate_endpoint_singular: endpoint exponents must be > -1");
    const double mid = 0.5 * (a + b);
    const double half = mid - a;

    auto order = [](double e) {
        // Power k making (t-a)^e dt ~ tau^{k(e+1)-1} dtau at least cubic.
        double k = 4.0 / (e + 1.0);
        return std::max(1.0, std::min(k, 60.0));
    };

    QuadResult out;
    {
        double k = order(exp_a);
        auto g = [&](double tau) {
            double t = a + half * std::pow(tau, k);
            double jac = half * k * std::pow(tau, k - 1.0);
            return f(t) * jac;
        };
        out += gk_adaptive(g, 0.0, 1.0, 0.5 * abs_tol, rel_tol);
    }
    {
        double k = order(exp_b);
        auto g = [&](double tau) {
            double t = b - half * std::pow(tau, k);
            double jac = half * k * std::pow(tau, k - 1.0);
            return f(t) * jac;
        };
        out += gk_adaptive(g, 0.0, 1.0, 0.5 * abs_tol, rel_tol);
    }
    return out;
}

QuadResult integrate_halfline(const Integrand& f, double a, double tail_exp, double abs_tol,
                              double rel_tol) {
    if (!(tail_exp > 1.0)) throw InvalidParameter("integrate_halfline: tail exponent must be > 1");
    // t = a - 1 + 1/v maps v in (0,1] to [a, inf); integrand ~ v^{tail_exp-2}.
    auto g = [&](double v) {
        double t = a - 1.0 + 1.0 / v;
        return f(t) / (v * v);
    };
    return integrate_endpoint_singular(g, 0.0, 1.0, tail_exp - 2.0, 0.0, abs_tol, rel_tol);
}

QuadResult osc_one_minus_cos(double beta, double radius) {
    if (!(beta > 0.0 && beta < 2.0)) throw InvalidParameter("osc_one_minus_cos: beta in (0,2)");
    auto f = [beta](double t) {
        double sh = std::sin(0.5 * t);
        return 2.0 * sh * sh * std::pow(t, -1.0 - beta); // 1 - cos t = 2 sin^2(t/2)
    };
    // [0, 1]: integrand ~ t^{1-beta}/2 at the origin.
    QuadResult out = integrate_endpoint_singular(f, 0.0, 1.0, 1.0 - beta, 0.0, 1e-12, 1e-12);
    // [1, radius]: plain oscillatory adaptive.
    out += gk_adaptive(f, 1.0, radius, 1e-12, 1e-12, 200000);
    // Tail: int_R (1 - cos t) t^{-1-b} = R^{-b}/b + sin(R) R^{-1-b}
    //       - (1+b) cos(R) R^{-2-b} + O(R^{-2-b}).
    double R = radius;
    double tail = std::pow(R, -beta) / beta + std::sin(R) * std::pow(R, -1.0 - beta) -
                  (1.0 + beta) * std::cos(R) * std::pow(R, -2.0 - beta);
    double tail_err = (1.0 + beta) * std::pow(R, -2.0 - beta);
    out.value += tail;
    out.error += tail_err;
    return out;
}

} // namespace nlk
