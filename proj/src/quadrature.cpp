#include "gkp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace gkp::quad {

namespace {

// K15 nodes/weights on [-1, 1]; the embedded G7 uses the odd-indexed nodes.
constexpr double kNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kWeightsK[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWeightsG[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

template <typename Value>
struct Panel {
    double a, b;
    Value value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename Value, typename Fn>
Panel<Value> evaluate_panel(const Fn& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Value k{};
    Value g{};
    for (int i = 0; i < 15; ++i) {
        const Value fv = f(c + h * kNodes[i]);
        k += kWeightsK[i] * fv;
        if (i % 2 == 1) g += kWeightsG[i / 2] * fv;
    }
    evals += 15;
    k *= h;
    g *= h;
    const double diff = std::abs(k - g);
    // Standard QUADPACK-style sharpened error estimate.
    double err = diff;
    if (diff > 0.0) err = diff * std::min(1.0, std::pow(200.0 * diff / std::max(std::abs(k), 1e-300), 1.5));
    return {a, b, k, err};
}

template <typename Value, typename Fn>
void adaptive(const Fn& f, double a, double b, double rel_tol, double abs_tol,
              int max_intervals, Value& total, double& total_err, long& evals) {
    std::priority_queue<Panel<Value>> heap;
    auto first = evaluate_panel<Value>(f, a, b, evals);
    total = first.value;
    total_err = first.error;
    heap.push(first);
    int intervals = 1;
    while (total_err > std::max(rel_tol * std::abs(total), abs_tol)) {
        if (intervals >= max_intervals) {
            throw NumericalError(
                "quadrature did not converge: intervals=" + std::to_string(intervals) +
                " value=" + std::to_string(std::abs(total)) +
                " err=" + std::to_string(total_err));
        }
        Panel<Value> worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = evaluate_panel<Value>(f, worst.a, mid, evals);
        auto right = evaluate_panel<Value>(f, mid, worst.b, evals);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_intervals) {
    if (a == b) return {0.0, 0.0, 0};
    Result r;
    double value = 0.0, err = 0.0;
    adaptive(f, a, b, rel_tol, abs_tol, max_intervals, value, err, r.evaluations);
    r.value = value;
    r.error_estimate = err;
    return r;
}

ComplexResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                double a, double b, double rel_tol, double abs_tol,
                                int max_intervals) {
    if (a == b) return {};
    ComplexResult r;
    std::complex<double> value{};
    double err = 0.0;
    adaptive(f, a, b, rel_tol, abs_tol, max_intervals, value, err, r.evaluations);
    r.value = value;
    r.error_estimate = err;
    return r;
}

double midpoint(const std::function<double(double)>& f, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    double acc = 0.0, comp = 0.0;  // Kahan
    for (long i = 0; i < n; ++i) {
        const double y = f(a + (static_cast<double>(i) + 0.5) * h) - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc * h;
}

}  // namespace gkp::quad
