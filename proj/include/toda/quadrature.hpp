#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "toda/errors.hpp"

namespace toda {

/// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct Rect {
    double x0, x1, y0, y1;
};

struct CubatureResult {
    double value;
    double error;  // sum of per-cell Gauss/Kronrod differences
    std::size_t cells;
    std::size_t evaluations;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]. Odd
// indices are the Gauss nodes.
struct GaussKronrod15 {
    static constexpr std::array<double, 8> xk{
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk{
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg{
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    // Node i in [0, 15), ordered from -1 to 1.
    static double node(int i) { return i < 7 ? -xk[i] : (i == 7 ? 0.0 : xk[14 - i]); }
    static double kronrod_weight(int i) { return wk[i < 8 ? i : 14 - i]; }
    // Zero on non-Gauss nodes.
    static double gauss_weight(int i) {
        const int j = i < 8 ? i : 14 - i;
        return (j % 2 == 1) ? wg[j / 2] : 0.0;
    }
};

struct Cell {
    Rect rect;
    double value;
    double error;
    bool split_x;
};

template <class F>
Cell evaluate_cell(F& f, const Rect& r, std::size_t& evaluations) {
    using GK = GaussKronrod15;
    const double hx = 0.5 * (r.x1 - r.x0), cx = 0.5 * (r.x1 + r.x0);
    const double hy = 0.5 * (r.y1 - r.y0), cy = 0.5 * (r.y1 + r.y0);
    double kk = 0, gg = 0, gk = 0, kg = 0;  // rule in x, rule in y
    for (int i = 0; i < 15; ++i) {
        const double x = cx + hx * GK::node(i);
        double col_k = 0, col_g = 0;
        for (int j = 0; j < 15; ++j) {
            const double v = f(x, cy + hy * GK::node(j));
            col_k += GK::kronrod_weight(j) * v;
            col_g += GK::gauss_weight(j) * v;
        }
        kk += GK::kronrod_weight(i) * col_k;
        kg += GK::kronrod_weight(i) * col_g;
        gk += GK::gauss_weight(i) * col_k;
        gg += GK::gauss_weight(i) * col_g;
    }
    evaluations += 225;
    const double jac = hx * hy;
    const double err_x = std::abs(kk - gk) * jac, err_y = std::abs(kk - kg) * jac;
    return {r, kk * jac, std::max(std::abs(kk - gg) * jac, err_x + err_y), err_x >= err_y};
}

}  // namespace detail

/// Globally adaptive tensor Gauss-Kronrod cubature over a union of
/// rectangles. The cell with the largest error estimate is bisected along
/// its worse direction until the summed estimate is at most
/// rel_tol * |value|. The result is summed in a fixed order, so it is
/// reproducible bit for bit.
template <class F>
CubatureResult adaptive_cubature(F&& f, const std::vector<Rect>& regions, double rel_tol,
                                 std::size_t max_cells = 40000) {
    auto cmp = [](const detail::Cell& a, const detail::Cell& b) { return a.error < b.error; };
    std::priority_queue<detail::Cell, std::vector<detail::Cell>, decltype(cmp)> heap(cmp);
    std::size_t evaluations = 0;
    double total = 0.0, error = 0.0;
    for (const auto& r : regions) heap.push(detail::evaluate_cell(f, r, evaluations));
    auto refresh = [&] {
        std::vector<detail::Cell> cells;
        auto copy = heap;
        CompensatedSum v, e;
        while (!copy.empty()) {
            cells.push_back(copy.top());
            copy.pop();
        }
        std::sort(cells.begin(), cells.end(), [](const detail::Cell& a, const detail::Cell& b) {
            if (a.rect.x0 != b.rect.x0) return a.rect.x0 < b.rect.x0;
            return a.rect.y0 < b.rect.y0;
        });
        for (const auto& c : cells) {
            v.add(c.value);
            e.add(c.error);
        }
        total = v.value();
        error = e.value();
    };
    refresh();

    // Running totals drift; recompute them exactly every so often.
    std::size_t since_refresh = 0;
    while (error > rel_tol * std::abs(total)) {
        if (heap.size() >= max_cells)
            throw QuadratureNonConvergence("cubature used " + std::to_string(heap.size()) +
                                           " cells; error estimate " + std::to_string(error) +
                                           " above tolerance");
        const detail::Cell worst = heap.top();
        heap.pop();
        Rect a = worst.rect, b = worst.rect;
        if (worst.split_x) {
            a.x1 = b.x0 = 0.5 * (worst.rect.x0 + worst.rect.x1);
        } else {
            a.y1 = b.y0 = 0.5 * (worst.rect.y0 + worst.rect.y1);
        }
        const auto ca = detail::evaluate_cell(f, a, evaluations);
        const auto cb = detail::evaluate_cell(f, b, evaluations);
        total += ca.value + cb.value - worst.value;
        error += ca.error + cb.error - worst.error;
        heap.push(ca);
        heap.push(cb);
        if (++since_refresh == 64 || error <= rel_tol * std::abs(total)) {
            refresh();
            since_refresh = 0;
        }
    }
    return {total, error, heap.size(), evaluations};
}

}  // namespace toda
