#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace hdcc::core {

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// y = x A^T + b, with A of shape (out, in).
inline std::vector<double> linear(std::span<const double> x, const Matrix &a, std::span<const double> b)
{
    if (a.data.size() != a.rows * a.cols || x.size() != a.cols || b.size() != a.rows)
        throw std::invalid_argument("linear: shape mismatch");
    std::vector<double> y(a.rows);
    for (std::size_t r = 0; r < a.rows; ++r) {
        double s = 0;
        for (std::size_t c = 0; c < a.cols; ++c)
            s += x[c] * a(r, c);
        y[r] = s + b[r];
    }
    return y;
}

/// Index of the maximum; lowest index on ties.
inline std::size_t argmax(std::span<const double> v)
{
    if (v.empty())
        throw std::invalid_argument("argmax of an empty vector");
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best])
            best = i;
    return best;
}

} // namespace hdcc::core
