#pragma once

#include <vector>

#include "permcert/errors.hpp"
#include "permcert/rational.hpp"

namespace permcert {

// Dense row-major matrix of exact rationals.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> data;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {
        if (r < 0 || c < 0) throw ShapeError("RatMatrix: negative dimension");
    }

    Rat& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    bool is_square() const { return rows == cols; }

    static RatMatrix zero(int r, int c) { return RatMatrix(r, c); }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    // U_{r,c}: the all-ones matrix.
    static RatMatrix ones(int r, int c) {
        RatMatrix m(r, c);
        for (auto& e : m.data) e = 1;
        return m;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }
};

}  // namespace permcert
