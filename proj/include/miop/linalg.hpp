#pragma once

#include <vector>

#include "rational.hpp"

namespace miop {

/// Dense row-major matrix over Q, just enough for exact nullspaces and fits.
class QMatrix {
public:
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    /// Basis of {x : A x = 0}, via reduced row echelon form.
    [[nodiscard]] std::vector<std::vector<Rational>> nullspace() const {
        QMatrix m = *this;
        std::vector<std::size_t> pivot_col;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && sgn(m(p, c)) == 0) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(r, j));
            Rational inv = 1 / m(r, c);
            for (std::size_t j = c; j < cols_; ++j) m(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || sgn(m(i, c)) == 0) continue;
                Rational f = m(i, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
            }
            pivot_col.push_back(c);
            ++r;
        }
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        std::vector<std::vector<Rational>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Rational> v(cols_, Rational(0));
            v[free] = 1;
            for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -m(k, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

}  // namespace miop
