#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"

namespace pglue {

/// Dense row-major matrix over GF(p).
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<Elem> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw InputError("matrix entry count does not match shape");
        for (auto& e : data_) e %= characteristic();
    }
    /// Row-list literal; integers are reduced mod p.
    Mat(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw InputError("ragged matrix literal");
            for (long v : r) data_.push_back(gf::reduce(v));
        }
    }

    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const std::vector<Elem>& entries() const { return data_; }

    Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
        Mat c(a.rows_, b.cols_);
        const std::uint64_t p = characteristic();
        std::vector<std::uint64_t> acc(b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const std::uint64_t aik = a(i, k);
                if (!aik) continue;
                const Elem* brow = &b.data_[k * b.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    acc[j] += aik * brow[j];
                    if (acc[j] >= (1ull << 62)) acc[j] %= p;
                }
            }
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = static_cast<Elem>(acc[j] % p);
        }
        return c;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        a.require_same_shape(b);
        Mat c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = gf::add(c.data_[i], b.data_[i]);
        return c;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        a.require_same_shape(b);
        Mat c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = gf::sub(c.data_[i], b.data_[i]);
        return c;
    }
    friend Mat operator-(const Mat& a) {
        Mat c = a;
        for (auto& e : c.data_) e = gf::neg(e);
        return c;
    }
    [[nodiscard]] Mat scaled(Elem s) const {
        Mat c = *this;
        for (auto& e : c.data_) e = gf::mul(e, s);
        return c;
    }

    [[nodiscard]] Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Copy `src` into this matrix with its top-left corner at (r0, c0).
    void paste(const Mat& src, std::size_t r0, std::size_t c0) {
        if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) throw InputError("paste out of bounds");
        for (std::size_t i = 0; i < src.rows_; ++i)
            std::copy_n(&src.data_[i * src.cols_], src.cols_, &data_[(r0 + i) * cols_ + c0]);
    }

    [[nodiscard]] Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw InputError("block out of bounds");
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    [[nodiscard]] Mat select_columns(const std::vector<std::size_t>& idx) const {
        Mat b(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
        return b;
    }

    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    /// Literal syntax: rows separated by ';', entries by spaces; empty shapes print as "~".
    friend std::ostream& operator<<(std::ostream& os, const Mat& m) {
        if (m.rows_ == 0 || m.cols_ == 0) return os << "~";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (i) os << "; ";
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
        }
        return os;
    }

private:
    void require_same_shape(const Mat& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw InputError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

inline Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw InputError("hstack row mismatch");
    Mat c(a.rows(), a.cols() + b.cols());
    c.paste(a, 0, 0);
    c.paste(b, 0, a.cols());
    return c;
}

inline Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw InputError("vstack column mismatch");
    Mat c(a.rows() + b.rows(), a.cols());
    c.paste(a, 0, 0);
    c.paste(b, a.rows(), 0);
    return c;
}

inline Mat block_diag(const Mat& a, const Mat& b) {
    Mat c(a.rows() + b.rows(), a.cols() + b.cols());
    c.paste(a, 0, 0);
    c.paste(b, a.rows(), a.cols());
    return c;
}

/// [[a, b], [c, d]] with compatible block shapes.
inline Mat block2x2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
        throw InputError("block2x2 shape mismatch");
    Mat m(a.rows() + c.rows(), a.cols() + b.cols());
    m.paste(a, 0, 0);
    m.paste(b, 0, a.cols());
    m.paste(c, a.rows(), 0);
    m.paste(d, a.rows(), a.cols());
    return m;
}

struct RrefResult {
    Mat reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form with first-nonzero pivoting.
inline RrefResult rref(Mat m) {
    RrefResult out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        const Elem s = gf::inv(m(r, c));
        for (std::size_t j = c; j < cols; ++j) m(r, j) = gf::mul(m(r, j), s);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Elem f = m(i, c);
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) m(i, j) = gf::sub(m(i, j), gf::mul(f, m(r, j)));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    // Eliminate along the shorter side.
    return m.rows() <= m.cols() ? rref(m).rank : rref(m.transpose()).rank;
}

/// Columns form a basis of {x : M x = 0}.
inline Mat kernel_basis(const Mat& m) {
    const auto rr = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : rr.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free.push_back(c);
    Mat k(n, free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        k(free[f], f) = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            k(rr.pivots[i], f) = gf::neg(rr.reduced(i, free[f]));
    }
    return k;
}

/// Some X with A X = B, or nullopt when the system is inconsistent.
inline std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw InputError("solve: rows(A) != rows(b)");
    const std::size_t n = a.cols();
    const auto rr = rref(hstack(a, b));
    Mat x(n, b.cols());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        const std::size_t c = rr.pivots[i];
        if (c >= n) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = rr.reduced(i, n + j);
    }
    return x;
}

/// Some Y with Y A = B.
inline std::optional<Mat> solve_left(const Mat& a, const Mat& b) {
    auto t = solve(a.transpose(), b.transpose());
    if (!t) return std::nullopt;
    return t->transpose();
}

/// Column indices of `cols` extending the column space of `base` to that of [base | cols].
inline std::vector<std::size_t> complement_columns(const Mat& base, const Mat& cols) {
    const auto rr = rref(hstack(base, cols));
    std::vector<std::size_t> out;
    for (auto c : rr.pivots)
        if (c >= base.cols()) out.push_back(c - base.cols());
    return out;
}

/// Rows of the result span the left null space of M, so the result is a surjection
/// onto the cokernel of M.
inline Mat cokernel_projection(const Mat& m) { return kernel_basis(m.transpose()).transpose(); }

}  // namespace pglue
