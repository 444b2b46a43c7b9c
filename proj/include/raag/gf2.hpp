#ifndef RAAG_GF2_HPP
#define RAAG_GF2_HPP

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raag/bits.hpp"

namespace raag {

class Gf2Error : public std::invalid_argument {
public:
    enum class Kind { ShapeMismatch, NotAlternating };

    Gf2Error(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Dense bit-packed matrix over GF(2), one BitVector per row.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.set(i, i);
        }
        return m;
    }

    /// Rows given as '0'/'1' strings of equal length.
    static Gf2Matrix from_rows(const std::vector<std::string>& rows) {
        Gf2Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) {
                throw Gf2Error(Gf2Error::Kind::ShapeMismatch, "from_rows: ragged row " + std::to_string(i));
            }
            m.rows_[i] = BitVector::from_string(rows[i]);
        }
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows() == cols_; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].assign(c, value); }
    void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }

    const BitVector& row(std::size_t r) const { return rows_[r]; }
    BitVector& row(std::size_t r) { return rows_[r]; }

    BitVector column(std::size_t c) const {
        BitVector out(rows());
        for (std::size_t r = 0; r < rows(); ++r) {
            out.assign(r, rows_[r].test(c));
        }
        return out;
    }

    Gf2Matrix transposed() const {
        Gf2Matrix t(cols_, rows());
        for (std::size_t r = 0; r < rows(); ++r) {
            for (std::size_t c = rows_[r].find_first(); c < cols_; c = rows_[r].find_next(c + 1)) {
                t.set(c, r);
            }
        }
        return t;
    }

    /// M x.
    BitVector apply(const BitVector& x) const {
        if (x.size() != cols_) {
            throw Gf2Error(Gf2Error::Kind::ShapeMismatch, "apply: vector length " + std::to_string(x.size()) +
                                                              ", matrix has " + std::to_string(cols_) + " columns");
        }
        BitVector out(rows());
        for (std::size_t r = 0; r < rows(); ++r) {
            out.assign(r, rows_[r].dot(x));
        }
        return out;
    }

    /// xᵀ M y.
    bool bilinear(const BitVector& x, const BitVector& y) const { return x.dot(apply(y)); }

    bool is_zero() const {
        for (const auto& r : rows_) {
            if (r.any()) {
                return false;
            }
        }
        return true;
    }

    bool is_symmetric() const { return square() && *this == transposed(); }

    /// Symmetric with zero diagonal, so x·x = 0 for every x.
    bool is_alternating() const {
        if (!is_symmetric()) {
            return false;
        }
        for (std::size_t i = 0; i < rows(); ++i) {
            if (get(i, i)) {
                return false;
            }
        }
        return true;
    }

    /// Rows of 0/1 separated by spaces, one row per line.
    std::string to_string() const {
        std::ostringstream os;
        for (const auto& r : rows_) {
            for (std::size_t c = 0; c < cols_; ++c) {
                os << (c != 0 ? " " : "") << (r.test(c) ? '1' : '0');
            }
            os << '\n';
        }
        return os.str();
    }

    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Row rank by Gaussian elimination on a copy.
inline std::size_t rank_gf2(Gf2Matrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && !m.get(pivot, c)) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        std::swap(m.row(pivot), m.row(rank));
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (m.get(r, c)) {
                m.row(r) ^= m.row(rank);
            }
        }
        ++rank;
    }
    return rank;
}

/// Basis of {x : M x = 0}, one vector per free column of the reduced echelon
/// form, ordered by that column. Its size is cols - rank.
inline std::vector<BitVector> kernel_basis(Gf2Matrix m) {
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && !m.get(pivot, c)) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        std::swap(m.row(pivot), m.row(rank));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != rank && m.get(r, c)) {
                m.row(r) ^= m.row(rank);
            }
        }
        pivot_cols.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        BitVector v = BitVector::unit(m.cols(), free);
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
            if (m.get(i, free)) {
                v.set(pivot_cols[i]);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Orthogonal splitting of an alternating form into hyperbolic planes plus its radical.
struct SymplecticDecomposition {
    std::vector<std::pair<BitVector, BitVector>> hyperbolic_pairs;  // x·y = 1
    std::vector<BitVector> radical;

    std::size_t rank() const { return 2 * hyperbolic_pairs.size(); }
};

namespace detail {

inline void require_alternating(const Gf2Matrix& m, const char* who) {
    if (!m.is_alternating()) {
        throw Gf2Error(Gf2Error::Kind::NotAlternating,
                       std::string(who) + ": matrix is not alternating (symmetric with zero diagonal)");
    }
}

}  // namespace detail

/// Repeatedly takes the lowest-index vector x that pairs nontrivially with a
/// remaining vector, its partner y being the lowest-index such vector, and
/// projects every other remaining z to z + (z·y)x + (z·x)y. What never pairs
/// is the radical. Starts from the standard basis.
inline SymplecticDecomposition symplectic_reduce(const Gf2Matrix& m) {
    detail::require_alternating(m, "symplectic_reduce");
    const std::size_t n = m.rows();
    std::vector<BitVector> work;
    std::vector<BitVector> image;  // image[i] = M work[i]
    work.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        work.push_back(BitVector::unit(n, i));
        image.push_back(m.row(i));
    }
    SymplecticDecomposition out;
    while (true) {
        std::size_t xi = work.size();
        std::size_t yi = work.size();
        for (std::size_t i = 0; i < work.size() && xi == work.size(); ++i) {
            for (std::size_t j = 0; j < work.size(); ++j) {
                if (j != i && work[j].dot(image[i])) {
                    xi = i;
                    yi = j;
                    break;
                }
            }
        }
        if (xi == work.size()) {
            break;
        }
        const BitVector x = work[xi];
        const BitVector y = work[yi];
        const BitVector mx = image[xi];
        const BitVector my = image[yi];
        std::vector<BitVector> next_work;
        std::vector<BitVector> next_image;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (i == xi || i == yi) {
                continue;
            }
            BitVector z = work[i];
            BitVector mz = image[i];
            const bool zy = z.dot(my);
            const bool zx = z.dot(mx);
            if (zy) {
                z ^= x;
                mz ^= mx;
            }
            if (zx) {
                z ^= y;
                mz ^= my;
            }
            next_work.push_back(std::move(z));
            next_image.push_back(std::move(mz));
        }
        work = std::move(next_work);
        image = std::move(next_image);
        out.hyperbolic_pairs.emplace_back(x, y);
    }
    out.radical = std::move(work);
    return out;
}

/// A maximal isotropic set: the radical plus the first vector of every
/// hyperbolic pair. Has size n - rank/2.
inline std::vector<BitVector> max_isotropic(const Gf2Matrix& m) {
    SymplecticDecomposition d = symplectic_reduce(m);
    std::vector<BitVector> out = std::move(d.radical);
    for (auto& [x, y] : d.hyperbolic_pairs) {
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace raag

#endif  // RAAG_GF2_HPP
