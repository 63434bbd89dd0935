#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace resatlas {

using BigInt = mpz_class;
using BigRat = mpq_class;

std::string to_string(const BigInt& v);
std::string to_string(const BigRat& v);

// Process-wide table of variable names. Ids are handed out in order of first
// request and never change, so the monomial order is stable for a given
// sequence of registrations.
class VarRegistry {
public:
    static int id(const std::string& name);
    static const std::string& name(int id);
    static int size();
};

struct Monomial {
    std::vector<std::uint32_t> exps;  // indexed by variable id, trailing zeros trimmed
    std::uint32_t degree = 0;

    std::uint32_t exp(int var) const {
        return var < static_cast<int>(exps.size()) ? exps[var] : 0;
    }
    bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// Graded lexicographic: total degree first, then the first differing exponent
// (lowest variable id) decides.
int grlex_compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

using Assignment = std::map<int, BigRat>;

class MPoly {
public:
    using Term = std::pair<Monomial, BigInt>;

    MPoly() = default;
    MPoly(long c);  // NOLINT: implicit constant promotion is intended
    MPoly(const BigInt& c);  // NOLINT

    static MPoly var(const std::string& name);
    static MPoly var(int id);
    static MPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BigInt constant_term() const;
    std::uint32_t total_degree() const;
    std::vector<int> variables() const;
    // Returns the variable id if this polynomial is +-X for a single variable X.
    int single_variable() const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    // Canonical text, e.g. "3*X1^2*X2 - X4"; zero prints as "0".
    std::string to_string() const;

private:
    std::vector<Term> terms_;  // strictly decreasing in grlex, no zero coefficients
};

BigRat substitute(const MPoly& f, const Assignment& point);
MPoly substitute_partial(const MPoly& f, const Assignment& point);
Assignment make_assignment(const std::vector<std::pair<std::string, BigRat>>& values);

// Dense row-major matrix over a commutative ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, T(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
            for (auto& v : r) data_.push_back(v);
        }
    }
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    Matrix submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
        Matrix s(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
        return s;
    }
    bool is_zero() const {
        for (auto& v : data_)
            if (!(v == T(0))) return false;
        return true;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<BigRat>;
using PMatrix = Matrix<MPoly>;

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    Matrix<T> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == T(0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <class T>
Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
    Matrix<T> c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

template <class T>
Matrix<T> scale(const Matrix<T>& a, const T& s) {
    Matrix<T> c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

BigRat det(const QMatrix& m);
MPoly det(const PMatrix& m);
BigRat minor(const QMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);
MPoly minor(const PMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

// Rank by fraction-free elimination; rank_transposed eliminates on columns.
int rank(const QMatrix& m);
int rank_transposed(const QMatrix& m);
QMatrix evaluate(const PMatrix& m, const Assignment& point);
int rank_at(const PMatrix& m, const Assignment& point);

// Random integer point in [-range, range] for every listed variable such that
// every polynomial in `avoid` is nonzero there. The range doubles after every
// eight rejected draws; throws after `max_tries` draws.
Assignment seeded_random_point(std::uint64_t seed, const std::vector<int>& variables,
                               const std::vector<MPoly>& avoid, int max_tries = 64,
                               long range = 1000);

// Sign of the permutation given as a sequence of distinct integers (sorted = +1);
// returns 0 when an entry repeats.
int permutation_sign(const std::vector<int>& seq);

std::vector<std::vector<int>> k_subsets(int n, int k);

}  // namespace resatlas
