#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "rational.hpp"

namespace hyperhodge {

using IntVec = std::vector<Integer>;

// Dense d x N integer matrix stored by rows.
struct IntMatrix {
    std::vector<IntVec> entries;

    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : entries(rows, IntVec(cols, 0)) {}
    explicit IntMatrix(std::vector<IntVec> e) : entries(std::move(e))
    {
        for (const auto& r : entries)
            if (r.size() != cols()) throw ValidationError("ragged matrix");
    }
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        for (const auto& r : rows) {
            IntVec v;
            for (long x : r) v.emplace_back(x);
            entries.push_back(std::move(v));
        }
        for (const auto& r : entries)
            if (r.size() != cols()) throw ValidationError("ragged matrix");
    }

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
    Integer& at(std::size_t i, std::size_t j) { return entries[i][j]; }
    const Integer& at(std::size_t i, std::size_t j) const { return entries[i][j]; }

    IntVec column(std::size_t j) const
    {
        IntVec c(rows());
        for (std::size_t i = 0; i < rows(); ++i) c[i] = entries[i][j];
        return c;
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols(), rows());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) t.at(j, i) = at(i, j);
        return t;
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols() != b.rows()) throw ValidationError("matrix size mismatch");
        IntMatrix c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a.at(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }

    bool operator==(const IntMatrix&) const = default;
};

inline Integer dot(const IntVec& a, const IntVec& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVec& a, const std::vector<Rational>& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += Rational(a[i]) * b[i];
    return s;
}

inline nlohmann::json to_json(const IntMatrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : m.entries) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : r) row.push_back(x.fits_slong_p() ? nlohmann::json(x.get_si()) : nlohmann::json(x.get_str()));
        rows.push_back(row);
    }
    return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline IntMatrix int_matrix_from_json(const nlohmann::json& j)
{
    const auto& e = j.is_object() ? j.at("entries") : j;
    if (!e.is_array() || e.empty()) throw ValidationError("matrix must be a nonempty list of rows");
    std::vector<IntVec> rows;
    for (const auto& r : e) {
        IntVec v;
        for (const auto& x : r) v.emplace_back(x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<long>()));
        rows.push_back(std::move(v));
    }
    IntMatrix m(std::move(rows));
    if (m.cols() == 0) throw ValidationError("matrix has no columns");
    return m;
}

inline std::string vec_str(const IntVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

// Makes the first nonzero entry positive.
inline IntVec canonical_sign(IntVec v)
{
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

struct HermiteForm {
    IntMatrix H;
    IntMatrix U; // unimodular, H = U * M
    std::size_t rank = 0;
};

// Row Hermite normal form: pivots positive, entries above a pivot reduced into [0, pivot).
inline HermiteForm hermite_normal_form(const IntMatrix& m)
{
    HermiteForm f{m, IntMatrix::identity(m.rows()), 0};
    auto& H = f.H;
    auto& U = f.U;
    const std::size_t rows = H.rows(), cols = H.cols();
    auto combine = [&](std::size_t r, std::size_t i, const Integer& s, const Integer& t, const Integer& u,
                       const Integer& v) {
        // row_r <- s row_r + t row_i ; row_i <- u row_r + v row_i
        for (auto* M : {&H, &U}) {
            for (std::size_t j = 0; j < M->cols(); ++j) {
                Integer a = M->at(r, j), b = M->at(i, j);
                M->at(r, j) = s * a + t * b;
                M->at(i, j) = u * a + v * b;
            }
        }
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (H.at(i, c) == 0) continue;
            Integer a = H.at(r, c), b = H.at(i, c), g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            combine(r, i, s, t, -b / g, a / g);
        }
        if (H.at(r, c) == 0) continue;
        if (H.at(r, c) < 0) {
            for (auto* M : {&H, &U})
                for (std::size_t j = 0; j < M->cols(); ++j) M->at(r, j) = -M->at(r, j);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), H.at(i, c).get_mpz_t(), H.at(r, c).get_mpz_t());
            if (q == 0) continue;
            for (auto* M : {&H, &U})
                for (std::size_t j = 0; j < M->cols(); ++j) M->at(i, j) -= q * M->at(r, j);
        }
        ++r;
    }
    f.rank = r;
    return f;
}

inline std::size_t matrix_rank(const IntMatrix& m) { return hermite_normal_form(m).rank; }

// Nonzero diagonal entries of the Smith normal form.
inline std::vector<Integer> elementary_divisors(IntMatrix m)
{
    std::vector<Integer> out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m.at(i, j) != 0 && (pi == rows || abs(m.at(i, j)) < abs(m.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(m.entries[t], m.entries[pi]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, t), m.at(i, pj));
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
                for (std::size_t j = t; j < cols; ++j) m.at(i, j) -= q * m.at(t, j);
                if (m.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) m.at(i, j) -= q * m.at(i, t);
                if (m.at(t, j) != 0) clean = false;
            }
            if (!clean) {
                // Move the smallest remaining entry of row/column t to the pivot.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t; i < rows; ++i)
                    if (m.at(i, t) != 0 && abs(m.at(i, t)) < abs(m.at(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t; j < cols; ++j)
                    if (m.at(t, j) != 0 && abs(m.at(t, j)) < abs(m.at(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                std::swap(m.entries[t], m.entries[bi]);
                for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, t), m.at(i, bj));
                continue;
            }
            // Divisibility: the pivot must divide the rest of the block.
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols && clean; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        for (std::size_t jj = t; jj < cols; ++jj) m.at(t, jj) += m.at(i, jj);
                        clean = false;
                    }
        }
        out.push_back(abs(m.at(t, t)));
        ++t;
    }
    return out;
}

// Rows span the integer kernel {l : A l = 0}; saturated because they come from
// a unimodular transform.
inline std::vector<IntVec> kernel_basis(const IntMatrix& A)
{
    auto f = hermite_normal_form(A.transpose());
    if (f.rank != A.rows()) throw ValidationError("kernel_basis needs a matrix of full row rank");
    std::vector<IntVec> out;
    for (std::size_t i = f.rank; i < f.U.rows(); ++i) out.push_back(canonical_sign(f.U.entries[i]));
    return out;
}

inline bool check_full_lattice(const IntMatrix& A)
{
    auto d = elementary_divisors(A);
    if (d.size() != A.rows()) return false;
    return std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 1; });
}

} // namespace hyperhodge
