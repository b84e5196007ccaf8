#pragma once

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace hyperhodge {

// Sparse vector: (column, value) pairs sorted by column, no zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

inline SparseVec to_sparse(const std::map<std::size_t, Rational>& m)
{
    SparseVec v;
    v.reserve(m.size());
    for (const auto& [c, x] : m)
        if (x != 0) v.emplace_back(c, x);
    return v;
}

// Semi-echelon basis over Q.  Every stored row has a distinct leading column
// (its smallest column) and leading coefficient 1.  With tracking on, each row
// also carries its expression in terms of caller-supplied tags.
class Echelon {
public:
    explicit Echelon(bool track = false) : track_(track) {}

    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<SparseVec>& tags() const { return tags_; }

    // Returns true when the row was independent of the current span.
    bool insert(const SparseVec& row, const SparseVec& tag = {})
    {
        std::map<std::size_t, Rational> w(row.begin(), row.end());
        std::map<std::size_t, Rational> tg;
        if (track_) tg.insert(tag.begin(), tag.end());
        while (!w.empty()) {
            auto it = w.begin();
            auto p = pivot_.find(it->first);
            if (p == pivot_.end()) break;
            Rational f = it->second;
            axpy(w, -f, rows_[p->second]);
            if (track_) axpy(tg, -f, tags_[p->second]);
        }
        if (w.empty()) return false;
        Rational lead = w.begin()->second;
        SparseVec r;
        r.reserve(w.size());
        for (auto& [c, x] : w) r.emplace_back(c, x / lead);
        pivot_.emplace(r.front().first, rows_.size());
        rows_.push_back(std::move(r));
        if (track_) {
            SparseVec t;
            for (auto& [c, x] : tg)
                if (x != 0) t.emplace_back(c, x / lead);
            tags_.push_back(std::move(t));
        }
        return true;
    }

    struct Reduction {
        SparseVec remainder;
        SparseVec combination; // v - remainder = sum combination[i] * tagged input i
    };

    Reduction reduce(const SparseVec& v) const
    {
        std::map<std::size_t, Rational> w(v.begin(), v.end());
        std::map<std::size_t, Rational> comb;
        auto it = w.begin();
        while (it != w.end()) {
            auto p = pivot_.find(it->first);
            if (p == pivot_.end()) {
                ++it;
                continue;
            }
            std::size_t col = it->first;
            Rational f = it->second;
            axpy(w, -f, rows_[p->second]);
            if (track_) axpy(comb, f, tags_[p->second]);
            it = w.upper_bound(col);
        }
        return {to_sparse(w), to_sparse(comb)};
    }

    bool contains(const SparseVec& v) const { return reduce(v).remainder.empty(); }

private:
    bool track_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> tags_;
    std::unordered_map<std::size_t, std::size_t> pivot_;

    static void axpy(std::map<std::size_t, Rational>& w, const Rational& f, const SparseVec& row)
    {
        for (const auto& [c, x] : row) {
            auto [it, fresh] = w.try_emplace(c, f * x);
            if (!fresh) {
                it->second += f * x;
                if (it->second == 0) w.erase(it);
            }
        }
    }
};

// Basis of the rational nullspace of a dense matrix.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> m, std::size_t ncols)
{
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < ncols; ++j) m[i][j] -= f * m[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(ncols, false);
    for (auto c : pivcol) is_piv[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(ncols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace hyperhodge
