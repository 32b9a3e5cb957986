#pragma once

// Sparse fraction-free row echelon form over the integers, with optional
// tracking of how each stored row was combined from the inserted ones.

#include <bhlab/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bhlab {

/// Sorted (column, value) pairs with no zero values.
using SparseVec = std::vector<std::pair<std::size_t, Integer>>;

inline Integer content(const SparseVec &v, const SparseVec *tag = nullptr)
{
    Integer g = 0;
    for (const auto &[c, x] : v) {
        g = gcd(g, x);
        if (g == 1) return g;
    }
    if (tag)
        for (const auto &[c, x] : *tag) g = gcd(g, x);
    return g;
}

inline void remove_content(SparseVec &v, SparseVec *tag = nullptr)
{
    Integer g = content(v, tag);
    if (g == 0 || g == 1) return;
    for (auto &[c, x] : v) x /= g;
    if (tag)
        for (auto &[c, x] : *tag) x /= g;
}

/// a*u - b*w
inline SparseVec combine(const Integer &a, const SparseVec &u, const Integer &b, const SparseVec &w)
{
    SparseVec r;
    r.reserve(u.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < u.size() || j < w.size()) {
        if (j == w.size() || (i < u.size() && u[i].first < w[j].first)) {
            r.emplace_back(u[i].first, a * u[i].second);
            ++i;
        } else if (i == u.size() || w[j].first < u[i].first) {
            r.emplace_back(w[j].first, -b * w[j].second);
            ++j;
        } else {
            Integer x = a * u[i].second - b * w[j].second;
            if (x != 0) r.emplace_back(u[i].first, std::move(x));
            ++i;
            ++j;
        }
    }
    return r;
}

/// Converts rational entries to a primitive integer row; returns the scale
/// s with (integer row) = s * (rational row).
inline SparseVec integer_row(const std::vector<std::pair<std::size_t, Rational>> &q, Rational *scale = nullptr)
{
    Integer l = 1;
    for (const auto &[c, x] : q) l = lcm(l, x.get_den());
    SparseVec r;
    for (const auto &[c, x] : q) {
        Rational y = x * Rational(l);
        if (y != 0) r.emplace_back(c, y.get_num());
    }
    if (scale) *scale = Rational(l);
    return r;
}

class Echelon
{
public:
    explicit Echelon(bool track = false) : track_(track) {}

    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVec> &rows() const { return rows_; }
    const std::vector<SparseVec> &tags() const { return tags_; }

    /// Reduces v (and its tag) against the stored rows. On return v has no
    /// entry in a pivot column; v and tag have been scaled by a common
    /// nonzero rational, accumulated into *scale when given.
    void reduce(SparseVec &v, SparseVec *tag = nullptr, Rational *scale = nullptr) const
    {
        std::size_t pos = 0, steps = 0;
        while (pos < v.size()) {
            auto it = pivot_.find(v[pos].first);
            if (it == pivot_.end()) {
                ++pos;
                continue;
            }
            const SparseVec &p = rows_[it->second];
            Integer a = p.front().second, b = v[pos].second;
            Integer g = gcd(a, b);
            a /= g;
            b /= g;
            v = combine(a, v, b, p);
            if (tag) *tag = combine(a, *tag, b, tags_[it->second]);
            if (scale) *scale *= Rational(a);
            if (++steps % 8 == 0) {
                Integer c = content(v, tag);
                if (c > 1) {
                    for (auto &[col, x] : v) x /= c;
                    if (tag)
                        for (auto &[col, x] : *tag) x /= c;
                    if (scale) *scale /= Rational(c);
                }
            }
        }
    }

    /// Inserts a row; returns true when it increased the rank.
    bool insert(SparseVec v, SparseVec tag = {})
    {
        reduce(v, track_ ? &tag : nullptr);
        if (v.empty()) return false;
        if (track_) remove_content(v, &tag);
        else remove_content(v);
        pivot_.emplace(v.front().first, rows_.size());
        rows_.push_back(std::move(v));
        if (track_) tags_.push_back(std::move(tag));
        return true;
    }

private:
    bool track_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> tags_;
    std::unordered_map<std::size_t, std::size_t> pivot_;
};

} // namespace bhlab
