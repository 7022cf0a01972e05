#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/rational.hpp"

namespace nodal {

/// Incremental exact row reduction of an augmented system over the
/// rationals. Rows are fed one at a time; each either raises the rank,
/// is consistent with the rows so far, or exposes an inconsistency.
class ExactEchelon {
public:
    explicit ExactEchelon(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    bool full_rank() const { return rank() == cols_; }
    const std::vector<std::size_t>& pivot_bits() const { return pivot_bits_; }

    enum class RowFate { independent, redundant, inconsistent };

    /// Reduce the augmented row (lhs | rhs) against the echelon.
    /// `independent`: the row raised the rank and was absorbed.
    /// `redundant`: the row is a consequence of earlier rows.
    /// `inconsistent`: lhs reduced to zero but rhs did not.
    RowFate add_row(std::vector<Rational> lhs, Rational rhs) {
        if (lhs.size() != cols_) throw usage_error("ExactEchelon: wrong row width");
        reduce(lhs, rhs);
        std::size_t p = cols_;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!lhs[j].is_zero()) {
                p = j;
                break;
            }
        }
        if (p == cols_) return rhs.is_zero() ? RowFate::redundant : RowFate::inconsistent;

        Rational pivot = lhs[p];
        pivot_bits_.push_back(msb_bits(pivot));
        Rational inv = pivot.inverse();
        for (auto& v : lhs) v *= inv;
        rhs *= inv;
        rows_.push_back(Row{p, std::move(lhs), std::move(rhs)});
        std::sort(rows_.begin(), rows_.end(),
                  [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
        return RowFate::independent;
    }

    /// Check a row against the current echelon without absorbing it.
    bool is_consistent(std::vector<Rational> lhs, Rational rhs) const {
        reduce(lhs, rhs);
        for (const auto& v : lhs)
            if (!v.is_zero()) return false;  // not determined: treat as unverifiable
        return rhs.is_zero();
    }

    /// Unique solution once the echelon is square and of full rank.
    std::vector<Rational> solve() const {
        if (!full_rank()) throw usage_error("ExactEchelon: system is not of full rank");
        std::vector<Rational> x(cols_, Rational(0));
        for (std::size_t i = rows_.size(); i-- > 0;) {
            const Row& r = rows_[i];
            Rational v = r.rhs;
            for (std::size_t j = r.pivot + 1; j < cols_; ++j) {
                if (!r.lhs[j].is_zero()) v -= r.lhs[j] * x[j];
            }
            x[r.pivot] = v;  // pivot entries are normalized to 1
        }
        return x;
    }

private:
    struct Row {
        std::size_t pivot;
        std::vector<Rational> lhs;
        Rational rhs;
    };

    void reduce(std::vector<Rational>& lhs, Rational& rhs) const {
        for (const Row& r : rows_) {
            const Rational& c = lhs[r.pivot];
            if (c.is_zero()) continue;
            Rational f = c;  // pivot normalized to 1
            for (std::size_t j = r.pivot; j < cols_; ++j) {
                if (!r.lhs[j].is_zero()) lhs[j] -= f * r.lhs[j];
            }
            rhs -= f * r.rhs;
        }
    }

    static std::size_t msb_bits(const Rational& r) {
        BigInt n = r.numerator() < 0 ? BigInt(-r.numerator()) : r.numerator();
        std::size_t bits = 0;
        while (n > 0) {
            ++bits;
            n >>= 1;
        }
        BigInt d = r.denominator();
        std::size_t dbits = 0;
        while (d > 1) {
            ++dbits;
            d >>= 1;
        }
        return bits + dbits;
    }

    std::size_t cols_;
    std::vector<Row> rows_;
    std::vector<std::size_t> pivot_bits_;
};

} // namespace nodal
