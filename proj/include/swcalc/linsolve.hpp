#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "swcalc/errors.hpp"
#include "swcalc/numeric.hpp"

namespace swcalc {

/// Incrementally maintained row-echelon system of linear equations
/// `<coeffs, x> = value` over the rationals, with sparse rows keyed by `Key`.
///
/// Used to store partial knowledge of a linear functional: each recorded
/// equation pins the functional on one vector, and queries report the value
/// on any vector in the span of recorded ones.
template <class Key>
class EchelonSystem {
public:
    using Vector = std::map<Key, Rational>;

    struct Residual {
        Vector coeffs;
        Rational value;
    };

    /// Eliminates every recorded pivot from (coeffs, value).
    Residual reduce(Vector coeffs, Rational value) const {
        for (const Row& row : rows_) {
            auto it = coeffs.find(row.pivot);
            if (it == coeffs.end()) continue;
            Rational factor = it->second;  // pivot coefficient of row is 1
            for (const auto& [key, c] : row.coeffs) {
                Rational& slot = coeffs[key];
                slot -= factor * c;
                if (slot == 0) coeffs.erase(key);
            }
            value -= factor * row.value;
        }
        return {std::move(coeffs), std::move(value)};
    }

    /// Records `<coeffs, x> = value`. Returns false when the equation was
    /// already implied. Throws InconsistencyError when it contradicts the
    /// recorded equations.
    bool add(Vector coeffs, Rational value) {
        Residual r = reduce(std::move(coeffs), std::move(value));
        if (r.coeffs.empty()) {
            if (r.value != 0) throw InconsistencyError("value contradicts previously recorded values");
            return false;
        }
        Key pivot = r.coeffs.begin()->first;
        Rational lead = r.coeffs.begin()->second;
        for (auto& [key, c] : r.coeffs) c /= lead;
        r.value /= lead;
        rows_.push_back(Row{pivot, std::move(r.coeffs), std::move(r.value)});
        return true;
    }

    /// Value implied on `coeffs`, or nullopt when it is not determined.
    std::optional<Rational> evaluate(Vector coeffs) const {
        Residual r = reduce(std::move(coeffs), Rational(0));
        if (!r.coeffs.empty()) return std::nullopt;
        return -r.value;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        Key pivot;
        Vector coeffs;
        Rational value;
    };
    std::vector<Row> rows_;
};

/// Solves the dense system A x = b exactly. Returns nullopt when the system
/// is inconsistent; free variables are set to zero.
inline std::optional<std::vector<Rational>> solveExact(std::vector<std::vector<Rational>> a,
                                                       std::vector<Rational> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a.front().size();
    std::vector<std::size_t> pivotCol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rational lead = a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] /= lead;
        b[r] /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivotCol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) x[pivotCol[i]] = b[i];
    return x;
}

}  // namespace swcalc
