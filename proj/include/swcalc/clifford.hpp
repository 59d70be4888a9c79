#pragma once

// A fixed matrix model of the Clifford algebra of Euclidean R^4 acting on
// W = W+ (+) W- (complex dimension 2 + 2), with exact Gaussian-rational
// entries, and the pointwise identities between exterior forms acting on W.
//
// Conventions of the model:
//  - basis of W is (W+_1, W+_2, W-_1, W-_2);
//  - rho(theta^j) = [[0, -B_j^*], [B_j, 0]] with B = (1, i sx, i sy, -i sz),
//    so rho(theta^i) rho(theta^j) + rho(theta^j) rho(theta^i) = -2 delta_ij;
//  - the volume element rho(theta^1) ... rho(theta^4) is +1 on W+ and -1 on W-;
//  - a p-form theta^{i_1} ^ ... ^ theta^{i_p} acts by the Clifford product;
//  - the Hodge star is *theta^I = sgn(I, J) theta^J with J the complement of I;
//  - contraction of a 1-form into a form uses the Clifford pairing -delta_ij,
//    while contraction on the 1-form factor of a mixed form uses +delta_ij.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swcalc/errors.hpp"
#include "swcalc/linsolve.hpp"
#include "swcalc/numeric.hpp"

namespace swcalc::clifford {

/// Gaussian rational re + i im.
struct Complex {
    Rational re;
    Rational im;

    Complex() = default;
    Complex(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Complex conj() const { return {re, -im}; }
    bool isZero() const { return re == 0 && im == 0; }
    bool operator==(const Complex&) const = default;

    std::string str() const {
        if (im == 0) return toString(re);
        std::string imag = (im == 1 ? "" : im == -1 ? "-" : toString(im)) + "i";
        if (re == 0) return imag;
        return toString(re) + (im > 0 ? "+" : "") + imag;
    }
};

constexpr std::size_t kDim = 4;

class Matrix {
public:
    Matrix() {
        for (auto& row : a_) row.fill(Complex(0));
    }

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < kDim; ++i) m.a_[i][i] = Complex(1);
        return m;
    }

    Complex& operator()(std::size_t r, std::size_t c) { return a_[r][c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r][c]; }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        Matrix out;
        for (std::size_t r = 0; r < kDim; ++r)
            for (std::size_t c = 0; c < kDim; ++c) out.a_[r][c] = x.a_[r][c] + y.a_[r][c];
        return out;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        Matrix out;
        for (std::size_t r = 0; r < kDim; ++r)
            for (std::size_t c = 0; c < kDim; ++c) out.a_[r][c] = x.a_[r][c] - y.a_[r][c];
        return out;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        Matrix out;
        for (std::size_t r = 0; r < kDim; ++r)
            for (std::size_t k = 0; k < kDim; ++k) {
                if (x.a_[r][k].isZero()) continue;
                for (std::size_t c = 0; c < kDim; ++c) out.a_[r][c] = out.a_[r][c] + x.a_[r][k] * y.a_[k][c];
            }
        return out;
    }
    friend Matrix operator*(const Complex& s, const Matrix& x) {
        Matrix out;
        for (std::size_t r = 0; r < kDim; ++r)
            for (std::size_t c = 0; c < kDim; ++c) out.a_[r][c] = s * x.a_[r][c];
        return out;
    }

    bool isZero() const {
        for (const auto& row : a_)
            for (const auto& v : row)
                if (!v.isZero()) return false;
        return true;
    }

    bool operator==(const Matrix&) const = default;

    std::string str() const {
        std::string out = "[";
        for (std::size_t r = 0; r < kDim; ++r) {
            out += r ? "; " : "";
            for (std::size_t c = 0; c < kDim; ++c) out += (c ? " " : "") + a_[r][c].str();
        }
        return out + "]";
    }

private:
    std::array<std::array<Complex, kDim>, kDim> a_;
};

/// Rows/columns 0, 1 span W+, rows/columns 2, 3 span W-.
inline bool isPlus(std::size_t i) { return i < 2; }

/// The block of m mapping the `from` summand to the `to` summand.
inline bool blockIsZero(const Matrix& m, bool fromPlus, bool toPlus) {
    for (std::size_t r = 0; r < kDim; ++r)
        for (std::size_t c = 0; c < kDim; ++c)
            if (isPlus(r) == toPlus && isPlus(c) == fromPlus && !m(r, c).isZero()) return false;
    return true;
}

/// Maps W+ to W- and W- to W+.
inline bool exchangesChirality(const Matrix& m) { return blockIsZero(m, true, true) && blockIsZero(m, false, false); }

/// Preserves W+ and W-.
inline bool preservesChirality(const Matrix& m) {
    return blockIsZero(m, true, false) && blockIsZero(m, false, true);
}

/// Equality of the restrictions to W+ (the first two columns).
inline bool agreeOnWPlus(const Matrix& x, const Matrix& y) {
    for (std::size_t r = 0; r < kDim; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            if (!(x(r, c) == y(r, c))) return false;
    return true;
}

inline Complex traceOnWPlus(const Matrix& m) { return m(0, 0) + m(1, 1); }

// ---------------------------------------------------------------------------
// Exterior forms on R^4 with orthonormal coframe theta^1..theta^4.

/// Linear combination of basis forms theta^I, I strictly increasing (1-based).
class Form {
public:
    using Index = std::vector<int>;

    Form() = default;

    /// c * theta^{i_1} ^ ... ^ theta^{i_p} for an arbitrary index sequence.
    static Form basis(const Index& indices, Rational c = Rational(1)) {
        Form f;
        f.add(indices, std::move(c));
        return f;
    }

    static Form one(int i, Rational c = Rational(1)) { return basis({i}, std::move(c)); }

    const std::map<Index, Rational>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    std::optional<int> degree() const {
        std::optional<int> d;
        for (const auto& [idx, c] : terms_) {
            if (d && *d != static_cast<int>(idx.size())) return std::nullopt;
            d = static_cast<int>(idx.size());
        }
        return d;
    }

    void add(Index indices, Rational c) {
        if (c == 0) return;
        for (int i : indices)
            if (i < 1 || i > 4) throw ValidationError("form index " + std::to_string(i) + " out of range 1..4");
        int s = sortSign(indices);
        if (s == 0) return;
        if (s < 0) c = -c;
        auto [it, inserted] = terms_.try_emplace(std::move(indices), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Form operator+(Form a, const Form& b) {
        for (const auto& [idx, c] : b.terms_) a.add(idx, c);
        return a;
    }
    friend Form operator-(Form a, const Form& b) {
        for (const auto& [idx, c] : b.terms_) a.add(idx, -c);
        return a;
    }
    friend Form operator*(const Rational& s, const Form& a) {
        Form out;
        for (const auto& [idx, c] : a.terms_) out.add(idx, s * c);
        return out;
    }

    friend Form wedge(const Form& a, const Form& b) {
        Form out;
        for (const auto& [i, c] : a.terms_)
            for (const auto& [j, d] : b.terms_) {
                Index k = i;
                k.insert(k.end(), j.begin(), j.end());
                out.add(std::move(k), c * d);
            }
        return out;
    }

    bool operator==(const Form&) const = default;

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [idx, c] : terms_) {
            Rational a = c;
            if (!first) out += a < 0 ? " - " : " + ";
            else if (a < 0) out += "-";
            if (a < 0) a = -a;
            first = false;
            if (a != 1 || idx.empty()) out += toString(a) + (idx.empty() ? "" : "*");
            if (!idx.empty()) {
                out += "e";
                for (int i : idx) out += std::to_string(i);
            }
        }
        return out;
    }

    /// Sign of the sorting permutation; 0 on a repeated index. Sorts in place.
    static int sortSign(Index& idx) {
        int sign = 1;
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
                if (idx[j] > idx[j + 1]) {
                    std::swap(idx[j], idx[j + 1]);
                    sign = -sign;
                }
        for (std::size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] == idx[i + 1]) return 0;
        return sign;
    }

private:
    std::map<Index, Rational> terms_;
};

/// *theta^I = sgn(I, J) theta^J.
inline Form hodgeStar(const Form& f) {
    Form out;
    for (const auto& [idx, c] : f.terms()) {
        Form::Index full = idx;
        for (int j = 1; j <= 4; ++j)
            if (std::find(idx.begin(), idx.end(), j) == idx.end()) full.push_back(j);
        Form::Index perm = full;
        int s = Form::sortSign(perm);
        out.add(Form::Index(full.begin() + static_cast<std::ptrdiff_t>(idx.size()), full.end()), s * c);
    }
    return out;
}

/// Interior product of a 1-form into a form, with the Clifford pairing
/// <theta^i, theta^j> = -delta_ij.
inline Form cliffordContraction(const Form& theta, const Form& gamma) {
    if (theta.degree().value_or(1) != 1) throw ValidationError("contraction needs a 1-form");
    Form out;
    for (const auto& [ti, tc] : theta.terms())
        for (const auto& [idx, c] : gamma.terms())
            for (std::size_t k = 0; k < idx.size(); ++k) {
                if (idx[k] != ti[0]) continue;
                Form::Index rest = idx;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
                Rational sgn = (k % 2 == 0) ? Rational(1) : Rational(-1);
                out.add(std::move(rest), -sgn * tc * c);
            }
    return out;
}

// ---------------------------------------------------------------------------
// The model.

class CliffordModel {
public:
    CliffordModel() {
        using C = Complex;
        const C i(Rational(0), Rational(1));
        // 2x2 blocks B_j, row-major.
        std::array<std::array<C, 4>, 4> b = {{
            {C(1), C(0), C(0), C(1)},           // identity
            {C(0), i, i, C(0)},                 // i sigma_x
            {C(0), C(1), C(-1), C(0)},          // i sigma_y
            {-i, C(0), C(0), i},                // -i sigma_z
        }};
        for (std::size_t j = 0; j < 4; ++j) {
            Matrix m;
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) {
                    const C& v = b[j][2 * r + c];
                    m(2 + r, c) = v;                  // W+ -> W-: B_j
                    m(c, 2 + r) = -v.conj();          // W- -> W+: -B_j^*
                }
            gens_[j] = m;
        }
    }

    /// rho(theta^i), 1-based.
    const Matrix& generator(int i) const {
        if (i < 1 || i > 4) throw ValidationError("generator index out of range 1..4");
        return gens_[static_cast<std::size_t>(i - 1)];
    }

    Matrix volume() const { return gens_[0] * gens_[1] * gens_[2] * gens_[3]; }

    Matrix rho(const Form& f) const {
        Matrix out;
        for (const auto& [idx, c] : f.terms()) {
            Matrix m = Matrix::identity();
            for (int i : idx) m = m * generator(i);
            out = out + Complex(c) * m;
        }
        return out;
    }

private:
    std::array<Matrix, 4> gens_;
};

inline const CliffordModel& model() {
    static const CliffordModel instance;
    return instance;
}

/// rho(theta^i) rho(theta^j) + rho(theta^j) rho(theta^i) == -2 delta_ij.
inline bool cliffordRelation(int i, int j) {
    const CliffordModel& m = model();
    Matrix lhs = m.generator(i) * m.generator(j) + m.generator(j) * m.generator(i);
    Matrix rhs = Complex(i == j ? -2 : 0) * Matrix::identity();
    return lhs == rhs;
}

/// rho(theta) rho(gamma) == rho(contraction of gamma by theta) + rho(theta ^ gamma).
inline bool contractionIdentityCheck(const Form& theta, const Form& gamma) {
    const CliffordModel& m = model();
    return m.rho(theta) * m.rho(gamma) == m.rho(cliffordContraction(theta, gamma)) + m.rho(wedge(theta, gamma));
}

/// rho(nu) and rho(*nu) agree on W+ for a 3-form nu.
inline bool threeFormAgreesWithStar(const Form& nu) {
    if (nu.degree().value_or(3) != 3) throw ValidationError("expected a 3-form");
    return agreeOnWPlus(model().rho(nu), model().rho(hodgeStar(nu)));
}

struct StarCase {
    Form nu;
    std::size_t spinor = 0;
    bool agrees = false;
};

/// rho(nu) psi == rho(*nu) psi for each basis 3-form nu and basis spinor psi of W+.
inline std::vector<StarCase> threeFormStarCases() {
    std::vector<StarCase> out;
    for (const Form::Index& idx : std::vector<Form::Index>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}) {
        Form nu = Form::basis(idx);
        Matrix a = model().rho(nu);
        Matrix b = model().rho(hodgeStar(nu));
        for (std::size_t c = 0; c < 2; ++c) {
            bool same = true;
            for (std::size_t r = 0; r < kDim; ++r) same = same && a(r, c) == b(r, c);
            out.push_back({nu, c, same});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mixed forms in Lambda^1 (x) Lambda^2 and the completely off-diagonal test.

struct MixedTerm {
    int oneForm = 1;
    int j = 1;
    int k = 2;
    Rational coeff;
};

class MixedForm {
public:
    /// Adds c * theta^i (x) theta^j ^ theta^k (any j != k).
    MixedForm& add(int i, int j, int k, Rational c) {
        if (i < 1 || i > 4 || j < 1 || j > 4 || k < 1 || k > 4)
            throw ValidationError("mixed form index out of range 1..4");
        if (j == k || c == 0) return *this;
        if (j > k) {
            std::swap(j, k);
            c = -c;
        }
        Rational& slot = coeffs_[{i, j, k}];
        slot += c;
        if (slot == 0) coeffs_.erase({i, j, k});
        return *this;
    }

    std::vector<MixedTerm> terms() const {
        std::vector<MixedTerm> out;
        for (const auto& [key, c] : coeffs_) out.push_back({key[0], key[1], key[2], c});
        return out;
    }

    bool isZero() const { return coeffs_.empty(); }

    MixedForm scaled(const Rational& s) const {
        MixedForm out;
        for (const auto& t : terms()) out.add(t.oneForm, t.j, t.k, s * t.coeff);
        return out;
    }

    /// Applies theta^i -> theta^{perm[i-1]} to every index.
    MixedForm relabeled(const std::array<int, 4>& perm) const {
        MixedForm out;
        for (const auto& t : terms()) out.add(perm[t.oneForm - 1], perm[t.j - 1], perm[t.k - 1], t.coeff);
        return out;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& t : terms()) {
            Rational a = t.coeff;
            if (!first) out += a < 0 ? " - " : " + ";
            else if (a < 0) out += "-";
            if (a < 0) a = -a;
            first = false;
            if (a != 1) out += toString(a) + "*";
            out += "e" + std::to_string(t.oneForm) + "(x)e" + std::to_string(t.j) + std::to_string(t.k);
        }
        return out;
    }

private:
    std::map<std::array<int, 3>, Rational> coeffs_;
};

/// rho(theta (x) gamma) = rho(theta) rho(gamma), extended linearly.
inline Matrix rhoMixed(const MixedForm& w) {
    const CliffordModel& m = model();
    Matrix out;
    for (const auto& t : w.terms())
        out = out + Complex(t.coeff) * (m.generator(t.oneForm) * m.generator(t.j) * m.generator(t.k));
    return out;
}

/// Contraction with the basis vector e_b on the Lambda^1 factor.
inline Form contractOneFormFactor(int b, const MixedForm& w) {
    Form out;
    for (const auto& t : w.terms())
        if (t.oneForm == b) out.add({t.j, t.k}, t.coeff);
    return out;
}

/// A 3-form nu with rho(nu) == target, found by an exact linear solve over
/// the four basis 3-forms; nullopt if none exists.
inline std::optional<Form> solveThreeForm(const Matrix& target) {
    static const std::array<Form::Index, 4> basis = {{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
    std::array<Matrix, 4> images;
    for (std::size_t a = 0; a < 4; ++a) images[a] = model().rho(Form::basis(basis[a]));
    // Real and imaginary parts of every entry give 32 real equations.
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (std::size_t r = 0; r < kDim; ++r)
        for (std::size_t c = 0; c < kDim; ++c)
            for (int part = 0; part < 2; ++part) {
                std::vector<Rational> row;
                for (std::size_t a = 0; a < 4; ++a) row.push_back(part ? images[a](r, c).im : images[a](r, c).re);
                rows.push_back(std::move(row));
                rhs.push_back(part ? target(r, c).im : target(r, c).re);
            }
    auto x = solveExact(rows, rhs);
    if (!x) return std::nullopt;
    Form nu;
    for (std::size_t a = 0; a < 4; ++a) nu.add(basis[a], (*x)[a]);
    return nu;
}

struct OffDiagonalReport {
    /// A 3-form nu with rho(w) = rho(nu), if one exists.
    std::optional<Form> witness;
    /// 2 rho(i_{e_b} w) + {rho(w), rho(theta^b)} for b = 1..4.
    std::array<Matrix, 4> residuals;
    std::array<bool, 4> anticommutatorHolds{};
    bool completelyOffDiagonal = false;
};

/// Checks both conditions of complete off-diagonality: rho(w) is the action
/// of a 3-form, and 2 rho(i_theta w) + {rho(w), rho(theta)} = 0 for the four
/// basis 1-forms (enough by linearity in theta).
inline OffDiagonalReport isCompletelyOffDiagonal(const MixedForm& w) {
    const CliffordModel& m = model();
    OffDiagonalReport r;
    Matrix rw = rhoMixed(w);
    r.witness = solveThreeForm(rw);
    bool all = true;
    for (int b = 1; b <= 4; ++b) {
        const Matrix& g = m.generator(b);
        Matrix res = Complex(2) * m.rho(contractOneFormFactor(b, w)) + (rw * g + g * rw);
        r.anticommutatorHolds[b - 1] = res.isZero();
        r.residuals[b - 1] = res;
        all = all && res.isZero();
    }
    r.completelyOffDiagonal = r.witness.has_value() && all;
    return r;
}

/// theta^a (x) theta^b ^ theta^c - theta^c (x) theta^a ^ theta^b + theta^b (x) theta^c ^ theta^a.
inline MixedForm cyclicGenerator(int a, int b, int c, Rational scale = Rational(1)) {
    MixedForm w;
    w.add(a, b, c, scale);
    w.add(c, a, b, -scale);
    w.add(b, c, a, scale);
    return w;
}

/// (kf/4)(theta^4 (x) theta^1 ^ theta^2 + theta^2 (x) theta^1 ^ theta^4 - theta^1 (x) theta^2 ^ theta^4),
/// the difference between the Levi-Civita connection and the split
/// connection on the disk bundle, with the prefactor passed as `scale`.
inline MixedForm diskBundleDifferenceForm(Rational scale = Rational(1)) {
    MixedForm w;
    w.add(4, 1, 2, scale);
    w.add(2, 1, 4, scale);
    w.add(1, 2, 4, -scale);
    return w;
}

/// Dimension of the space of completely off-diagonal mixed forms, by exact
/// linear algebra on the 24-dimensional space Lambda^1 (x) Lambda^2.
inline std::size_t offDiagonalDimension() {
    struct Coord {
        int i, j, k;
    };
    std::vector<Coord> coords;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (int k = j + 1; k <= 4; ++k) coords.push_back({i, j, k});
    const CliffordModel& m = model();
    // Unknowns: 24 mixed coefficients followed by 4 three-form coefficients.
    static const std::array<Form::Index, 4> basis3 = {{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};
    const std::size_t n = coords.size() + 4;
    std::vector<std::vector<Rational>> rows;
    auto addMatrixRows = [&](const std::vector<Matrix>& columns) {
        for (std::size_t r = 0; r < kDim; ++r)
            for (std::size_t c = 0; c < kDim; ++c)
                for (int part = 0; part < 2; ++part) {
                    std::vector<Rational> row;
                    for (const Matrix& col : columns) row.push_back(part ? col(r, c).im : col(r, c).re);
                    rows.push_back(std::move(row));
                }
    };
    {
        std::vector<Matrix> cols;
        for (const Coord& c : coords) cols.push_back(rhoMixed(MixedForm().add(c.i, c.j, c.k, 1)));
        for (const auto& idx : basis3) cols.push_back(Complex(-1) * m.rho(Form::basis(idx)));
        addMatrixRows(cols);
    }
    for (int b = 1; b <= 4; ++b) {
        std::vector<Matrix> cols;
        const Matrix& g = m.generator(b);
        for (const Coord& c : coords) {
            MixedForm w = MixedForm().add(c.i, c.j, c.k, 1);
            Matrix rw = rhoMixed(w);
            cols.push_back(Complex(2) * m.rho(contractOneFormFactor(b, w)) + (rw * g + g * rw));
        }
        for (std::size_t a = 0; a < 4; ++a) cols.push_back(Matrix());
        addMatrixRows(cols);
    }
    // Rank of the homogeneous system; the 3-form coordinates are determined
    // by the mixed ones, so the kernel dimension is the answer.
    std::size_t rank = 0;
    std::vector<std::vector<Rational>> a = rows;
    for (std::size_t col = 0; col < n && rank < a.size(); ++col) {
        std::size_t p = rank;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rational f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return n - rank;
}

}  // namespace swcalc::clifford
