#include "specdesign/matfun.hpp"

#include <cmath>
#include <optional>

namespace specdesign {

// ---- CMat ----

CMat CMat::identity(int n) {
    CMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Complex CMat::det() const {
    // Gaussian elimination with partial pivoting; n stays tiny.
    std::vector<Complex> a = e_;
    Complex d{1.0, 0.0};
    for (int col = 0; col < n_; ++col) {
        int piv = -1;
        double best = 0.0;
        for (int r = col; r < n_; ++r) {
            const double v = std::abs(a[r * n_ + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv < 0) return Complex{0.0, 0.0};
        if (piv != col) {
            for (int j = 0; j < n_; ++j) std::swap(a[piv * n_ + j], a[col * n_ + j]);
            d = -d;
        }
        d *= a[col * n_ + col];
        for (int r = col + 1; r < n_; ++r) {
            const Complex f = a[r * n_ + col] / a[col * n_ + col];
            for (int j = col; j < n_; ++j) a[r * n_ + j] -= f * a[col * n_ + j];
        }
    }
    return d;
}

CMat CMat::inverse() const {
    std::vector<Complex> a = e_;
    CMat inv = identity(n_);
    for (int col = 0; col < n_; ++col) {
        int piv = -1;
        double best = 0.0;
        for (int r = col; r < n_; ++r) {
            const double v = std::abs(a[r * n_ + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv < 0 || best < 1e-300) throw SingularMatrixError("CMat::inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n_; ++j) {
                std::swap(a[piv * n_ + j], a[col * n_ + j]);
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        const Complex p = a[col * n_ + col];
        for (int j = 0; j < n_; ++j) {
            a[col * n_ + j] /= p;
            inv.at(col, j) /= p;
        }
        for (int r = 0; r < n_; ++r) {
            if (r == col) continue;
            const Complex f = a[r * n_ + col];
            if (f == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < n_; ++j) {
                a[r * n_ + j] -= f * a[col * n_ + j];
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

CMat CMat::operator*(const CMat& o) const {
    CMat r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            Complex s{0.0, 0.0};
            double mass = 0.0;
            for (int k = 0; k < n_; ++k) {
                const Complex term = at(i, k) * o.at(k, j);
                s += term;
                mass += std::abs(term);
            }
            // an entry cancelling down to rounding leftovers is zero
            r.at(i, j) = std::abs(s) <= ExpPoly::kCoeffTol * mass ? Complex{0.0, 0.0} : s;
        }
    return r;
}

// ---- VecFun ----

bool VecFun::is_zero() const {
    for (const ExpPoly& p : c_)
        if (!p.is_zero()) return false;
    return true;
}

VecFun VecFun::derivative() const {
    VecFun r(n());
    for (int i = 0; i < n(); ++i) r.at(i) = c_[i].derivative();
    return r;
}

VecFun VecFun::operator+(const VecFun& o) const {
    VecFun r(n());
    for (int i = 0; i < n(); ++i) r.at(i) = c_[i] + o.c_[i];
    return r;
}

VecFun VecFun::operator-(const VecFun& o) const {
    VecFun r(n());
    for (int i = 0; i < n(); ++i) r.at(i) = c_[i] - o.c_[i];
    return r;
}

VecFun VecFun::scaled(Complex s) const {
    VecFun r(n());
    for (int i = 0; i < n(); ++i) r.at(i) = c_[i].scaled(s);
    return r;
}

// ---- MatFun ----

MatFun MatFun::identity(int n) {
    MatFun m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ExpPoly::one();
    return m;
}

MatFun MatFun::from_constant(const CMat& c) {
    MatFun m(c.n());
    for (int i = 0; i < c.n(); ++i)
        for (int j = 0; j < c.n(); ++j)
            if (c.at(i, j) != Complex{0.0, 0.0}) m.at(i, j) = ExpPoly::constant(c.at(i, j));
    return m;
}

bool MatFun::is_zero() const {
    for (const ExpPoly& p : e_)
        if (!p.is_zero()) return false;
    return true;
}

MatFun MatFun::derivative() const {
    MatFun r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.e_[i] = e_[i].derivative();
    return r;
}

MatFun MatFun::operator+(const MatFun& o) const {
    MatFun r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

MatFun MatFun::operator-(const MatFun& o) const {
    MatFun r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

MatFun MatFun::operator*(const MatFun& o) const {
    MatFun r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            std::vector<ExpPoly> parts;
            parts.reserve(n_);
            for (int k = 0; k < n_; ++k) parts.push_back(at(i, k) * o.at(k, j));
            r.at(i, j) = ExpPoly::sum(parts);
        }
    return r;
}

VecFun MatFun::operator*(const VecFun& v) const {
    VecFun r(n_);
    for (int i = 0; i < n_; ++i) {
        std::vector<ExpPoly> parts;
        parts.reserve(n_);
        for (int k = 0; k < n_; ++k) parts.push_back(at(i, k) * v.at(k));
        r.at(i) = ExpPoly::sum(parts);
    }
    return r;
}

MatFun MatFun::scaled(Complex s) const {
    MatFun r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.e_[i] = e_[i].scaled(s);
    return r;
}

MatFun MatFun::scaled(const ExpPoly& s) const {
    MatFun r(n_);
    for (int i = 0; i < n_ * n_; ++i) r.e_[i] = e_[i] * s;
    return r;
}

// ---- determinant / adjugate ----

namespace {

// det of the submatrix formed by rows [0,|S|) and the column set S,
// expanding along the last row; memoized over the column bitmask.
class DetWorker {
public:
    explicit DetWorker(const MatFun& m) : m_(m), memo_(std::size_t(1) << m.n()) {}

    ExpPoly run(unsigned mask) {
        if (mask == 0) return ExpPoly::one();
        auto& slot = memo_[mask];
        if (slot) return *slot;
        const int row = __builtin_popcount(mask) - 1;
        std::vector<ExpPoly> parts;
        int idx = 0;
        for (int c = 0; c < m_.n(); ++c) {
            if (!(mask & (1u << c))) continue;
            const ExpPoly& a = m_.at(row, c);
            if (!a.is_zero()) {
                ExpPoly sub = run(mask & ~(1u << c));
                ExpPoly contrib = a * sub;
                parts.push_back(((row + idx) % 2 == 0) ? contrib : -contrib);
            }
            ++idx;
        }
        ExpPoly s = ExpPoly::sum(parts);
        slot = s;
        return s;
    }

private:
    const MatFun& m_;
    std::vector<std::optional<ExpPoly>> memo_;
};

} // namespace

ExpPoly det(const MatFun& m) {
    if (m.n() == 0) return ExpPoly::one();
    DetWorker w(m);
    return w.run((1u << m.n()) - 1);
}

bool determinant_degenerate(const MatFun& a, const ExpPoly& w) {
    if (w.is_zero()) return true;
    for (double x : {-2.7, -1.3, -0.4, 0.0, 0.6, 1.5, 2.9}) {
        double h = 1.0;
        for (int i = 0; i < a.n(); ++i) {
            double row = 0.0;
            for (int j = 0; j < a.n(); ++j) {
                const double s = a.at(i, j).magnitude_scale(x);
                row += s * s;
            }
            h *= std::sqrt(row);
        }
        if (std::abs(w.eval(x)) > 1e-10 * h) return false;
    }
    return true;
}

MatFun adjugate(const MatFun& m) {
    const int n = m.n();
    if (n == 1) return MatFun::identity(1);
    MatFun adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MatFun minor(n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            ExpPoly d = det(minor);
            adj.at(i, j) = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

// ---- factored denominators ----

Den::Den(const ExpPoly& p) {
    if (p.is_constant() && p.terms()[0].coeff == Complex{1.0, 0.0}) return;
    f_.push_back({p, 1});
}

bool Den::is_zero() const {
    for (const auto& [f, e] : f_)
        if (f.is_zero()) return true;
    return false;
}

bool Den::identical(const Den& o) const {
    if (f_.size() != o.f_.size()) return false;
    std::vector<bool> used(o.f_.size(), false);
    for (const auto& [f, e] : f_) {
        bool found = false;
        for (std::size_t j = 0; j < o.f_.size(); ++j) {
            if (used[j]) continue;
            if (o.f_[j].second == e && o.f_[j].first.identical(f)) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

Complex Den::eval(double x) const {
    Complex r{1.0, 0.0};
    for (const auto& [f, e] : f_) {
        const Complex v = f.eval(x);
        for (int i = 0; i < e; ++i) r *= v;
    }
    return r;
}

ExpPoly Den::expanded() const {
    ExpPoly r = ExpPoly::one();
    for (const auto& [f, e] : f_)
        for (int i = 0; i < e; ++i) r = r * f;
    return r;
}

Den Den::operator*(const Den& o) const {
    Den r = *this;
    for (const auto& [f, e] : o.f_) {
        bool merged = false;
        for (auto& [g, d] : r.f_)
            if (g.identical(f)) {
                d += e;
                merged = true;
                break;
            }
        if (!merged) r.f_.push_back({f, e});
    }
    return r;
}

Den Den::lcm(const Den& a, const Den& b) {
    Den r = a;
    for (const auto& [f, e] : b.f_) {
        bool merged = false;
        for (auto& [g, d] : r.f_)
            if (g.identical(f)) {
                d = std::max(d, e);
                merged = true;
                break;
            }
        if (!merged) r.f_.push_back({f, e});
    }
    return r;
}

ExpPoly Den::cofactor(const Den& lcm_den) const {
    ExpPoly r = ExpPoly::one();
    for (const auto& [f, e] : lcm_den.f_) {
        int have = 0;
        for (const auto& [g, d] : f_)
            if (g.identical(f)) {
                have = d;
                break;
            }
        if (have > e) throw AlgebraError("Den::cofactor: factor exponent exceeds the join");
        for (int i = 0; i < e - have; ++i) r = r * f;
    }
    return r;
}

ExpPoly Den::base() const {
    ExpPoly r = ExpPoly::one();
    for (const auto& [f, e] : f_) r = r * f;
    return r;
}

ExpPoly Den::dlog() const {
    // base * sum_i e_i f_i' / f_i, expanded without any division
    std::vector<ExpPoly> parts;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        ExpPoly term = f_[i].first.derivative().scaled(double(f_[i].second));
        for (std::size_t j = 0; j < f_.size(); ++j)
            if (j != i) term = term * f_[j].first;
        parts.push_back(term);
    }
    return ExpPoly::sum(parts);
}

Den Den::derivative_den() const {
    Den r = *this;
    for (auto& [f, e] : r.f_) ++e;
    return r;
}

// ---- rational closure ----

bool rat_is_zero(const RatMatFun& r) { return r.num.is_zero(); }
bool rat_is_zero(const RatVecFun& r) { return r.num.is_zero(); }
bool rat_is_zero(const RatPoly& r) { return r.num.is_zero(); }

namespace {

double coeff_mass(const ExpPoly& p) {
    double m = 0.0;
    for (const ExpTerm& t : p.terms()) m += std::abs(t.coeff);
    return m;
}

bool small_against(const ExpPoly& diff, double mass) {
    for (const ExpTerm& t : diff.terms())
        if (std::abs(t.coeff) > ExpPoly::kCoeffTol * mass) return false;
    return true;
}

} // namespace

bool poly_equal(const ExpPoly& a, const ExpPoly& b) {
    const double mass = std::max(coeff_mass(a), coeff_mass(b));
    return small_against(a - b, mass);
}

bool rat_equal(const RatMatFun& a, const RatMatFun& b) {
    const Den join = Den::lcm(a.den, b.den);
    const ExpPoly ca = a.den.cofactor(join), cb = b.den.cofactor(join);
    const int n = a.n();
    double mass = 0.0;
    std::vector<ExpPoly> na(n * n), nb(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            na[i * n + j] = a.num.at(i, j) * ca;
            nb[i * n + j] = b.num.at(i, j) * cb;
            mass = std::max(mass, coeff_mass(na[i * n + j]));
            mass = std::max(mass, coeff_mass(nb[i * n + j]));
        }
    for (int i = 0; i < n * n; ++i)
        if (!small_against(na[i] - nb[i], mass)) return false;
    return true;
}

bool rat_equal(const RatVecFun& a, const RatVecFun& b) {
    const Den join = Den::lcm(a.den, b.den);
    const ExpPoly ca = a.den.cofactor(join), cb = b.den.cofactor(join);
    const int n = a.n();
    double mass = 0.0;
    std::vector<ExpPoly> na(n), nb(n);
    for (int i = 0; i < n; ++i) {
        na[i] = a.num.at(i) * ca;
        nb[i] = b.num.at(i) * cb;
        mass = std::max(mass, coeff_mass(na[i]));
        mass = std::max(mass, coeff_mass(nb[i]));
    }
    for (int i = 0; i < n; ++i)
        if (!small_against(na[i] - nb[i], mass)) return false;
    return true;
}

RatMatFun rat_add(const RatMatFun& a, const RatMatFun& b) {
    if (a.den.identical(b.den)) return RatMatFun{a.num + b.num, a.den};
    const Den join = Den::lcm(a.den, b.den);
    const ExpPoly ca = a.den.cofactor(join), cb = b.den.cofactor(join);
    return RatMatFun{a.num.scaled(ca) + b.num.scaled(cb), join};
}

RatMatFun rat_sub(const RatMatFun& a, const RatMatFun& b) {
    return rat_add(a, rat_scaled(b, Complex{-1.0, 0.0}));
}

RatMatFun rat_mul(const RatMatFun& a, const RatMatFun& b) {
    return RatMatFun{a.num * b.num, a.den * b.den};
}

RatMatFun rat_scaled(const RatMatFun& a, Complex s) { return RatMatFun{a.num.scaled(s), a.den}; }

RatMatFun rat_derivative(const RatMatFun& a) {
    if (a.den.is_one()) return RatMatFun{a.num.derivative(), a.den};
    const ExpPoly base = a.den.base();
    const ExpPoly dlog = a.den.dlog();
    return RatMatFun{a.num.derivative().scaled(base) - a.num.scaled(dlog),
                     a.den.derivative_den()};
}

RatVecFun rat_add(const RatVecFun& a, const RatVecFun& b) {
    if (a.den.identical(b.den)) return RatVecFun{a.num + b.num, a.den};
    const Den join = Den::lcm(a.den, b.den);
    const ExpPoly ca = a.den.cofactor(join), cb = b.den.cofactor(join);
    VecFun s(a.n());
    for (int i = 0; i < a.n(); ++i) s.at(i) = a.num.at(i) * ca + b.num.at(i) * cb;
    return RatVecFun{s, join};
}

RatVecFun rat_sub(const RatVecFun& a, const RatVecFun& b) {
    return rat_add(a, rat_scaled(b, Complex{-1.0, 0.0}));
}

RatVecFun rat_mul(const RatMatFun& a, const RatVecFun& v) {
    return RatVecFun{a.num * v.num, a.den * v.den};
}

RatVecFun rat_scaled(const RatVecFun& a, Complex s) { return RatVecFun{a.num.scaled(s), a.den}; }

RatVecFun rat_derivative(const RatVecFun& a) {
    if (a.den.is_one()) return RatVecFun{a.num.derivative(), a.den};
    const ExpPoly base = a.den.base();
    const ExpPoly dlog = a.den.dlog();
    VecFun num(a.n());
    for (int i = 0; i < a.n(); ++i)
        num.at(i) = a.num.at(i).derivative() * base - a.num.at(i) * dlog;
    return RatVecFun{num, a.den.derivative_den()};
}

RatVecFun rat_sum(const std::vector<RatVecFun>& parts) {
    if (parts.empty()) throw ValidationError("rat_sum: empty sum");
    Den join = parts[0].den;
    for (std::size_t i = 1; i < parts.size(); ++i) join = Den::lcm(join, parts[i].den);
    const int n = parts[0].n();
    VecFun out(n);
    for (int i = 0; i < n; ++i) {
        std::vector<ExpPoly> comps;
        comps.reserve(parts.size());
        for (const RatVecFun& p : parts) {
            const ExpPoly cof = p.den.cofactor(join);
            comps.push_back(p.num.at(i) * cof);
        }
        out.at(i) = ExpPoly::sum(comps);
    }
    return RatVecFun{out, join};
}

RatMatFun rat_sum(const std::vector<RatMatFun>& parts) {
    if (parts.empty()) throw ValidationError("rat_sum: empty sum");
    Den join = parts[0].den;
    for (std::size_t i = 1; i < parts.size(); ++i) join = Den::lcm(join, parts[i].den);
    const int n = parts[0].n();
    MatFun out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<ExpPoly> comps;
            comps.reserve(parts.size());
            for (const RatMatFun& p : parts) {
                const ExpPoly cof = p.den.cofactor(join);
                comps.push_back(p.num.at(i, j) * cof);
            }
            out.at(i, j) = ExpPoly::sum(comps);
        }
    return RatMatFun{out, join};
}

RatPoly rat_add(const RatPoly& a, const RatPoly& b) {
    if (a.den.identical(b.den)) return RatPoly{a.num + b.num, a.den};
    return RatPoly{a.num * b.den + b.num * a.den, a.den * b.den};
}

RatPoly rat_sub(const RatPoly& a, const RatPoly& b) {
    return rat_add(a, RatPoly{-b.num, b.den});
}

RatPoly rat_mul(const RatPoly& a, const RatPoly& b) { return RatPoly{a.num * b.num, a.den * b.den}; }

std::vector<RatVecFun> rat_derivatives(const RatVecFun& v, int order) {
    std::vector<RatVecFun> out;
    out.reserve(order + 1);
    out.push_back(v);
    for (int d = 1; d <= order; ++d) out.push_back(rat_derivative(out.back()));
    return out;
}

RatMatFun adjugate_inverse(const MatFun& m) {
    ExpPoly d = det(m);
    if (d.is_zero()) throw SingularMatrixError("adjugate_inverse: identically singular matrix");
    return RatMatFun{adjugate(m), Den(d)};
}

RatMatFun rat_inverse(const RatMatFun& m) {
    ExpPoly d = det(m.num);
    if (d.is_zero()) throw SingularMatrixError("rat_inverse: identically singular matrix");
    return RatMatFun{adjugate(m.num).scaled(m.den.expanded()), Den(d)};
}

std::vector<Complex> eval(const RatVecFun& v, double x) {
    const Complex d = v.den.eval(x);
    std::vector<Complex> r(v.n());
    for (int i = 0; i < v.n(); ++i) r[i] = v.num.at(i).eval(x) / d;
    return r;
}

std::vector<Complex> eval(const RatMatFun& m, double x) {
    const Complex d = m.den.eval(x);
    std::vector<Complex> r(m.n() * m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) r[i * m.n() + j] = m.num.at(i, j).eval(x) / d;
    return r;
}

} // namespace specdesign
