#include "specdesign/expalg.hpp"

#include <algorithm>
#include <cmath>

namespace specdesign {

namespace {

bool rate_close(Complex a, Complex b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= ExpPoly::kRateTol * scale;
}

bool term_before(const ExpTerm& a, const ExpTerm& b) {
    if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
    if (a.rate.imag() != b.rate.imag()) return a.rate.imag() < b.rate.imag();
    if (a.power != b.power) return a.power < b.power;
    // Coefficients join the key so bucket sums accumulate in one fixed order
    // no matter how the input list was arranged.
    if (a.coeff.real() != b.coeff.real()) return a.coeff.real() < b.coeff.real();
    return a.coeff.imag() < b.coeff.imag();
}

double ipow(double x, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= x;
    return r;
}

} // namespace

ExpPoly ExpPoly::constant(Complex c) { return from_terms({ExpTerm{c, 0, Complex{0.0, 0.0}}}); }

ExpPoly ExpPoly::term(Complex c, int power, Complex rate) {
    return from_terms({ExpTerm{c, power, rate}});
}

ExpPoly ExpPoly::monomial(int power) { return term(1.0, power, Complex{0.0, 0.0}); }

ExpPoly ExpPoly::exponential(Complex rate) { return term(1.0, 0, rate); }

ExpPoly ExpPoly::from_terms(std::vector<ExpTerm> ts) {
    for (const ExpTerm& t : ts) {
        if (t.power < 0) throw ValidationError("ExpPoly: negative power");
        if (t.power > kPowerCap) throw PowerCapError("ExpPoly: power above cap");
    }
    // Sorting first makes the rate clustering independent of input order.
    std::sort(ts.begin(), ts.end(), term_before);

    std::vector<Complex> reps;
    struct Bucket {
        Complex sum;
        double abs_sum = 0.0;
    };
    // Buckets keyed by (rate cluster, power); both ranges are tiny.
    std::vector<std::vector<Bucket>> buckets; // [rep][power]
    for (const ExpTerm& t : ts) {
        if (t.coeff == Complex{0.0, 0.0}) continue;
        std::size_t ri = reps.size();
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (rate_close(reps[i], t.rate)) {
                ri = i;
                break;
            }
        }
        if (ri == reps.size()) {
            reps.push_back(t.rate);
            buckets.emplace_back();
        }
        auto& row = buckets[ri];
        if (row.size() <= static_cast<std::size_t>(t.power)) row.resize(t.power + 1);
        row[t.power].sum += t.coeff;
        row[t.power].abs_sum += std::abs(t.coeff);
    }

    std::vector<ExpTerm> out;
    for (std::size_t ri = 0; ri < reps.size(); ++ri) {
        for (std::size_t m = 0; m < buckets[ri].size(); ++m) {
            const Bucket& b = buckets[ri][m];
            if (b.abs_sum == 0.0) continue;
            // The rounding left over by a cancelling group scales with its
            // absolute mass, so smallness is judged against that mass.
            if (std::abs(b.sum) <= kCoeffTol * b.abs_sum) continue;
            out.push_back(ExpTerm{b.sum, static_cast<int>(m), reps[ri]});
        }
    }
    std::sort(out.begin(), out.end(), term_before);
    ExpPoly p;
    p.terms_ = std::move(out);
    return p;
}

ExpPoly ExpPoly::sum(const std::vector<ExpPoly>& ps) {
    std::vector<ExpTerm> ts;
    std::size_t total = 0;
    for (const ExpPoly& p : ps) total += p.terms().size();
    ts.reserve(total);
    for (const ExpPoly& p : ps) ts.insert(ts.end(), p.terms().begin(), p.terms().end());
    return from_terms(std::move(ts));
}

bool ExpPoly::is_constant() const {
    return terms_.size() == 1 && terms_[0].power == 0 &&
           terms_[0].rate == Complex{0.0, 0.0};
}

ExpPoly ExpPoly::operator-() const { return scaled(Complex{-1.0, 0.0}); }

ExpPoly ExpPoly::scaled(Complex s) const {
    if (s == Complex{0.0, 0.0}) return zero();
    std::vector<ExpTerm> ts = terms_;
    for (ExpTerm& t : ts) t.coeff *= s;
    return from_terms(std::move(ts));
}

ExpPoly ExpPoly::derivative() const {
    std::vector<ExpTerm> ts;
    ts.reserve(terms_.size() * 2);
    for (const ExpTerm& t : terms_) {
        if (t.power > 0) ts.push_back(ExpTerm{t.coeff * double(t.power), t.power - 1, t.rate});
        if (t.rate != Complex{0.0, 0.0}) ts.push_back(ExpTerm{t.coeff * t.rate, t.power, t.rate});
    }
    return from_terms(std::move(ts));
}

ExpPoly ExpPoly::derivative(int order) const {
    ExpPoly p = *this;
    for (int i = 0; i < order; ++i) p = p.derivative();
    return p;
}

Complex ExpPoly::eval(double x) const {
    Complex s{0.0, 0.0};
    for (const ExpTerm& t : terms_) s += t.coeff * ipow(x, t.power) * std::exp(t.rate * x);
    return s;
}

double ExpPoly::magnitude_scale(double x) const {
    double s = 0.0;
    for (const ExpTerm& t : terms_)
        s += std::abs(t.coeff) * ipow(std::abs(x), t.power) * std::exp(t.rate.real() * x);
    return s;
}

Asymptotics ExpPoly::asymptotics(Direction dir) const {
    if (terms_.empty()) throw ZeroFunctionError("asymptotics of the zero function");
    const double sign = (dir == Direction::PlusInf) ? 1.0 : -1.0;
    double best = terms_[0].rate.real() * sign;
    for (const ExpTerm& t : terms_) best = std::max(best, t.rate.real() * sign);

    auto dominant_re = [&](const ExpTerm& t) {
        const double scale = std::max(1.0, std::abs(best));
        return std::abs(t.rate.real() * sign - best) <= kRateTol * scale;
    };
    int power = 0;
    for (const ExpTerm& t : terms_)
        if (dominant_re(t)) power = std::max(power, t.power);

    std::vector<double> ims;
    for (const ExpTerm& t : terms_)
        if (dominant_re(t) && t.power == power) ims.push_back(t.rate.imag());
    std::sort(ims.begin(), ims.end());
    bool osc = false;
    for (std::size_t i = 1; i < ims.size(); ++i) {
        const double scale = std::max({1.0, std::abs(ims[i]), std::abs(ims[i - 1])});
        if (std::abs(ims[i] - ims[i - 1]) > kRateTol * scale) osc = true;
    }
    return Asymptotics{best * sign, power, osc};
}

bool ExpPoly::identical(const ExpPoly& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].power != other.terms_[i].power) return false;
        if (terms_[i].coeff != other.terms_[i].coeff) return false;
        if (terms_[i].rate != other.terms_[i].rate) return false;
    }
    return true;
}

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
    std::vector<ExpTerm> ts = a.terms_;
    ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
    return ExpPoly::from_terms(std::move(ts));
}

ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-b); }

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    std::vector<ExpTerm> ts;
    ts.reserve(a.terms_.size() * b.terms_.size());
    for (const ExpTerm& ta : a.terms_)
        for (const ExpTerm& tb : b.terms_)
            ts.push_back(ExpTerm{ta.coeff * tb.coeff, ta.power + tb.power, ta.rate + tb.rate});
    return ExpPoly::from_terms(std::move(ts));
}

ExpPoly operator*(Complex s, const ExpPoly& p) { return p.scaled(s); }

} // namespace specdesign
