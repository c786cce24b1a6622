#include "specdesign/spectra.hpp"

#include <cmath>

namespace specdesign {

void validate_chain(const SpectralChain& chain, const Hamiltonian& h) {
    if (chain.members.empty()) throw ValidationError("validate_chain: empty chain");
    for (std::size_t i = 0; i < chain.members.size(); ++i) {
        RatVecFun rhs = rat_scaled(chain.members[i], chain.lambda);
        if (i > 0) rhs = rat_add(rhs, chain.members[i - 1]);
        if (!rat_equal(apply_hamiltonian(h, chain.members[i]), rhs))
            throw ValidationError("validate_chain: chain relation broken");
    }
}

MappedChain map_chain(const IntertwiningOperator& q, const SpectralChain& chain,
                      const Hamiltonian& h_minus) {
    std::vector<RatVecFun> images;
    images.reserve(chain.members.size());
    for (const RatVecFun& m : chain.members) images.push_back(apply_operator(q, m));

    int l0 = 0;
    while (l0 < static_cast<int>(images.size()) && rat_is_zero(images[l0])) ++l0;
    if (l0 == static_cast<int>(images.size()))
        throw EmptyImageError("map_chain: every chain member maps to zero");
    // Once an image is nonzero all later ones must be nonzero as well.
    for (int l = l0; l < static_cast<int>(images.size()); ++l)
        if (rat_is_zero(images[l]))
            throw AlgebraError("map_chain: zero image after a nonzero one");

    MappedChain out;
    out.trimmed = l0;
    out.chain.lambda = chain.lambda;
    out.chain.members.assign(images.begin() + l0, images.end());
    validate_chain(out.chain, h_minus);
    return out;
}

namespace {

struct EndBehaviour {
    bool decays = false;
    bool borderline = false; // equal dominant Re rate and power
    double margin = 0.0;     // positive means decay
};

EndBehaviour end_behaviour(const ExpPoly& num, const ExpPoly& den, Direction dir) {
    const Asymptotics an = num.asymptotics(dir);
    const Asymptotics ad = den.asymptotics(dir);
    const double sign = (dir == Direction::PlusInf) ? 1.0 : -1.0;
    const double excess = (an.rate_re - ad.rate_re) * sign; // positive -> growth
    const double scale = std::max({1.0, std::abs(an.rate_re), std::abs(ad.rate_re)});
    EndBehaviour eb;
    eb.margin = -excess;
    if (std::abs(excess) <= ExpPoly::kRateTol * scale) {
        if (an.power < ad.power) {
            eb.decays = true;
        } else {
            eb.borderline = true;
        }
    } else {
        eb.decays = excess < 0.0;
    }
    return eb;
}

} // namespace

BoundStateVerdict classify_normalizability(const RatVecFun& state) {
    if (rat_is_zero(state)) throw ZeroStateError("classify_normalizability: zero state");
    if (state.den.is_zero()) throw ValidationError("classify_normalizability: zero denominator");
    BoundStateVerdict v;
    v.verdict = Normalizability::Normalizable;
    const ExpPoly den = state.den.expanded();
    bool first = true;
    for (int i = 0; i < state.n(); ++i) {
        const ExpPoly& num = state.num.at(i);
        if (num.is_zero()) continue;
        const EndBehaviour plus = end_behaviour(num, den, Direction::PlusInf);
        const EndBehaviour minus = end_behaviour(num, den, Direction::MinusInf);
        if (first || plus.margin < v.excess_plus) v.excess_plus = plus.margin;
        if (first || minus.margin < v.excess_minus) v.excess_minus = minus.margin;
        first = false;
        if (plus.borderline || minus.borderline) {
            v.verdict = Normalizability::NonNormalizable;
            v.oscillatory = true;
        } else if (!(plus.decays && minus.decays)) {
            v.verdict = Normalizability::NonNormalizable;
        }
    }
    return v;
}

RatVecFun free_mode(int n, Complex k, int channel, ModeKind kind) {
    if (k == Complex{0.0, 0.0}) throw ZeroRateError("free_mode: zero rate");
    if (channel < 0 || channel >= n) throw DimensionMismatchError("free_mode: bad channel");
    VecFun v(n);
    if (kind == ModeKind::Eigen)
        v.at(channel) = ExpPoly::exponential(k);
    else
        v.at(channel) = ExpPoly::term(-1.0 / (2.0 * k), 1, k);
    return RatVecFun::from_vec(std::move(v));
}

Hamiltonian similarity(const CMat& c, const Hamiltonian& h) {
    return Hamiltonian{h.n, similarity(c, h.potential)};
}

IntertwiningOperator similarity(const CMat& c, const IntertwiningOperator& q) {
    const CMat cinv = c.inverse();
    IntertwiningOperator r;
    r.n = q.n;
    r.order = q.order;
    r.leading = cinv * q.leading * c;
    for (const RatMatFun& x : q.lower) r.lower.push_back(similarity(c, x));
    return r;
}

RatVecFun similarity(const CMat& c, const RatVecFun& v) {
    return rat_mul(RatMatFun::from_constant(c.inverse()), v);
}

RatMatFun similarity(const CMat& c, const RatMatFun& m) {
    return rat_mul(rat_mul(RatMatFun::from_constant(c.inverse()), m),
                   RatMatFun::from_constant(c));
}

RatVecFun plane_wave_image(const IntertwiningOperator& q, double kappa, int channel) {
    if (channel < 0 || channel >= q.n)
        throw DimensionMismatchError("plane_wave_image: bad channel");
    VecFun v(q.n);
    v.at(channel) = ExpPoly::exponential(Complex{0.0, kappa});
    return apply_operator(q, RatVecFun::from_vec(std::move(v)));
}

double norm_squared_integral(const RatVecFun& state, double L, int samples) {
    if (samples < 2) throw ValidationError("norm_squared_integral: need at least 2 samples");
    const double h = 2.0 * L / double(samples - 1);
    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = -L + h * double(i);
        double s = 0.0;
        for (const Complex& c : eval(state, x)) s += std::norm(c);
        acc += (i == 0 || i == samples - 1) ? 0.5 * s : s;
    }
    return acc * h;
}

} // namespace specdesign
