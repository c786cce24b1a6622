// Hand-transcribed closed forms for the bundled two-channel families.  These
// are the ground truth the builders are tested against and must never share
// code with the construction path.  Review-only: every expression below was
// entered from the printed formulas by hand.

#include <cmath>

#include "specdesign/scenarios.hpp"

namespace specdesign {

namespace {

ExpPoly ex(Complex k) { return ExpPoly::exponential(k); }
ExpPoly xex(Complex k) { return ExpPoly::term(1.0, 1, k); }
ExpPoly x2ex(Complex k) { return ExpPoly::term(1.0, 2, k); }

// ch/sh of k(x - x0), expanded into exponentials.
ExpPoly ch(Complex k, Complex x0 = 0.0) {
    return ExpPoly::from_terms(
        {ExpTerm{0.5 * std::exp(-k * x0), 0, k}, ExpTerm{0.5 * std::exp(k * x0), 0, -k}});
}
ExpPoly sh(Complex k, Complex x0 = 0.0) {
    return ExpPoly::from_terms(
        {ExpTerm{0.5 * std::exp(-k * x0), 0, k}, ExpTerm{-0.5 * std::exp(k * x0), 0, -k}});
}

void addm(MatFun& acc, Complex m00, Complex m01, Complex m10, Complex m11, const ExpPoly& s) {
    acc.at(0, 0) = acc.at(0, 0) + s.scaled(m00);
    acc.at(0, 1) = acc.at(0, 1) + s.scaled(m01);
    acc.at(1, 0) = acc.at(1, 0) + s.scaled(m10);
    acc.at(1, 1) = acc.at(1, 1) + s.scaled(m11);
}

void addv(VecFun& acc, Complex a, Complex b, const ExpPoly& s) {
    acc.at(0) = acc.at(0) + s.scaled(a);
    acc.at(1) = acc.at(1) + s.scaled(b);
}

struct Cs {
    Complex k1, k2, c2, c3, c4, c5, c6, c7, c8;
    Complex d1, dd1, d2, dd2;     // D1 = C4-C2C3, d1 = C4+C2C3, D2 = C5C8-C6C7, d2 = C5C8+C6C7
    Complex a, b, c2745, d28;     // C7-C3C5, C8-C3C6, C2C7-C4C5, C2C8-C4C6
    Complex d27, d38;             // C2C7-C3C6, C3C8-C4C7
};

Cs unpack(const ScenarioConfig& cfg) {
    Cs s;
    s.k1 = cfg.k1;
    s.k2 = cfg.k2;
    std::array<Complex, 8> c = cfg.c;
    if (cfg.id == "s51-case1")
        c = {Complex{1.0, 0.0}, Complex{1.0, 0.0}, {}, {}, {}, {},
             0.25 * std::exp(-cfg.k2 * cfg.x0), 0.25 * std::exp(cfg.k2 * cfg.x0)};
    s.c2 = c[1];
    s.c3 = c[2];
    s.c4 = c[3];
    s.c5 = c[4];
    s.c6 = c[5];
    s.c7 = c[6];
    s.c8 = c[7];
    s.d1 = s.c4 - s.c2 * s.c3;
    s.dd1 = s.c4 + s.c2 * s.c3;
    s.d2 = s.c5 * s.c8 - s.c6 * s.c7;
    s.dd2 = s.c5 * s.c8 + s.c6 * s.c7;
    s.a = s.c7 - s.c3 * s.c5;
    s.b = s.c8 - s.c3 * s.c6;
    s.c2745 = s.c2 * s.c7 - s.c4 * s.c5;
    s.d28 = s.c2 * s.c8 - s.c4 * s.c6;
    s.d27 = s.c2 * s.c7 - s.c3 * s.c6;
    s.d38 = s.c3 * s.c8 - s.c4 * s.c7;
    return s;
}

// ---- s51 family ----

ExpPoly w_s51(const Cs& s) {
    return ExpPoly::from_terms({ExpTerm{s.a, 0, s.k1 + s.k2},
                                ExpTerm{s.b, 0, s.k1 - s.k2},
                                ExpTerm{s.c2745, 0, -(s.k1 - s.k2)},
                                ExpTerm{s.d28, 0, -(s.k1 + s.k2)}});
}

RatMatFun x0_s51(const Cs& s) {
    const Complex k1 = s.k1, k2 = s.k2;
    MatFun m(2);
    addm(m, k1 * s.c7 - k2 * s.c3 * s.c5, -(k1 - k2) * s.c5,
         (k1 - k2) * s.c3 * s.c7, k2 * s.c7 - k1 * s.c3 * s.c5, ex(k1 + k2));
    addm(m, k1 * s.c8 + k2 * s.c3 * s.c6, -(k1 + k2) * s.c6,
         (k1 + k2) * s.c3 * s.c8, -(k2 * s.c8 + k1 * s.c3 * s.c6), ex(k1 - k2));
    addm(m, -(k1 * s.c2 * s.c7 + k2 * s.c4 * s.c5), (k1 + k2) * s.c2 * s.c5,
         -(k1 + k2) * s.c4 * s.c7, k2 * s.c2 * s.c7 + k1 * s.c4 * s.c5, ex(-(k1 - k2)));
    addm(m, -(k1 * s.c2 * s.c8 - k2 * s.c4 * s.c6), (k1 - k2) * s.c2 * s.c6,
         -(k1 - k2) * s.c4 * s.c8, -(k2 * s.c2 * s.c8 - k1 * s.c4 * s.c6), ex(-(k1 + k2)));
    return RatMatFun{m.scaled(Complex{-1.0, 0.0}), w_s51(s)};
}

RatMatFun u0_s51(const Cs& s) {
    const Complex q1 = s.k1 * s.k1, q2 = s.k2 * s.k2, dq = q1 - q2;
    MatFun m(2);
    addm(m, -(q1 * s.c7 - q2 * s.c3 * s.c5), dq * s.c5,
         -dq * s.c3 * s.c7, -(q2 * s.c7 - q1 * s.c3 * s.c5), ex(s.k1 + s.k2));
    addm(m, -(q1 * s.c8 - q2 * s.c3 * s.c6), dq * s.c6,
         -dq * s.c3 * s.c8, -(q2 * s.c8 - q1 * s.c3 * s.c6), ex(s.k1 - s.k2));
    addm(m, -(q1 * s.c2 * s.c7 - q2 * s.c4 * s.c5), dq * s.c2 * s.c5,
         -dq * s.c4 * s.c7, -(q2 * s.c2 * s.c7 - q1 * s.c4 * s.c5), ex(-(s.k1 - s.k2)));
    addm(m, -(q1 * s.c2 * s.c8 - q2 * s.c4 * s.c6), dq * s.c2 * s.c6,
         -dq * s.c4 * s.c8, -(q2 * s.c2 * s.c8 - q1 * s.c4 * s.c6), ex(-(s.k1 + s.k2)));
    return RatMatFun{m, w_s51(s)};
}

RatMatFun vminus_s51(const Cs& s) {
    const Complex k1 = s.k1, k2 = s.k2;
    const Complex q1 = k1 * k1, q2 = k2 * k2;
    MatFun m(2);
    {
        const Complex p = k1 * s.d2 - k2 * (s.dd2 - 2.0 * s.c3 * s.c5 * s.c6);
        const Complex q = k1 * s.d2 * s.c3 + k2 * (s.dd2 * s.c3 - 2.0 * s.c7 * s.c8);
        addm(m, s.c3 * p, -p, s.c3 * q, -q, ex(2.0 * k1).scaled(k2));
    }
    {
        const Complex p = k2 * s.d1 * s.c5 - k1 * (s.dd1 * s.c5 - 2.0 * s.c2 * s.c7);
        const Complex q = k2 * s.d1 * s.c7 + k1 * (s.dd1 * s.c7 - 2.0 * s.c3 * s.c4 * s.c5);
        addm(m, s.c7 * p, -s.c5 * p, s.c7 * q, -s.c5 * q, ex(2.0 * k2).scaled(k1));
    }
    {
        const Complex p = k2 * s.d1 * s.c6 + k1 * (s.dd1 * s.c6 - 2.0 * s.c2 * s.c8);
        const Complex q = k2 * s.d1 * s.c8 - k1 * (s.dd1 * s.c8 - 2.0 * s.c3 * s.c4 * s.c6);
        addm(m, -s.c8 * p, s.c6 * p, -s.c8 * q, s.c6 * q, ex(-2.0 * k2).scaled(k1));
    }
    {
        const Complex p = k1 * s.d2 * s.c2 + k2 * (s.dd2 * s.c2 - 2.0 * s.c4 * s.c5 * s.c6);
        const Complex q = k1 * s.d2 * s.c4 - k2 * (s.dd2 * s.c4 - 2.0 * s.c2 * s.c7 * s.c8);
        addm(m, -s.c4 * p, s.c2 * p, -s.c4 * q, s.c2 * q, ex(-2.0 * k1).scaled(k2));
    }
    addm(m, 2.0 * (q1 * s.c2 * s.c7 * s.c8 + q2 * s.c3 * s.c4 * s.c5 * s.c6),
         (q1 - q2) * (s.dd1 * s.c5 * s.c6 - s.dd2 * s.c2),
         (q1 - q2) * (s.dd1 * s.c7 * s.c8 - s.dd2 * s.c3 * s.c4),
         2.0 * (q2 * s.c2 * s.c7 * s.c8 + q1 * s.c3 * s.c4 * s.c5 * s.c6),
         ExpPoly::constant(2.0));
    {
        const Complex iso = (q1 + q2) * s.dd1 * s.dd2 - 2.0 * k1 * k2 * s.d1 * s.d2;
        addm(m, -iso, 0.0, 0.0, -iso, ExpPoly::one());
    }
    const ExpPoly w = w_s51(s);
    return RatMatFun{m.scaled(Complex{-4.0, 0.0}), w * w};
}

VecFun state_s51(const Cs& s, int index) {
    const Complex k1 = s.k1, k2 = s.k2;
    const Complex sum = k1 + k2, dif = k1 - k2;
    VecFun v(2);
    switch (index) {
    case 1:
        addv(v, -dif * s.c3 * s.c5, -dif * s.c3 * s.c7, ex(2.0 * k1 + k2));
        addv(v, -sum * s.c3 * s.c6, -sum * s.c3 * s.c8, ex(2.0 * k1 - k2));
        addv(v, 2.0 * k1 * s.c2 * s.c7 - dif * s.c4 * s.c5, sum * s.c4 * s.c7, ex(k2));
        addv(v, 2.0 * k1 * s.c2 * s.c8 - sum * s.c4 * s.c6, dif * s.c4 * s.c8, ex(-k2));
        break;
    case 2:
        addv(v, dif * s.c4 * s.c6, dif * s.c4 * s.c8, ex(-(2.0 * k1 + k2)));
        addv(v, sum * s.c4 * s.c5, sum * s.c4 * s.c7, ex(-(2.0 * k1 - k2)));
        addv(v, -(2.0 * k1 * s.c7 - sum * s.c3 * s.c5), -dif * s.c3 * s.c7, ex(k2));
        addv(v, -(2.0 * k1 * s.c8 - dif * s.c3 * s.c6), -sum * s.c3 * s.c8, ex(-k2));
        break;
    case 3:
        addv(v, dif * s.c5, dif * s.c7, ex(2.0 * k1 + k2));
        addv(v, sum * s.c6, sum * s.c8, ex(2.0 * k1 - k2));
        addv(v, -sum * s.c2 * s.c5, -(2.0 * k1 * s.c4 * s.c5 - dif * s.c2 * s.c7), ex(k2));
        addv(v, -dif * s.c2 * s.c6, -(2.0 * k1 * s.c4 * s.c6 - sum * s.c2 * s.c8), ex(-k2));
        break;
    case 4:
        addv(v, -dif * s.c2 * s.c6, -dif * s.c2 * s.c8, ex(-(2.0 * k1 + k2)));
        addv(v, -sum * s.c2 * s.c5, -sum * s.c2 * s.c7, ex(-(2.0 * k1 - k2)));
        addv(v, dif * s.c5, 2.0 * k1 * s.c3 * s.c5 - sum * s.c7, ex(k2));
        addv(v, sum * s.c6, 2.0 * k1 * s.c3 * s.c6 - dif * s.c8, ex(-k2));
        break;
    case 5:
        addv(v, -dif * s.c7, -dif * s.c7 * s.c3, ex(k1 + 2.0 * k2));
        addv(v, sum * s.c7 * s.c2, sum * s.c7 * s.c4, ex(-(k1 - 2.0 * k2)));
        addv(v, -(2.0 * k2 * s.c3 * s.c6 + dif * s.c8), -sum * s.c3 * s.c8, ex(k1));
        addv(v, -(2.0 * k2 * s.c4 * s.c6 - sum * s.c2 * s.c8), dif * s.c4 * s.c8, ex(-k1));
        break;
    case 6:
        addv(v, dif * s.c8 * s.c2, dif * s.c8 * s.c4, ex(-(k1 + 2.0 * k2)));
        addv(v, -sum * s.c8, -sum * s.c8 * s.c3, ex(k1 - 2.0 * k2));
        addv(v, 2.0 * k2 * s.c3 * s.c5 - sum * s.c7, -dif * s.c3 * s.c7, ex(k1));
        addv(v, 2.0 * k2 * s.c4 * s.c5 + dif * s.c2 * s.c7, sum * s.c4 * s.c7, ex(-k1));
        break;
    case 7:
        addv(v, dif * s.c5, dif * s.c5 * s.c3, ex(k1 + 2.0 * k2));
        addv(v, -sum * s.c5 * s.c2, -sum * s.c5 * s.c4, ex(-(k1 - 2.0 * k2)));
        addv(v, sum * s.c6, 2.0 * k2 * s.c8 + dif * s.c3 * s.c6, ex(k1));
        addv(v, -dif * s.c2 * s.c6, 2.0 * k2 * s.c2 * s.c8 - sum * s.c4 * s.c6, ex(-k1));
        break;
    case 8:
        addv(v, -dif * s.c6 * s.c2, -dif * s.c6 * s.c4, ex(-(k1 + 2.0 * k2)));
        addv(v, sum * s.c6, sum * s.c6 * s.c3, ex(k1 - 2.0 * k2));
        addv(v, dif * s.c5, -(2.0 * k2 * s.c7 - sum * s.c3 * s.c5), ex(k1));
        addv(v, -sum * s.c2 * s.c5, -(2.0 * k2 * s.c2 * s.c7 + dif * s.c4 * s.c5), ex(-k1));
        break;
    default:
        throw OracleMissingError("state_s51: bad index");
    }
    return v;
}

// Bracket contents of the x-dependent bound-state combinations.
void s51_combo_vectors(const Cs& s, Complex& a1, Complex& a2, Complex& b1, Complex& b2) {
    // coefficients of e^{k2 x} and e^{-k2 x} in the lambda1 state
    a1 = s.k2 * s.d1 * s.c5 - s.k1 * (s.dd1 * s.c5 - 2.0 * s.c2 * s.c7);
    a2 = s.k2 * s.d1 * s.c7 + s.k1 * (s.dd1 * s.c7 - 2.0 * s.c3 * s.c4 * s.c5);
    b1 = s.k2 * s.d1 * s.c6 + s.k1 * (s.dd1 * s.c6 - 2.0 * s.c2 * s.c8);
    b2 = s.k2 * s.d1 * s.c8 - s.k1 * (s.dd1 * s.c8 - 2.0 * s.c3 * s.c4 * s.c6);
}

void s51_combo_vectors_2(const Cs& s, Complex& a1, Complex& a2, Complex& b1, Complex& b2) {
    // coefficients of e^{k1 x} and e^{-k1 x} in the lambda2 state
    a1 = s.k1 * s.d2 - s.k2 * (s.dd2 - 2.0 * s.c3 * s.c5 * s.c6);
    a2 = s.k1 * s.d2 * s.c3 + s.k2 * (s.dd2 * s.c3 - 2.0 * s.c7 * s.c8);
    b1 = s.k1 * s.d2 * s.c2 + s.k2 * (s.dd2 * s.c2 - 2.0 * s.c4 * s.c5 * s.c6);
    b2 = s.k1 * s.d2 * s.c4 - s.k2 * (s.dd2 * s.c4 - 2.0 * s.c2 * s.c7 * s.c8);
}

VecFun state_s51_sp(const Cs& s, const std::string& name) {
    VecFun v(2);
    if (name == "psi9") {
        Complex a1, a2, b1, b2;
        s51_combo_vectors(s, a1, a2, b1, b2);
        addv(v, s.a, s.a * s.c3, ex(2.0 * s.k1 + s.k2));
        addv(v, s.b, s.b * s.c3, ex(2.0 * s.k1 - s.k2));
        addv(v, 2.0 * a1, 2.0 * a2, xex(s.k2));
        addv(v, -s.d1 * s.c5, -s.d1 * s.c7, ex(s.k2));
        addv(v, -s.d1 * s.c6, -s.d1 * s.c8, ex(-s.k2));
        addv(v, -2.0 * b1, -2.0 * b2, xex(-s.k2));
        addv(v, -s.c2745 * s.c2, -s.c2745 * s.c4, ex(-(2.0 * s.k1 - s.k2)));
        addv(v, -s.d28 * s.c2, -s.d28 * s.c4, ex(-(2.0 * s.k1 + s.k2)));
        const Complex pref = -1.0 / (2.0 * s.k1);
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(pref);
    } else if (name == "psi10") {
        Complex a1, a2, b1, b2;
        s51_combo_vectors_2(s, a1, a2, b1, b2);
        addv(v, s.a * s.c5, s.a * s.c7, ex(s.k1 + 2.0 * s.k2));
        addv(v, s.c2745 * s.c5, s.c2745 * s.c7, ex(-(s.k1 - 2.0 * s.k2)));
        addv(v, -2.0 * a1, -2.0 * a2, xex(s.k1));
        addv(v, s.d2, s.d2 * s.c3, ex(s.k1));
        addv(v, s.d2 * s.c2, s.d2 * s.c4, ex(-s.k1));
        addv(v, 2.0 * b1, 2.0 * b2, xex(-s.k1));
        addv(v, -s.b * s.c6, -s.b * s.c8, ex(s.k1 - 2.0 * s.k2));
        addv(v, -s.d28 * s.c6, -s.d28 * s.c8, ex(-(s.k1 + 2.0 * s.k2)));
        const Complex pref = -1.0 / (2.0 * s.k2);
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(pref);
    } else if (name == "psi11") {
        Complex a1, a2, b1, b2;
        s51_combo_vectors(s, a1, a2, b1, b2);
        addv(v, a1, a2, ex(s.k2));
        addv(v, -b1, -b2, ex(-s.k2));
    } else if (name == "psi12") {
        Complex a1, a2, b1, b2;
        s51_combo_vectors_2(s, a1, a2, b1, b2);
        addv(v, -a1, -a2, ex(s.k1));
        addv(v, b1, b2, ex(-s.k1));
    } else {
        throw OracleMissingError("state_s51_sp: unknown name " + name);
    }
    return v;
}

// ---- s52 family ----

ExpPoly w_s52(const Cs& s) {
    return ExpPoly::from_terms({ExpTerm{s.c7, 0, 2.0 * s.k1},
                                ExpTerm{s.c8 - s.c3 * s.c6 + s.c2 * s.c7, 0, Complex{0.0, 0.0}},
                                ExpTerm{s.d28, 0, -2.0 * s.k1}});
}

RatMatFun x0_s52(const Cs& s) {
    const Complex k = s.k1;
    MatFun m(2);
    addm(m, s.c7, 0.0, 0.0, s.c7, ex(2.0 * k));
    addm(m, -s.d28, 0.0, 0.0, -s.d28, ex(-2.0 * k));
    const Complex g = s.c8 + s.c3 * s.c6 - s.c2 * s.c7;
    addm(m, g, -2.0 * s.c6, 2.0 * s.d38, -g, ExpPoly::one());
    return RatMatFun{m.scaled(-k), w_s52(s)};
}

RatMatFun u0_s52(const Cs& s) {
    MatFun m(2);
    const Complex mk2 = -s.k1 * s.k1;
    addm(m, mk2, 0.0, 0.0, mk2, ExpPoly::one());
    return RatMatFun{m, ExpPoly::one()};
}

RatMatFun vminus_s52(const Cs& s) {
    const Complex k = s.k1;
    MatFun m(2);
    addm(m, s.c2 * s.c7 - s.c3 * s.c6, s.c6, -s.d38, s.c8, ex(2.0 * k).scaled(s.c7));
    addm(m, s.c8, -s.c6, s.d38, s.c2 * s.c7 - s.c3 * s.c6, ex(-2.0 * k).scaled(s.d28));
    addm(m, 2.0 * s.c7 * s.d28, 0.0, 0.0, 2.0 * s.c7 * s.d28, ExpPoly::one());
    const ExpPoly w = w_s52(s);
    return RatMatFun{m.scaled(-8.0 * k * k), w * w};
}

VecFun state_s52(const Cs& s, const std::string& name) {
    const Complex k = s.k1;
    VecFun v(2);
    if (name == "psi1") {
        addv(v, s.c2 * s.c7 - s.c3 * s.c6, -s.d38, ex(k));
        addv(v, s.d28, 0.0, ex(-k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(2.0 * k);
    } else if (name == "psi2") {
        addv(v, -s.c7, 0.0, ex(k));
        addv(v, -s.c8, -s.d38, ex(-k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(2.0 * k);
    } else if (name == "psi3") {
        addv(v, s.c6, s.c8, ex(k));
        addv(v, 0.0, s.d28, ex(-k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(2.0 * k);
    } else if (name == "psi4") {
        addv(v, 0.0, -s.c7, ex(k));
        addv(v, s.c6, -(s.c2 * s.c7 - s.c3 * s.c6), ex(-k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(2.0 * k);
    } else if (name == "psi9") {
        addv(v, s.c7, s.c7 * s.c3, ex(3.0 * k));
        addv(v, 4.0 * k * s.c7 * s.c2, 4.0 * k * s.c7 * s.c4, xex(k));
        addv(v, s.b, s.c3 * s.b - s.c7 * s.d1, ex(k));
        addv(v, -(s.c2 * s.c2 * s.c7 + s.c6 * s.d1), -(s.c2 * s.c4 * s.c7 + s.c8 * s.d1), ex(-k));
        addv(v, 4.0 * k * s.d28, 4.0 * k * s.d28 * s.c3, xex(-k));
        addv(v, -s.d28 * s.c2, -s.d28 * s.c4, ex(-3.0 * k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(-1.0 / (2.0 * k));
    } else if (name == "psi10") {
        addv(v, 0.0, s.c7 * s.c7, ex(3.0 * k));
        addv(v, 4.0 * k * s.c7 * s.c6, 4.0 * k * s.c7 * s.c8, xex(k));
        addv(v, -s.c7 * s.c6, -s.c7 * (s.c3 * s.c6 - s.c2 * s.c7), ex(k));
        addv(v, -(s.c6 * s.b + s.c2 * s.c6 * s.c7), -(s.c8 * s.b + s.c4 * s.c6 * s.c7), ex(-k));
        addv(v, 0.0, 4.0 * k * s.d28 * s.c7, xex(-k));
        addv(v, -s.d28 * s.c6, -s.d28 * s.c8, ex(-3.0 * k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(-1.0 / (2.0 * k));
    } else if (name == "psi11") {
        addv(v, s.c7 * s.c2, s.c7 * s.c4, ex(k));
        addv(v, s.d28, s.d28 * s.c3, ex(-k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(2.0 * k);
    } else if (name == "psi12") {
        addv(v, s.c6, s.c8, ex(k));
        addv(v, 0.0, s.d28, ex(-k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(2.0 * k * s.c7);
    } else {
        throw OracleMissingError("state_s52: unknown name " + name);
    }
    return v;
}

// ---- s53 family ----

ExpPoly w_s53(const Cs& s) {
    const Complex k = s.k1;
    return ExpPoly::from_terms({ExpTerm{-s.c7, 0, 2.0 * k},
                                ExpTerm{-s.d28, 0, -2.0 * k},
                                ExpTerm{-s.d1 / k, 1, Complex{0.0, 0.0}},
                                ExpTerm{-(s.c8 + s.d27), 0, Complex{0.0, 0.0}}});
}

void s53_m(const Cs& s, int which, Complex& m00, Complex& m01, Complex& m10, Complex& m11) {
    switch (which) {
    case 1:
        m00 = s.c3; m01 = -1.0; m10 = s.c3 * s.c3; m11 = -s.c3;
        break;
    case 2:
        m00 = s.c2 * s.c4; m01 = -s.c2 * s.c2; m10 = s.c4 * s.c4; m11 = -s.c2 * s.c4;
        break;
    case 3:
        m00 = s.c4 + s.c2 * s.c3; m01 = -2.0 * s.c2; m10 = 2.0 * s.c3 * s.c4;
        m11 = -(s.c4 + s.c2 * s.c3);
        break;
    case 4:
        m00 = s.c8 - s.d27; m01 = -2.0 * s.c6; m10 = 2.0 * s.d38; m11 = -(s.c8 - s.d27);
        break;
    default:
        throw OracleMissingError("s53_m: bad index");
    }
}

RatMatFun x0_s53(const Cs& s) {
    const Complex k = s.k1;
    MatFun m(2);
    // scalar part
    addm(m, k * s.c7, 0.0, 0.0, k * s.c7, ex(2.0 * k));
    addm(m, -k * s.d28, 0.0, 0.0, -k * s.d28, ex(-2.0 * k));
    addm(m, s.d1 / (2.0 * k), 0.0, 0.0, s.d1 / (2.0 * k), ExpPoly::one());
    Complex a00, a01, a10, a11;
    s53_m(s, 1, a00, a01, a10, a11);
    addm(m, a00, a01, a10, a11, ex(2.0 * k).scaled(1.0 / (2.0 * k)));
    s53_m(s, 2, a00, a01, a10, a11);
    addm(m, a00, a01, a10, a11, ex(-2.0 * k).scaled(-1.0 / (2.0 * k)));
    s53_m(s, 3, a00, a01, a10, a11);
    addm(m, a00, a01, a10, a11, ExpPoly::monomial(1));
    s53_m(s, 4, a00, a01, a10, a11);
    addm(m, a00, a01, a10, a11, ExpPoly::constant(k));
    return RatMatFun{m, w_s53(s)};
}

RatMatFun u0_s53(const Cs& s) {
    const Complex k = s.k1;
    MatFun m(2);
    Complex a00, a01, a10, a11;
    s53_m(s, 1, a00, a01, a10, a11);
    addm(m, a00, a01, a10, a11, ex(2.0 * k));
    s53_m(s, 2, a00, a01, a10, a11);
    addm(m, a00, a01, a10, a11, ex(-2.0 * k));
    s53_m(s, 3, a00, a01, a10, a11);
    addm(m, a00, a01, a10, a11, ExpPoly::one());
    const ExpPoly w = w_s53(s);
    MatFun base = MatFun::identity(2).scaled(-k * k).scaled(w);
    return RatMatFun{base + m, w};
}

RatMatFun vminus_s53(const Cs& s) {
    const Complex k = s.k1;
    const ExpPoly e2 = ex(2.0 * k), em2 = ex(-2.0 * k);
    const ExpPoly sum = e2.scaled(s.c7) + em2.scaled(s.d28);   // C7 e^{2kx} + D28 e^{-2kx}
    const ExpPoly dif = e2.scaled(s.c7) - em2.scaled(s.d28);   // C7 e^{2kx} - D28 e^{-2kx}
    const ExpPoly xline = ExpPoly::monomial(1).scaled(s.d1) +
                          ExpPoly::constant(k * (s.c8 + s.d27)); // D1 x + k(C8 + D27)
    MatFun m(2);
    // isotropic part
    {
        ExpPoly iso = (xline * sum).scaled(-2.0 * k) + dif.scaled(2.0 * s.d1) +
                      ExpPoly::constant(-8.0 * k * k * s.c7 * s.d28 +
                                        s.d1 * s.d1 / (2.0 * k * k));
        addm(m, 1.0, 0.0, 0.0, 1.0, iso);
    }
    Complex a00, a01, a10, a11;
    {
        ExpPoly f = xex(2.0 * k).scaled(s.d1 / k) +
                    ex(2.0 * k).scaled(s.c8 + s.d27 - s.d1 / (2.0 * k * k)) +
                    ExpPoly::constant(4.0 * s.d28);
        s53_m(s, 1, a00, a01, a10, a11);
        addm(m, -a00, -a01, -a10, -a11, f);
    }
    {
        ExpPoly f = xex(-2.0 * k).scaled(s.d1 / k) +
                    ex(-2.0 * k).scaled(s.c8 + s.d27 + s.d1 / (2.0 * k * k)) +
                    ExpPoly::constant(4.0 * s.c7);
        s53_m(s, 2, a00, a01, a10, a11);
        addm(m, -a00, -a01, -a10, -a11, f);
    }
    {
        ExpPoly f = (ExpPoly::monomial(1) * dif).scaled(2.0 * k) - sum;
        s53_m(s, 3, a00, a01, a10, a11);
        addm(m, a00, a01, a10, a11, f);
    }
    {
        ExpPoly f = dif.scaled(2.0 * k * k);
        s53_m(s, 4, a00, a01, a10, a11);
        addm(m, a00, a01, a10, a11, f);
    }
    const ExpPoly w = w_s53(s);
    return RatMatFun{m.scaled(2.0), w * w};
}

VecFun state_s53(const Cs& s, const std::string& name) {
    const Complex k = s.k1;
    const Complex k2 = k * k;
    VecFun v(2);
    if (name == "psi1_0") {
        addv(v, s.c3, s.c3 * s.c3, ex(3.0 * k));
        addv(v, 4.0 * k * s.c3 * s.c2, 4.0 * k * s.c3 * s.c4, xex(k));
        addv(v, -(4.0 * k2 * s.d27 - s.d1), 4.0 * k2 * s.d38, ex(k));
        addv(v, -(4.0 * k2 * s.d28 + s.c2 * s.c4), -s.c4 * s.c4, ex(-k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(1.0 / (2.0 * k));
    } else if (name == "psi1_1") {
        addv(v, -s.c3, -s.c3 * s.c3, ExpPoly::term(1.0, 1, 3.0 * k));
        addv(v, 2.0 * k * s.c7, 0.0, ex(3.0 * k));
        addv(v, (4.0 * k2 * s.d28 + s.c2 * s.c4), s.c4 * s.c4, xex(-k));
        addv(v, 2.0 * k * s.d28, 0.0, ex(-k));
        addv(v, -4.0 * k * s.c2 * s.c3, -4.0 * k * s.c3 * s.c4, x2ex(k));
        addv(v, s.d1 + 4.0 * k2 * s.d27, -4.0 * k2 * s.d38, xex(k));
        addv(v, 2.0 * k * (s.c8 + s.d27), 0.0, ex(k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(1.0 / (4.0 * k2));
    } else if (name == "psi3_0") {
        addv(v, -1.0, -s.c3, ex(3.0 * k));
        addv(v, -4.0 * k * s.c2, -4.0 * k * s.c4, xex(k));
        addv(v, -4.0 * k2 * s.c6, -(4.0 * k2 * s.c8 - s.d1), ex(k));
        addv(v, s.c2 * s.c2, -4.0 * k2 * s.d28 + s.c2 * s.c4, ex(-k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(1.0 / (2.0 * k));
    } else if (name == "psi3_1") {
        addv(v, 1.0, s.c3, ExpPoly::term(1.0, 1, 3.0 * k));
        addv(v, 0.0, 2.0 * k * s.c7, ex(3.0 * k));
        addv(v, -s.c2 * s.c2, (4.0 * k2 * s.d28 - s.c2 * s.c4), xex(-k));
        addv(v, 0.0, 2.0 * k * s.d28, ex(-k));
        addv(v, 4.0 * k * s.c2, 4.0 * k * s.c4, x2ex(k));
        addv(v, 4.0 * k2 * s.c6, s.d1 + 4.0 * k2 * s.c8, xex(k));
        addv(v, 0.0, 2.0 * k * (s.c8 + s.d27), ex(k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(1.0 / (4.0 * k2));
    } else if (name == "psi5_0") {
        addv(v, 0.0, s.c7 * s.c7, ex(3.0 * k));
        addv(v, 2.0 * s.c2 * s.c7 - s.d1 / (2.0 * k2),
             2.0 * s.c4 * s.c7 - s.c3 * s.d1 / (2.0 * k2), x2ex(k));
        addv(v, 4.0 * k * s.c6 * s.c7 - (s.c8 + s.d27) / k,
             4.0 * k * s.c7 * s.c8 - s.c3 * (s.c8 + s.d27) / k, xex(k));
        addv(v, -s.c7 * s.c6, s.c7 * s.d27, ex(k));
        addv(v, -s.c6 * (s.c8 + s.d27), -(s.c8 * s.c8 - s.c6 * s.d38), ex(-k));
        addv(v, -s.c2 * (s.c8 + s.d27) / k,
             4.0 * k * s.c7 * s.d28 - s.c4 * (s.c8 + s.d27) / k, xex(-k));
        addv(v, -(2.0 * s.d28 + s.c2 * s.d1 / (2.0 * k2)),
             -(2.0 * s.c3 * s.d28 + s.c4 * s.d1 / (2.0 * k2)), x2ex(-k));
        addv(v, -s.d28 * s.c6, -s.d28 * s.c8, ex(-3.0 * k));
        for (int i = 0; i < 2; ++i) v.at(i) = v.at(i).scaled(1.0 / (2.0 * k));
    } else {
        throw OracleMissingError("state_s53: unknown name " + name);
    }
    return v;
}

// Inputs mapped onto the s53 states.
VecFun preimage_s53(const Cs& s, const std::string& name) {
    const Complex k = s.k1;
    VecFun v(2);
    if (name == "psi1_0") {
        v.at(0) = ex(k);
    } else if (name == "psi1_1") {
        v.at(0) = ExpPoly::term(-1.0 / (2.0 * k), 1, k);
    } else if (name == "psi3_0") {
        v.at(1) = ex(k);
    } else if (name == "psi3_1") {
        v.at(1) = ExpPoly::term(-1.0 / (2.0 * k), 1, k);
    } else if (name == "psi5_0") {
        const Complex q = 1.0 / (8.0 * k * k);
        const Complex h = 1.0 / (2.0 * k);
        // (x^2 -+ x/k) e^{+-kx} blocks of the second-order pull.  The first
        // block of the second component carries +C3: stepping down by
        // (H - lambda) must reproduce the associated member of the family.
        ExpPoly up = x2ex(k) - xex(k).scaled(1.0 / k);
        ExpPoly dn = x2ex(-k) + xex(-k).scaled(1.0 / k);
        v.at(0) = up.scaled(q) + dn.scaled(s.c2 * q) +
                  (xex(-k) + ex(-k).scaled(h)).scaled(s.c6 * h);
        v.at(1) = up.scaled(s.c3 * q) + dn.scaled(s.c4 * q) -
                  (xex(k) - ex(k).scaled(h)).scaled(s.c7 * h) +
                  (xex(-k) + ex(-k).scaled(h)).scaled(s.c8 * h);
    } else if (name == "psi6_0") {
        v.at(0) = ex(k);
        v.at(1) = ex(k).scaled(s.c3);
    } else if (name == "psi6_1" || name == "psi6_1_c2c4zero") {
        v.at(0) = ExpPoly::term(-1.0 / (2.0 * k), 1, k);
        v.at(1) = ExpPoly::term(-s.c3 / (2.0 * k), 1, k) + ex(k).scaled(s.c7);
    } else {
        throw OracleMissingError("preimage_s53: unknown name " + name);
    }
    return v;
}

VecFun combine(const VecFun& a, Complex ca, const VecFun& b, Complex cb) {
    VecFun r(a.n());
    for (int i = 0; i < a.n(); ++i) r.at(i) = a.at(i).scaled(ca) + b.at(i).scaled(cb);
    return r;
}

} // namespace

ExpPoly oracle_wronskian(const ScenarioConfig& cfg) {
    const Cs s = unpack(cfg);
    if (cfg.id == "s51") return w_s51(s);
    if (cfg.id == "s51-case1") return ch(cfg.k1) * ch(cfg.k2, cfg.x0);
    if (cfg.id == "s52") return w_s52(s);
    if (cfg.id == "s53") return w_s53(s);
    throw OracleMissingError("oracle_wronskian: no closed form for " + cfg.id);
}

RatMatFun oracle_superpotential(const ScenarioConfig& cfg) {
    const Cs s = unpack(cfg);
    if (cfg.id == "s51") return x0_s51(s);
    if (cfg.id == "s51-case1") {
        MatFun m(2);
        m.at(0, 0) = (sh(cfg.k1) * ch(cfg.k2, cfg.x0)).scaled(-cfg.k1);
        m.at(1, 1) = (ch(cfg.k1) * sh(cfg.k2, cfg.x0)).scaled(-cfg.k2);
        return RatMatFun{m, ch(cfg.k1) * ch(cfg.k2, cfg.x0)};
    }
    if (cfg.id == "s52") return x0_s52(s);
    if (cfg.id == "s53") return x0_s53(s);
    throw OracleMissingError("oracle_superpotential: no closed form for " + cfg.id);
}

RatMatFun oracle_u0(const ScenarioConfig& cfg) {
    const Cs s = unpack(cfg);
    if (cfg.id == "s51") return u0_s51(s);
    if (cfg.id == "s51-case1") {
        MatFun m(2);
        m.at(0, 0) = ExpPoly::constant(-cfg.k1 * cfg.k1);
        m.at(1, 1) = ExpPoly::constant(-cfg.k2 * cfg.k2);
        return RatMatFun{m, ExpPoly::one()};
    }
    if (cfg.id == "s52") return u0_s52(s);
    if (cfg.id == "s53") return u0_s53(s);
    throw OracleMissingError("oracle_u0: no closed form for " + cfg.id);
}

RatMatFun oracle_v_minus(const ScenarioConfig& cfg) {
    const Cs s = unpack(cfg);
    if (cfg.id == "s51") return vminus_s51(s);
    if (cfg.id == "s51-case1") {
        const ExpPoly c1 = ch(cfg.k1), c2 = ch(cfg.k2, cfg.x0);
        MatFun m(2);
        m.at(0, 0) = (c2 * c2).scaled(-2.0 * cfg.k1 * cfg.k1);
        m.at(1, 1) = (c1 * c1).scaled(-2.0 * cfg.k2 * cfg.k2);
        return RatMatFun{m, c1 * c1 * c2 * c2};
    }
    if (cfg.id == "s52") return vminus_s52(s);
    if (cfg.id == "s53") return vminus_s53(s);
    throw OracleMissingError("oracle_v_minus: no closed form for " + cfg.id);
}

RatVecFun oracle_state(const ScenarioConfig& cfg, const std::string& name) {
    const Cs s = unpack(cfg);
    if (cfg.id == "s51") {
        if (name.size() == 4 && name.rfind("psi", 0) == 0 && name[3] >= '1' && name[3] <= '8')
            return RatVecFun{state_s51(s, name[3] - '0'), w_s51(s)};
        return RatVecFun{state_s51_sp(s, name), w_s51(s)};
    }
    if (cfg.id == "s51-case1") {
        const ExpPoly w = ch(cfg.k1) * ch(cfg.k2, cfg.x0);
        VecFun v(2);
        if (name == "psi11") {
            v.at(0) = ch(cfg.k2, cfg.x0).scaled(cfg.k1);
        } else if (name == "psi12") {
            v.at(1) = ch(cfg.k1).scaled(0.25 * cfg.k2);
        } else {
            throw OracleMissingError("oracle_state: " + cfg.id + " has no state " + name);
        }
        return RatVecFun{v, w};
    }
    if (cfg.id == "s52") return RatVecFun{state_s52(s, name), w_s52(s)};
    if (cfg.id == "s53") {
        if (name == "psi6_0")
            return RatVecFun{combine(state_s53(s, "psi1_0"), 1.0, state_s53(s, "psi3_0"), s.c3),
                             w_s53(s)};
        if (name == "psi6_1") {
            VecFun mixed = combine(state_s53(s, "psi1_1"), 1.0, state_s53(s, "psi3_1"), s.c3);
            return RatVecFun{combine(mixed, 1.0, state_s53(s, "psi3_0"), s.c7), w_s53(s)};
        }
        if (name == "psi6_1_c2c4zero") {
            if (!(std::abs(s.c2) < 1e-12 && std::abs(s.c4) < 1e-12))
                throw OracleMissingError("psi6_1_c2c4zero requires vanishing second and fourth "
                                         "constants");
            const Complex k = s.k1;
            const Complex g = s.c8 - s.c3 * s.c6;
            VecFun v(2);
            v.at(0) = ExpPoly::constant(2.0 * k * s.c6 * s.c7 - g / (2.0 * k));
            v.at(1) = ExpPoly::constant(2.0 * k * s.c7 * s.c8 - s.c3 * g / (2.0 * k));
            ExpPoly den = ExpPoly::from_terms({ExpTerm{s.c7, 0, k}, ExpTerm{g, 0, -k}});
            return RatVecFun{v, den};
        }
        return RatVecFun{state_s53(s, name), w_s53(s)};
    }
    throw OracleMissingError("oracle_state: no closed forms for " + cfg.id);
}

std::vector<std::string> oracle_state_names(const std::string& scenario_id) {
    if (scenario_id == "s51")
        return {"psi1", "psi2", "psi3", "psi4", "psi5", "psi6",
                "psi7", "psi8", "psi9", "psi10", "psi11", "psi12"};
    if (scenario_id == "s51-case1") return {"psi11", "psi12"};
    if (scenario_id == "s52")
        return {"psi1", "psi2", "psi3", "psi4", "psi9", "psi10", "psi11", "psi12"};
    if (scenario_id == "s53")
        return {"psi1_0", "psi1_1", "psi3_0", "psi3_1", "psi5_0", "psi6_0", "psi6_1"};
    throw OracleMissingError("oracle_state_names: unknown scenario " + scenario_id);
}

RatVecFun oracle_state_preimage(const ScenarioConfig& cfg, const std::string& name) {
    const Cs s = unpack(cfg);
    VecFun v(2);
    if (cfg.id == "s51" || cfg.id == "s51-case1") {
        const Complex k1 = s.k1, k2 = s.k2;
        if (name == "psi1") v.at(0) = ex(k1);
        else if (name == "psi2") v.at(0) = ex(-k1);
        else if (name == "psi3") v.at(1) = ex(k1);
        else if (name == "psi4") v.at(1) = ex(-k1);
        else if (name == "psi5") v.at(0) = ex(k2);
        else if (name == "psi6") v.at(0) = ex(-k2);
        else if (name == "psi7") v.at(1) = ex(k2);
        else if (name == "psi8") v.at(1) = ex(-k2);
        else if (name == "psi9") {
            const Complex h = 1.0 / (2.0 * k1);
            v.at(0) = xex(k1).scaled(-h) + xex(-k1).scaled(s.c2 * h);
            v.at(1) = xex(k1).scaled(-s.c3 * h) + xex(-k1).scaled(s.c4 * h);
        } else if (name == "psi10") {
            const Complex h = 1.0 / (2.0 * k2);
            v.at(0) = xex(k2).scaled(-s.c5 * h) + xex(-k2).scaled(s.c6 * h);
            v.at(1) = xex(k2).scaled(-s.c7 * h) + xex(-k2).scaled(s.c8 * h);
        } else if (name == "psi11") {
            v.at(0) = ex(k1);
            v.at(1) = ex(k1).scaled(s.c3);
        } else if (name == "psi12") {
            v.at(0) = ex(k2).scaled(s.c5);
            v.at(1) = ex(k2).scaled(s.c7);
        } else {
            throw OracleMissingError("oracle_state_preimage: unknown " + name);
        }
        return RatVecFun::from_vec(std::move(v));
    }
    if (cfg.id == "s52") {
        const Complex k = s.k1;
        if (name == "psi1") v.at(0) = ex(k);
        else if (name == "psi2") v.at(0) = ex(-k);
        else if (name == "psi3") v.at(1) = ex(k);
        else if (name == "psi4") v.at(1) = ex(-k);
        else if (name == "psi9") {
            const Complex h = 1.0 / (2.0 * k);
            v.at(0) = xex(k).scaled(-h) + xex(-k).scaled(s.c2 * h);
            v.at(1) = xex(k).scaled(-s.c3 * h) + xex(-k).scaled(s.c4 * h);
        } else if (name == "psi10") {
            const Complex h = 1.0 / (2.0 * k);
            v.at(0) = xex(-k).scaled(s.c6 * h);
            v.at(1) = xex(k).scaled(-s.c7 * h) + xex(-k).scaled(s.c8 * h);
        } else if (name == "psi11") {
            v.at(0) = ex(k);
            v.at(1) = ex(k).scaled(s.c3);
        } else if (name == "psi12") {
            v.at(1) = ex(k).scaled(s.c7);
        } else {
            throw OracleMissingError("oracle_state_preimage: unknown " + name);
        }
        return RatVecFun::from_vec(std::move(v));
    }
    if (cfg.id == "s53") return RatVecFun::from_vec(preimage_s53(s, name));
    throw OracleMissingError("oracle_state_preimage: no data for " + cfg.id);
}

ReductionOracle oracle_reduction(const ScenarioConfig& cfg, const std::string& which) {
    const Cs s = unpack(cfg);
    ReductionOracle out;
    if ((cfg.id == "s51" || cfg.id == "s51-case1") && which == "delta1-nonzero") {
        if (std::abs(s.d1) < 1e-12)
            throw OracleMissingError("delta1-nonzero reduction needs a nonzero delta1");
        CMat c(2);
        c.at(0, 0) = 1.0;
        c.at(0, 1) = s.c2;
        c.at(1, 0) = s.c3;
        c.at(1, 1) = s.c4;
        out.c = c;
        const Complex t5 = -s.c2745 / s.d1, t6 = -s.d28 / s.d1, t7 = s.a / s.d1,
                      t8 = s.b / s.d1;
        out.w = ExpPoly::from_terms({ExpTerm{t7, 0, s.k1 + s.k2},
                                     ExpTerm{t8, 0, s.k1 - s.k2},
                                     ExpTerm{-t5, 0, -(s.k1 - s.k2)},
                                     ExpTerm{-t6, 0, -(s.k1 + s.k2)}});
        {
            MatFun m(2);
            const Complex dq = s.k1 * s.k1 - s.k2 * s.k2;
            addm(m, t5, 0.0, t7, 0.0, ex(-(s.k1 - s.k2)).scaled(-dq));
            addm(m, t6, 0.0, t8, 0.0, ex(-(s.k1 + s.k2)).scaled(-dq));
            addm(m, 0.0, -t5, 0.0, -t7, ex(s.k1 + s.k2).scaled(-dq));
            addm(m, 0.0, -t6, 0.0, -t8, ex(s.k1 - s.k2).scaled(-dq));
            MatFun base = MatFun::identity(2).scaled(-s.k1 * s.k1).scaled(out.w);
            out.u0 = RatMatFun{base + m, out.w};
            out.has_u0 = true;
        }
        {
            VecFun v(2);
            addv(v, -(s.k1 - s.k2) * t5, (s.k1 + s.k2) * t7, ex(s.k2));
            addv(v, -(s.k1 + s.k2) * t6, (s.k1 - s.k2) * t8, ex(-s.k2));
            out.states.push_back({"psi11", RatVecFun{v, out.w}});
        }
        {
            VecFun v(2);
            const Complex g = (s.k1 + s.k2) * t6 * t7 - (s.k1 - s.k2) * t5 * t8;
            addv(v, g, 2.0 * s.k2 * t7 * t8, ex(s.k1));
            addv(v, -2.0 * s.k2 * t5 * t6, -g, ex(-s.k1));
            out.states.push_back({"psi12", RatVecFun{v, out.w}});
        }
        return out;
    }
    if ((cfg.id == "s51" || cfg.id == "s51-case1") && which == "delta1-zero") {
        if (std::abs(s.d1) > 1e-12)
            throw OracleMissingError("delta1-zero reduction needs a vanishing delta1");
        const Complex alpha = cfg.alpha;
        CMat c(2);
        c.at(0, 0) = 1.0;
        c.at(0, 1) = 0.0;
        c.at(1, 0) = s.c3;
        c.at(1, 1) = -alpha;
        out.c = c;
        const Complex t7 = -s.a / alpha, t8 = -s.b / alpha;
        out.w = ExpPoly::from_terms({ExpTerm{1.0, 0, s.k1}, ExpTerm{s.c2, 0, -s.k1}}) *
                ExpPoly::from_terms({ExpTerm{t7, 0, s.k2}, ExpTerm{t8, 0, -s.k2}});
        {
            VecFun v(2);
            v.at(0) = ExpPoly::from_terms({ExpTerm{t7, 0, s.k2}, ExpTerm{t8, 0, -s.k2}})
                          .scaled(2.0 * s.k1 * s.c2);
            out.states.push_back({"psi11", RatVecFun{v, out.w}});
        }
        return out;
    }
    if (cfg.id == "s52" && (which == "c6-nonzero" || which == "c6-zero")) {
        const Complex disc2 = (s.c8 + s.c3 * s.c6 - s.c2 * s.c7) * (s.c8 + s.c3 * s.c6 - s.c2 * s.c7) -
                              4.0 * s.c6 * (s.c3 * s.c8 - s.c4 * s.c7);
        if (std::abs(disc2) < 1e-12)
            throw OracleMissingError("s52 diagonal reduction needs a nonzero discriminant");
        Complex t2, t8;
        CMat c = CMat::identity(2);
        if (which == "c6-nonzero") {
            if (std::abs(s.c6) < 1e-12)
                throw OracleMissingError("c6-nonzero reduction needs a nonzero sixth constant");
            Complex delta = std::sqrt(disc2);
            if (std::abs(s.c8 + s.c2 * s.c7 - s.c3 * s.c6 - delta) < 1e-12) delta = -delta;
            t2 = 2.0 * s.d28 / (s.c8 + s.c2 * s.c7 - s.c3 * s.c6 - delta);
            t8 = 0.5 * (s.c8 + s.c2 * s.c7 - s.c3 * s.c6 - delta);
            // Columns of the conjugation relate the mixed pair to the
            // decoupled pair: first + theta*second collapses onto the first
            // channel, second - mu*first onto the second channel.
            const Complex theta = (t2 - s.c2) / s.c6;
            const Complex mu = s.c6 * s.c7 / (s.c2 * s.c7 - t8);
            c.at(1, 0) = s.c3 + theta * s.c7;
            c.at(0, 1) = -mu / s.c7;
            c.at(1, 1) = (s.c7 - mu * s.c3) / s.c7;
        } else {
            if (std::abs(s.c6) > 1e-12)
                throw OracleMissingError("c6-zero reduction needs a vanishing sixth constant");
            if (std::abs(s.c8 - s.c2 * s.c7) < 1e-12)
                throw OracleMissingError("s52 reduction matrix is undefined here");
            t2 = s.c2;
            t8 = s.c8;
            c.at(1, 0) = (s.c3 * s.c8 - s.c4 * s.c7) / (s.c8 - s.c2 * s.c7);
        }
        out.c = c;
        const ExpPoly f1 = ExpPoly::from_terms({ExpTerm{1.0, 0, s.k1}, ExpTerm{t2, 0, -s.k1}});
        const ExpPoly f2 = ExpPoly::from_terms({ExpTerm{s.c7, 0, s.k1}, ExpTerm{t8, 0, -s.k1}});
        out.w = f1 * f2;
        out.has_u0 = true;
        out.u0 = RatMatFun{MatFun::identity(2).scaled(-s.k1 * s.k1), ExpPoly::one()};
        MatFun m(2);
        m.at(0, 0) = (f2 * f2).scaled(-8.0 * s.k1 * s.k1 * t2);
        m.at(1, 1) = (f1 * f1).scaled(-8.0 * s.k1 * s.k1 * s.c7 * t8);
        out.v_minus = RatMatFun{m, out.w * out.w};
        out.has_v_minus = true;
        return out;
    }
    if (cfg.id == "s53" && which == "delta1-nonzero") {
        if (std::abs(s.d1) < 1e-12)
            throw OracleMissingError("delta1-nonzero reduction needs a nonzero delta1");
        CMat c(2);
        c.at(0, 0) = 1.0;
        c.at(0, 1) = s.c2;
        c.at(1, 0) = s.c3;
        c.at(1, 1) = s.c4;
        out.c = c;
        const Complex k = s.k1;
        const Complex t6 = -s.d28 / s.d1, t7 = s.c7 / s.d1, t8 = (s.c8 + s.d27) / s.d1;
        out.w = ExpPoly::from_terms({ExpTerm{-t7, 0, 2.0 * k},
                                     ExpTerm{t6, 0, -2.0 * k},
                                     ExpTerm{-1.0 / k, 1, Complex{0.0, 0.0}},
                                     ExpTerm{-t8, 0, Complex{0.0, 0.0}}});
        MatFun m(2);
        m.at(0, 0) = ExpPoly::one();
        m.at(0, 1) = ex(2.0 * k).scaled(-1.0);
        m.at(1, 0) = ex(-2.0 * k);
        m.at(1, 1) = ExpPoly::constant(-1.0);
        MatFun base = MatFun::identity(2).scaled(-k * k).scaled(out.w);
        out.u0 = RatMatFun{base + m, out.w};
        out.has_u0 = true;
        return out;
    }
    throw OracleMissingError("oracle_reduction: no data for " + cfg.id + "/" + which);
}

} // namespace specdesign
