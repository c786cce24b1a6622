#include "specdesign/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace specdesign {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ExpPoly& p) {
    Json arr = Json::array();
    for (const ExpTerm& t : p.terms())
        arr.push_back(Json{{"c", to_json(t.coeff)}, {"m", t.power}, {"k", to_json(t.rate)}});
    return arr;
}

Json to_json(const VecFun& v) {
    Json arr = Json::array();
    for (int i = 0; i < v.n(); ++i) arr.push_back(to_json(v.at(i)));
    return arr;
}

Json to_json(const MatFun& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const RatVecFun& v) {
    return Json{{"num", to_json(v.num)}, {"den", to_json(v.den.expanded())}};
}

Json to_json(const RatMatFun& m) {
    return Json{{"num", to_json(m.num)}, {"den", to_json(m.den.expanded())}};
}

Json to_json(const CMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const Hamiltonian& h) {
    return Json{{"n", h.n}, {"potential", to_json(h.potential)}};
}

Json to_json(const IntertwiningOperator& q) {
    Json lower = Json::array();
    for (const RatMatFun& x : q.lower) lower.push_back(to_json(x));
    return Json{{"n", q.n}, {"order", q.order}, {"leading", to_json(q.leading)},
                {"lower", lower}};
}

Json to_json(const TransformationSet& s) {
    Json entries = Json::array();
    for (const ChainEntry& e : s.entries())
        entries.push_back(Json{{"phi", to_json(e.phi)},
                               {"lambda", to_json(e.lambda)},
                               {"sigma", e.sigma}});
    return Json{{"n", s.n()}, {"entries", entries}};
}

Json to_json(const ScenarioConfig& c) {
    Json j{{"id", c.id}};
    j["k1"] = to_json(c.k1);
    j["k2"] = to_json(c.k2);
    Json constants;
    for (int i = 0; i < 8; ++i) constants["C" + std::to_string(i + 1)] = to_json(c.c[i]);
    j["constants"] = constants;
    j["x0"] = c.x0;
    j["alpha"] = to_json(c.alpha);
    j["grid"] = Json{{"xmin", c.grid.xmin}, {"xmax", c.grid.xmax}, {"samples", c.grid.samples}};
    j["wtol"] = c.wtol;
    if (c.id == "custom") {
        j["n"] = c.n;
        Json entries = Json::array();
        for (const ChainEntry& e : c.custom_entries)
            entries.push_back(Json{{"phi", to_json(e.phi)},
                                   {"lambda", to_json(e.lambda)},
                                   {"sigma", e.sigma}});
        j["entries"] = entries;
        if (c.has_custom_potential) j["potential"] = to_json(c.custom_potential);
    }
    return j;
}

Json to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const Check& c : r.checks)
        checks.push_back(Json{{"name", c.name},
                              {"exact", c.exact},
                              {"residual", c.residual},
                              {"where", c.where}});
    return Json{{"overall", r.overall()}, {"checks", checks}};
}

Json to_json(const NonvanishingReport& r) {
    auto verdict = [](NonvanishingReport::Verdict v) {
        switch (v) {
        case NonvanishingReport::Verdict::Pass: return "pass";
        case NonvanishingReport::Verdict::Fail: return "fail";
        default: return "inconclusive";
        }
    };
    auto asym = [](const Asymptotics& a) {
        return Json{{"rate_re", a.rate_re}, {"power", a.power}, {"oscillatory", a.oscillatory}};
    };
    return Json{{"verdict", verdict(r.verdict)},
                {"min_abs", r.min_abs},
                {"min_abs_x", r.min_abs_x},
                {"plus", asym(r.plus)},
                {"minus", asym(r.minus)}};
}

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("complex values must be [re, im] pairs");
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

ExpPoly exppoly_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("exp-polynomial must be an array of terms");
    std::vector<ExpTerm> ts;
    for (const Json& t : j) {
        if (!t.contains("c") || !t.contains("m") || !t.contains("k"))
            throw ValidationError("term needs fields c, m, k");
        ts.push_back(ExpTerm{complex_from_json(t["c"]), t["m"].get<int>(),
                             complex_from_json(t["k"])});
    }
    return ExpPoly::from_terms(std::move(ts));
}

VecFun vecfun_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("vector must be a nonempty array");
    VecFun v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v.at(static_cast<int>(i)) = exppoly_from_json(j[i]);
    return v;
}

MatFun matfun_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a nonempty array");
    const int n = static_cast<int>(j.size());
    MatFun m(n);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != n)
            throw ValidationError("matrix rows must all have length n");
        for (int c = 0; c < n; ++c) m.at(i, c) = exppoly_from_json(j[i][c]);
    }
    return m;
}

RatVecFun ratvec_from_json(const Json& j) {
    return RatVecFun{vecfun_from_json(j.at("num")), exppoly_from_json(j.at("den"))};
}

RatMatFun ratmat_from_json(const Json& j) {
    return RatMatFun{matfun_from_json(j.at("num")), exppoly_from_json(j.at("den"))};
}

CMat cmat_from_json(const Json& j) {
    const int n = static_cast<int>(j.size());
    CMat m(n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) m.at(i, c) = complex_from_json(j[i][c]);
    return m;
}

Hamiltonian hamiltonian_from_json(const Json& j) {
    return Hamiltonian{j.at("n").get<int>(), ratmat_from_json(j.at("potential"))};
}

IntertwiningOperator operator_from_json(const Json& j) {
    IntertwiningOperator q;
    q.n = j.at("n").get<int>();
    q.order = j.at("order").get<int>();
    q.leading = cmat_from_json(j.at("leading"));
    for (const Json& x : j.at("lower")) q.lower.push_back(ratmat_from_json(x));
    if (static_cast<int>(q.lower.size()) != q.order)
        throw ValidationError("operator: lower coefficient count must equal the order");
    return q;
}

TransformationSet set_from_json(const Json& j) {
    std::vector<ChainEntry> entries;
    for (const Json& e : j.at("entries"))
        entries.emplace_back(ratvec_from_json(e.at("phi")), complex_from_json(e.at("lambda")),
                             e.at("sigma").get<int>());
    return TransformationSet(j.at("n").get<int>(), std::move(entries));
}

ScenarioConfig config_from_json(const Json& j) {
    ScenarioConfig c;
    c.id = j.at("id").get<std::string>();
    if (c.id != "custom") {
        ScenarioConfig defaults = default_config(c.id);
        c = defaults;
    }
    if (j.contains("k1")) c.k1 = complex_from_json(j["k1"]);
    if (j.contains("k2")) c.k2 = complex_from_json(j["k2"]);
    if (c.id == "s52" || c.id == "s53") c.k2 = c.k1;
    if (j.contains("constants"))
        for (int i = 0; i < 8; ++i) {
            const std::string key = "C" + std::to_string(i + 1);
            if (j["constants"].contains(key)) c.c[i] = complex_from_json(j["constants"][key]);
        }
    if (j.contains("x0")) c.x0 = j["x0"].get<double>();
    if (j.contains("alpha")) c.alpha = complex_from_json(j["alpha"]);
    if (j.contains("grid")) {
        const Json& g = j["grid"];
        if (g.contains("xmin")) c.grid.xmin = g["xmin"].get<double>();
        if (g.contains("xmax")) c.grid.xmax = g["xmax"].get<double>();
        if (g.contains("samples")) c.grid.samples = g["samples"].get<int>();
    }
    if (j.contains("wtol")) c.wtol = j["wtol"].get<double>();
    if (c.id == "custom") {
        c.n = j.at("n").get<int>();
        for (const Json& e : j.at("entries"))
            c.custom_entries.emplace_back(ratvec_from_json(e.at("phi")),
                                          complex_from_json(e.at("lambda")),
                                          e.at("sigma").get<int>());
        if (j.contains("potential")) {
            c.custom_potential = ratmat_from_json(j["potential"]);
            c.has_custom_potential = true;
        }
    }
    return c;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw ValidationError("parse error in " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string ExportTable::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    char buf[40];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

ExportTable export_matrix(const RatMatFun& m, const std::string& label, double xmin, double xmax,
                          int samples) {
    ExportTable t;
    t.header.push_back("x");
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) {
            const std::string base =
                label + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            t.header.push_back(base + ".re");
            t.header.push_back(base + ".im");
        }
    for (int sidx = 0; sidx < samples; ++sidx) {
        const double x = xmin + (xmax - xmin) * double(sidx) / double(samples - 1);
        std::vector<double> row{x};
        auto vals = eval(m, x);
        for (const Complex& z : vals) {
            row.push_back(z.real());
            row.push_back(z.imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

ExportTable export_vector(const RatVecFun& v, const std::string& label, double xmin, double xmax,
                          int samples) {
    ExportTable t;
    t.header.push_back("x");
    for (int i = 0; i < v.n(); ++i) {
        const std::string base = label + "[" + std::to_string(i) + "]";
        t.header.push_back(base + ".re");
        t.header.push_back(base + ".im");
    }
    for (int sidx = 0; sidx < samples; ++sidx) {
        const double x = xmin + (xmax - xmin) * double(sidx) / double(samples - 1);
        std::vector<double> row{x};
        auto vals = eval(v, x);
        for (const Complex& z : vals) {
            row.push_back(z.real());
            row.push_back(z.imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

ExportTable export_scalar(const ExpPoly& p, const std::string& label, double xmin, double xmax,
                          int samples) {
    ExportTable t;
    t.header = {"x", label + ".re", label + ".im"};
    for (int sidx = 0; sidx < samples; ++sidx) {
        const double x = xmin + (xmax - xmin) * double(sidx) / double(samples - 1);
        const Complex z = p.eval(x);
        t.rows.push_back({x, z.real(), z.imag()});
    }
    return t;
}

} // namespace specdesign
