#include "g2fm/json_io.hpp"

#include "g2fm/spin7.hpp"

namespace g2fm {

namespace {

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

std::vector<Rational> rationals_from_json(const json& j) {
    if (!j.is_array()) throw SchemaError("expected an array of numbers");
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational_from_json(x));
    return out;
}

json rationals_to_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_to_json(x));
    return a;
}

Side side_from_json(const json& j) {
    std::string s = j.value("side", "M");
    if (s == "M") return Side::M;
    if (s == "W") return Side::W;
    throw SchemaError("side must be \"M\" or \"W\"");
}

}  // namespace

FramePtr frame_by_name(const std::string& name) {
    if (name == "g2") return g2_frame();
    if (name == "Z") return spin7_frame();
    if (name == "W") return fourier_setup(Fibration::CoassociativeT4).w;
    if (name == "W3") return fourier_setup(Fibration::AssociativeT3).w;
    throw SchemaError("unknown frame \"" + name + "\"");
}

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_number()) return parse_rational(j.dump());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    throw SchemaError("expected a rational number, got " + j.dump());
}

json form_to_json(const Form& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.terms()) terms.push_back({{"idx", indices_of(m)}, {"coeff", to_string(c)}});
    return {{"frame", f.frame()->name}, {"degree", f.degree()}, {"terms", terms}};
}

Form form_from_json(const json& j) {
    FramePtr frame = frame_by_name(require(j, "frame").get<std::string>());
    const json& deg = require(j, "degree");
    if (!deg.is_number_integer() || deg.get<int>() < 0 || deg.get<int>() > frame->dim)
        throw SchemaError("degree out of range");
    Form f(frame, deg.get<int>());
    const json& terms = require(j, "terms");
    if (!terms.is_array()) throw SchemaError("\"terms\" must be an array");
    for (const auto& t : terms) {
        const json& idx = require(t, "idx");
        if (!idx.is_array()) throw SchemaError("\"idx\" must be an array");
        std::vector<int> ix;
        for (const auto& i : idx) {
            if (!i.is_number_integer() || i.get<int>() < 0 || i.get<int>() >= frame->dim)
                throw SchemaError("index out of range in " + idx.dump());
            ix.push_back(i.get<int>());
        }
        if (static_cast<int>(ix.size()) != f.degree()) throw SchemaError("term " + idx.dump() + " has the wrong degree");
        if (mask_of(ix) == 0 && !ix.empty()) throw SchemaError("repeated index in " + idx.dump());
        try {
            f += Form::monomial(frame, ix, rational_from_json(require(t, "coeff")));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(e.what());
        }
    }
    return f;
}

json plane_to_json(const Plane& p) {
    json span = json::array();
    for (const auto& v : p.span) span.push_back(rationals_to_json(v));
    return {{"span", span}};
}

Plane plane_from_json(const json& j) {
    const json& span = require(j, "span");
    if (!span.is_array() || span.empty()) throw SchemaError("\"span\" must be a non-empty array");
    Plane p;
    for (const auto& v : span) p.span.push_back(rationals_from_json(v));
    for (const auto& v : p.span)
        if (v.size() != p.span.front().size()) throw SchemaError("span vectors differ in length");
    return p;
}

json verdict_to_json(const CalibrationVerdict& v) {
    return {{"k", v.k},
            {"value", v.value},
            {"volume", v.volume},
            {"ratio", v.ratio},
            {"chi_norm", v.chi_norm},
            {"omega_norm", v.omega_norm},
            {"exact", v.exact},
            {"associative", v.associative},
            {"coassociative", v.coassociative},
            {"cayley", v.cayley},
            {"orientation", v.orientation}};
}

json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coeff", to_string(c)}});
    return {{"nvars", p.nvars()}, {"terms", terms}};
}

Poly poly_from_json(const json& j) {
    const json& nv = require(j, "nvars");
    if (!nv.is_number_integer() || nv.get<int>() < 0) throw SchemaError("\"nvars\" must be a non-negative integer");
    Poly p(nv.get<int>());
    const json& terms = require(j, "terms");
    if (!terms.is_array()) throw SchemaError("\"terms\" must be an array");
    for (const auto& t : terms) {
        const json& e = require(t, "exp");
        if (!e.is_array() || static_cast<int>(e.size()) != p.nvars()) throw SchemaError("exponent length mismatch");
        Poly::Exponent ex;
        for (const auto& x : e) {
            if (!x.is_number_integer() || x.get<int>() < 0) throw SchemaError("exponents must be non-negative integers");
            ex.push_back(x.get<int>());
        }
        p.add(ex, rational_from_json(require(t, "coeff")));
    }
    return p;
}

json field_to_json(const Field& f) {
    if (f.is_poly()) return {{"poly", poly_to_json(f.poly())}};
    const Grid& g = f.grid();
    json values;
    if (g.ndim() == 1) {
        values = g.data();
    } else if (g.ndim() == 2) {
        values = json::array();
        for (int r = 0; r < g.shape()[0]; ++r)
            values.push_back(std::vector<double>(g.data().begin() + r * g.shape()[1], g.data().begin() + (r + 1) * g.shape()[1]));
    } else {
        throw SchemaError("only 1- and 2-dimensional grids serialize");
    }
    return {{"grid", values}, {"period", g.period()}};
}

Field field_from_json(const json& j, int nvars) {
    if (j.is_object() && j.contains("poly")) {
        Poly p = poly_from_json(j.at("poly"));
        if (p.nvars() != nvars)
            throw SchemaError("polynomial in " + std::to_string(p.nvars()) + " variables where " + std::to_string(nvars) +
                              " base variables are expected (the data must not depend on the fibre)");
        return p;
    }
    const json& g = require(j, "grid");
    std::vector<int> shape;
    std::vector<double> values;
    if (!g.is_array() || g.empty()) throw SchemaError("\"grid\" must be a non-empty array");
    if (g.front().is_array()) {
        shape = {static_cast<int>(g.size()), static_cast<int>(g.front().size())};
        for (const auto& row : g) {
            if (!row.is_array() || static_cast<int>(row.size()) != shape[1]) throw SchemaError("ragged grid");
            for (const auto& x : row) {
                if (!x.is_number()) throw SchemaError("grid values must be numbers");
                values.push_back(x.get<double>());
            }
        }
    } else {
        shape = {static_cast<int>(g.size())};
        for (const auto& x : g) {
            if (!x.is_number()) throw SchemaError("grid values must be numbers");
            values.push_back(x.get<double>());
        }
    }
    if (static_cast<int>(shape.size()) != nvars)
        throw SchemaError("grid of dimension " + std::to_string(shape.size()) + " where " + std::to_string(nvars) +
                          " base variables are expected");
    for (int s : shape)
        if (s < 8) throw SchemaError("grid resolution below 8");
    std::vector<double> period(shape.size(), 1.0);
    if (j.contains("period")) {
        period = j.at("period").get<std::vector<double>>();
        if (period.size() != shape.size()) throw SchemaError("period length mismatch");
        for (double p : period)
            if (!(p > 0)) throw SchemaError("periods must be positive");
    }
    Grid out(shape, period);
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i];
    return out;
}

CycleDocument cycle_from_json(const json& j) {
    try {
        std::string kind = require(j, "kind").get<std::string>();
        if (kind == "coassoc-semiflat") {
            SemiFlatCoassocCycle c;
            c.side = side_from_json(j);
            const json& fn = require(j, "functions");
            const json& cn = require(j, "connection");
            bool m = c.side == Side::M;
            c.graph = {field_from_json(require(fn, m ? "B0" : "D1"), 2), field_from_json(require(fn, m ? "B3" : "D2"), 2)};
            c.conn = {field_from_json(require(cn, m ? "D1" : "B0"), 2), field_from_json(require(cn, m ? "D2" : "B3"), 2)};
            c.a1 = field_from_json(require(cn, "a1"), 2);
            c.a2 = field_from_json(require(cn, "a2"), 2);
            return c;
        }
        if (kind == "assoc-semiflat") {
            SemiFlatAssocCycle c;
            c.side = side_from_json(j);
            const json& fn = require(j, "functions");
            const json& cn = require(j, "connection");
            bool m = c.side == Side::M;
            c.graph = {field_from_json(require(fn, m ? "B2" : "D0"), 1), field_from_json(require(fn, m ? "B3" : "D1"), 1)};
            c.conn = {field_from_json(require(cn, m ? "D0" : "B2"), 1), field_from_json(require(cn, m ? "D1" : "B3"), 1)};
            c.a = field_from_json(require(cn, "a"), 1);
            return c;
        }
        if (kind == "assoc-section" || kind == "coassoc-section") {
            SectionDocument d;
            bool ass = kind == "assoc-section";
            d.section.kind = ass ? SectionKind::Associative : SectionKind::Coassociative;
            int nvars = ass ? 3 : 4;
            std::size_t nfib = ass ? 4 : 3;
            const json& fib = require(j, "fiber");
            const json& con = require(j, "connection");
            if (!fib.is_array() || fib.size() != nfib) throw SchemaError("\"fiber\" must list " + std::to_string(nfib) + " polynomials");
            if (!con.is_array() || static_cast<int>(con.size()) != nvars)
                throw SchemaError("\"connection\" must list " + std::to_string(nvars) + " polynomials");
            auto poly = [&](const json& p) {
                Field f = field_from_json(p, nvars);
                if (!f.is_poly()) throw SchemaError("sections take polynomial data only");
                return f.poly();
            };
            for (const auto& p : fib) d.section.fiber.push_back(poly(p));
            for (const auto& p : con) d.section.connection.push_back(poly(p));
            if (j.contains("points")) {
                for (const auto& p : j.at("points")) {
                    auto v = rationals_from_json(p);
                    if (static_cast<int>(v.size()) != nvars) throw SchemaError("evaluation point of the wrong dimension");
                    d.points.push_back(v);
                }
            }
            if (d.points.empty()) d.points.push_back(std::vector<Rational>(nvars, 0));
            return d;
        }
        if (kind == "flat-torus-point" || kind == "flat-torus-connection") {
            FlatTorusObject o;
            o.kind = kind == "flat-torus-point" ? FlatTorusObject::Kind::Point : FlatTorusObject::Kind::Connection;
            o.coords = rationals_from_json(require(j, "coords"));
            o.scales = j.contains("scales") ? rationals_from_json(j.at("scales")) : std::vector<Rational>(o.coords.size(), 1);
            if (o.scales.size() != o.coords.size()) throw SchemaError("\"coords\" and \"scales\" differ in length");
            for (const auto& s : o.scales)
                if (s <= 0) throw SchemaError("scales must be positive");
            return o;
        }
        throw SchemaError("unknown cycle kind \"" + kind + "\"");
    } catch (const json::exception& e) {
        throw SchemaError(e.what());
    }
}

json cycle_to_json(const CycleDocument& doc) {
    return std::visit(
        [](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, SemiFlatCoassocCycle>) {
                bool m = c.side == Side::M;
                json fn{{m ? "B0" : "D1", field_to_json(c.graph[0])}, {m ? "B3" : "D2", field_to_json(c.graph[1])}};
                json cn{{"a1", field_to_json(c.a1)},
                        {"a2", field_to_json(c.a2)},
                        {m ? "D1" : "B0", field_to_json(c.conn[0])},
                        {m ? "D2" : "B3", field_to_json(c.conn[1])}};
                return {{"kind", "coassoc-semiflat"}, {"side", m ? "M" : "W"}, {"functions", fn}, {"connection", cn}};
            } else if constexpr (std::is_same_v<T, SemiFlatAssocCycle>) {
                bool m = c.side == Side::M;
                json fn{{m ? "B2" : "D0", field_to_json(c.graph[0])}, {m ? "B3" : "D1", field_to_json(c.graph[1])}};
                json cn{{"a", field_to_json(c.a)},
                        {m ? "D0" : "B2", field_to_json(c.conn[0])},
                        {m ? "D1" : "B3", field_to_json(c.conn[1])}};
                return {{"kind", "assoc-semiflat"}, {"side", m ? "M" : "W"}, {"functions", fn}, {"connection", cn}};
            } else if constexpr (std::is_same_v<T, SectionDocument>) {
                json fib = json::array(), con = json::array(), pts = json::array();
                for (const auto& p : c.section.fiber) fib.push_back({{"poly", poly_to_json(p)}});
                for (const auto& p : c.section.connection) con.push_back({{"poly", poly_to_json(p)}});
                for (const auto& p : c.points) pts.push_back(rationals_to_json(p));
                return {{"kind", c.section.kind == SectionKind::Associative ? "assoc-section" : "coassoc-section"},
                        {"fiber", fib},
                        {"connection", con},
                        {"points", pts}};
            } else {
                return {{"kind", c.kind == FlatTorusObject::Kind::Point ? "flat-torus-point" : "flat-torus-connection"},
                        {"coords", rationals_to_json(c.coords)},
                        {"scales", rationals_to_json(c.scales)}};
            }
        },
        doc);
}

std::string cycle_kind(const CycleDocument& c) { return cycle_to_json(c).at("kind").get<std::string>(); }

json connection_to_json(const ConnectionOnW& c) {
    json coeffs = json::object();
    for (std::size_t i = 0; i < c.coeff.size(); ++i) coeffs[c.w->labels[i]] = {{"poly", poly_to_json(c.coeff[i])}};
    return {{"kind", "connection-on-w"}, {"frame", c.w->name}, {"coefficients", coeffs}, {"depends_on", c.var_of}};
}

json residual_to_json(const ResidualReport& r) {
    json ch = json::array();
    for (const auto& c : r.channels)
        ch.push_back({{"name", c.name}, {"group", c.group}, {"sup", c.sup}, {"l2", c.l2}});
    return {{"sup", r.sup()}, {"vanishes", r.vanishes()}, {"channels", ch}};
}

}  // namespace g2fm
