#include "g2fm/json_io.hpp"
#include "g2fm/spin7.hpp"
#include "g2fm/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace g2fm;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": malformed JSON: " + e.what());
    }
}

void write_json(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump(2) << "\n";
}

double max_abs(const Form& f) { return f.is_zero() ? 0.0 : max_abs_coeff(f); }

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::vector<std::string> suites;
    std::optional<double> tol_abs, tol_rel;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::string report, config;
};

int run_verify(const VerifyArgs& a) {
    SuiteConfig c = default_config();
    std::string config_path = a.config;
    if (config_path.empty())
        if (const char* env = std::getenv("G2FM_CONFIG")) config_path = env;
    try {
        if (!config_path.empty()) c = config_from_json(read_json(config_path));
        if (!a.suites.empty()) {
            c.suites.clear();
            for (const auto& s : a.suites) {
                std::stringstream ss(s);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty() && item != "none") c.suites.push_back(item);
            }
        }
        if (a.tol_abs) c.tol_abs = *a.tol_abs;
        if (a.tol_rel) c.tol_rel = *a.tol_rel;
        if (a.seed) c.seed = *a.seed;
        if (a.grid) c.grid = *a.grid;
        if (!a.report.empty()) c.report_path = a.report;
        c.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    VerificationReport r = run_suites(c);
    std::cout << report_to_text(r);
    if (!c.report_path.empty()) write_json(report_to_json(r), c.report_path);
    return r.pass() ? kPass : kFail;
}

// ---------------------------------------------------------------- transform

json transform_document(const CycleDocument& doc, Fibration fib) {
    const std::string kind = cycle_kind(doc);
    auto need = [&](Fibration f) {
        if (fib != f) throw UsageError(kind + " input requires --fibration " + to_string(f));
    };
    json out{{"fibration", to_string(fib)}, {"input_kind", kind}};
    if (auto* c = std::get_if<SemiFlatCoassocCycle>(&doc)) {
        need(Fibration::CoassociativeT4);
        auto w = transform_semiflat_cycle(*c);
        out["input_residual"] = residual_to_json(coassoc_semiflat_residual(*c));
        out["output"] = cycle_to_json(w);
        out["output_residual"] = residual_to_json(coassoc_semiflat_residual(w));
    } else if (auto* c = std::get_if<SemiFlatAssocCycle>(&doc)) {
        need(Fibration::CoassociativeT4);
        auto w = transform_semiflat_cycle(*c);
        out["input_residual"] = residual_to_json(assoc_semiflat_residual(*c));
        out["output"] = cycle_to_json(w);
        out["output_residual"] = residual_to_json(assoc_semiflat_residual(w));
    } else if (auto* d = std::get_if<SectionDocument>(&doc)) {
        bool ass = d->section.kind == SectionKind::Associative;
        need(ass ? Fibration::CoassociativeT4 : Fibration::AssociativeT3);
        ConnectionOnW conn = transform_section(d->section);
        json before = json::array(), after = json::array();
        for (const auto& p : d->points) {
            Jet j = section_jet(d->section, p);
            Quaternion r = ass ? assoc_section_residual(j) : coassoc_section_residual(j);
            before.push_back({{"point", cycle_to_json(*d).at("points").at(&p - d->points.data())},
                              {"residual", {to_string(r[0]), to_string(r[1]), to_string(r[2]), to_string(r[3])}}});
            Form f = conn.curvature(p);
            Form dd = deformed_dt_residual(f, g2_theta(conn.w));
            after.push_back({{"point", before.back()["point"]},
                             {"curvature", form_to_json(f)},
                             {"deformed_dt_sup", max_abs(dd)},
                             {"deformed_dt", dd.is_zero()}});
        }
        out["input_residual"] = before;
        out["output"] = connection_to_json(conn);
        out["output_residual"] = after;
    } else {
        const auto& o = std::get<FlatTorusObject>(doc);
        out["output"] = cycle_to_json(transform_flat_torus(o));
    }
    return out;
}

// ---------------------------------------------------------------- residual

int run_residual(const std::string& kind, const CycleDocument& doc, double tol) {
    if (cycle_kind(doc) != kind) throw UsageError("--kind " + kind + " does not match input kind " + cycle_kind(doc));
    json out{{"kind", kind}};
    bool vanishes = false;
    if (auto* c = std::get_if<SemiFlatCoassocCycle>(&doc)) {
        auto r = coassoc_semiflat_residual(*c);
        out["report"] = residual_to_json(r);
        vanishes = r.vanishes(tol);
    } else if (auto* c = std::get_if<SemiFlatAssocCycle>(&doc)) {
        auto r = assoc_semiflat_residual(*c);
        out["report"] = residual_to_json(r);
        vanishes = r.vanishes(tol);
    } else if (auto* d = std::get_if<SectionDocument>(&doc)) {
        json pts = json::array();
        double sup = 0;
        for (const auto& p : d->points) {
            Jet j = section_jet(d->section, p);
            Quaternion r = d->section.kind == SectionKind::Associative ? assoc_section_residual(j) : coassoc_section_residual(j);
            double n = std::sqrt(r.norm2().get_d());
            sup = std::max(sup, n);
            pts.push_back({{"residual", {to_string(r[0]), to_string(r[1]), to_string(r[2]), to_string(r[3])}}, {"norm", n}});
        }
        out["points"] = pts;
        out["sup"] = sup;
        vanishes = sup <= tol;
    } else {
        throw UsageError("residual is not defined for " + cycle_kind(doc));
    }
    out["vanishes"] = vanishes;
    write_json(out, "-");
    return vanishes ? kPass : kFail;
}

// ---------------------------------------------------------------- decompose

int run_decompose(const std::string& space, int degree, const Form& f) {
    int dim = space == "g2" ? 7 : 8;
    if (f.frame()->dim != dim) throw UsageError("form lives on a " + std::to_string(f.frame()->dim) + "-dimensional frame");
    if (f.degree() != degree) throw UsageError("--degree " + std::to_string(degree) + " but the form has degree " + std::to_string(f.degree()));
    std::vector<LabeledComponent> parts;
    try {
        parts = space == "g2" ? g2_decompose(f) : decompose_s7(f);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    json comps = json::array();
    Form sum(f.frame(), f.degree());
    for (const auto& c : parts) {
        comps.push_back({{"label", c.label}, {"norm2", to_string(inner(c.form, c.form))}, {"form", form_to_json(c.form)}});
        sum += c.form;
    }
    write_json({{"space", space}, {"degree", degree}, {"components", comps}, {"sums_to_input", sum == f}}, "-");
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flat G2 and Spin(7) identities, cycle residuals and fibrewise Fourier transforms"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run identity suites");
    verify->add_option("--suite", va.suites, "suites to run (repeat or comma-separate; \"none\" for an empty list)");
    verify->add_option("--tol-abs", va.tol_abs, "absolute tolerance");
    verify->add_option("--tol-rel", va.tol_rel, "relative tolerance");
    verify->add_option("--seed", va.seed, "seed for randomized checks");
    verify->add_option("--grid", va.grid, "grid resolution for quadrature checks");
    verify->add_option("--report", va.report, "write the JSON report here (\"-\" for stdout)");
    verify->add_option("--config", va.config, "JSON config file (default: $G2FM_CONFIG)");

    std::string fibration, input, output;
    auto* transform = app.add_subcommand("transform", "Fourier transform of a cycle, section or flat-torus object");
    transform->add_option("--fibration", fibration)->required()->check(CLI::IsMember({"coassociative-t4", "associative-t3"}));
    transform->add_option("--input", input)->required();
    transform->add_option("--output", output, "output path (default stdout)");

    std::string kind;
    double tol = 1e-9;
    auto* residual = app.add_subcommand("residual", "residual of a cycle or section");
    residual->add_option("--kind", kind)
        ->required()
        ->check(CLI::IsMember({"assoc-section", "coassoc-section", "coassoc-semiflat", "assoc-semiflat"}));
    residual->add_option("--input", input)->required();
    residual->add_option("--tol", tol, "vanishing tolerance for sampled data");

    std::string space;
    int degree = 0;
    auto* decompose = app.add_subcommand("decompose", "split a constant form into irreducible pieces");
    decompose->add_option("--space", space)->required()->check(CLI::IsMember({"g2", "spin7"}));
    decompose->add_option("--degree", degree)->required();
    decompose->add_option("--input", input)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*verify) return run_verify(va);
        if (*transform) {
            auto doc = cycle_from_json(read_json(input));
            write_json(transform_document(doc, parse_fibration(fibration)), output);
            return kPass;
        }
        if (*residual) return run_residual(kind, cycle_from_json(read_json(input)), tol);
        if (*decompose) return run_decompose(space, degree, form_from_json(read_json(input)));
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SchemaError& e) {
        std::cerr << "error: schema: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
