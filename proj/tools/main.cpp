// Command-line front end: scalar gauge sums, body operators over polytopes,
// law checks with JSON report certificates, and geometry export.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "orlicz/orlicz.hpp"

namespace {

using nlohmann::json;
using namespace orlicz;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
    f << text;
}

std::string format_scalar(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

Vector parse_csv_vector(const std::string& csv) {
    std::vector<double> vals;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        vals.push_back(orlicz::detail::parse_float(item, "vector component"));
    if (vals.empty()) throw std::invalid_argument("empty vector literal '" + csv + "'");
    Vector v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v(i) = vals[i];
    return v;
}

std::string default_grid_for(int dim) {
    if (dim == 2) return "grid:uniform-angle:360";
    if (dim == 3) return "grid:fibonacci:200";
    return "grid:seeded-gaussian:200:0";
}

void require_grid_size(const std::vector<Vector>& dirs) {
    if (dirs.size() < 8)
        throw std::invalid_argument("direction grid must contain at least 8 directions");
}

Polytope load_body_or_default(const std::string& path) {
    if (path.empty()) return standard_simplex(3, 3, 1.0);
    if (!std::filesystem::exists(path))
        throw std::runtime_error("body file '" + path + "' does not exist");
    return io::load_body(path);
}

int report_exit(const LawReport& r, const json& prov, const std::string& out) {
    write_output(io::law_report_json(r, prov).dump(2) + "\n", out);
    return r.pass ? 0 : 1;
}

struct CliState {
    // sum
    std::string phi_spec = "expm1";
    double a = 0.0, b = 0.0;
    // shared
    std::string op = "identity";
    std::string body_path;
    std::string grid_spec;
    std::string out_path;
    std::string normal_csv;
    std::string variance = "auto";
    std::string f_spec = "const:1";
    std::string format = "json";
    double tol = Tolerances::defaults().law_tol;
    double quad_rel = QuadratureConfig{}.rel_tol;
    int quad_refine = QuadratureConfig{}.max_refine;
    double min_gap = 1e-3;
    std::uint64_t seed = 0;
    int pairs = 50;
    int trials = 1000;
    int steps = 10;
};

std::function<double(double)> parse_scalar_map(const std::string& spec) {
    if (spec.rfind("const:", 0) == 0) {
        double v = orlicz::detail::parse_float(spec.substr(6), "const value");
        return [v](double) { return v; };
    }
    if (spec.rfind("affine:", 0) == 0) {
        auto rest = spec.substr(7);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("affine map needs 'affine:<c>:<d>'");
        double c = orlicz::detail::parse_float(rest.substr(0, colon), "affine offset");
        double d = orlicz::detail::parse_float(rest.substr(colon + 1), "affine slope");
        return [c, d](double x) { return c + d * x; };
    }
    throw std::invalid_argument("scalar map spec must be const:<v> or affine:<c>:<d>");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orlicz convex-geometry toolkit"};
    app.set_version_flag("--version", std::string(io::kToolVersion));
    app.require_subcommand(1);

    CliState st;
    std::string config_path;
    app.add_option("--config", config_path, "optional JSON config with default tolerances/seed");

    auto* sum = app.add_subcommand("sum", "scalar gauge sum a +_phi b");
    sum->add_option("--phi", st.phi_spec, "gauge spec (phi or phi2:...)")->required();
    sum->add_option("--a", st.a, "first operand")->required();
    sum->add_option("--b", st.b, "second operand")->required();
    sum->add_option("--out", st.out_path, "output path (default stdout)");

    auto* body = app.add_subcommand("body", "apply a body operator, emit a support table");
    body->add_option("--op", st.op, "operator id")->required();
    body->add_option("--phi", st.phi_spec, "gauge spec");
    body->add_option("--body", st.body_path, "body JSON path")->required();
    body->add_option("--grid", st.grid_spec, "direction grid spec");
    body->add_option("--quad-rel", st.quad_rel, "quadrature relative tolerance");
    body->add_option("--quad-max-refine", st.quad_refine, "max refinement levels");
    body->add_option("--out", st.out_path, "output path (default stdout)");

    auto* law = app.add_subcommand("law", "law checks emitting report certificates");
    law->alias("laws");
    law->require_subcommand(1);

    auto* val = law->add_subcommand("valuation", "hyperplane-dissection valuation identity");
    val->add_option("--op", st.op, "operator id")->required();
    val->add_option("--phi", st.phi_spec, "gauge spec")->required();
    val->add_option("--body", st.body_path, "body JSON path (default unit simplex in R^3)");
    val->add_option("--normal", st.normal_csv, "hyperplane normal, comma separated")->required();
    val->add_option("--grid", st.grid_spec, "direction grid spec");
    val->add_option("--tol", st.tol, "pass tolerance");
    val->add_option("--quad-rel", st.quad_rel, "quadrature relative tolerance");
    val->add_option("--out", st.out_path, "output path");

    auto* cex = law->add_subcommand("counterexample",
                                    "search the segment valuation identity for a violation");
    cex->add_option("--phi", st.phi_spec, "gauge spec")->required();
    cex->add_option("--a", st.a, "left coefficient")->required();
    cex->add_option("--b", st.b, "right coefficient")->required();
    cex->add_option("--min-gap", st.min_gap, "gap that counts as a violation");
    cex->add_option("--out", st.out_path, "output path");

    auto* cau = law->add_subcommand("cauchy", "residual of the gauge Cauchy equation");
    cau->add_option("--phi", st.phi_spec, "gauge spec")->required();
    cau->add_option("--a", st.a, "constant a")->required();
    cau->add_option("--f", st.f_spec, "scalar map: const:<v> | affine:<c>:<d>")->required();
    cau->add_option("--pairs", st.pairs, "number of seeded sample pairs");
    cau->add_option("--seed", st.seed, "sample seed");
    cau->add_option("--tol", st.tol, "pass tolerance")->default_val(1e-10);
    cau->add_option("--out", st.out_path, "output path");

    auto* eqv = law->add_subcommand("equivariance", "behavior under a seeded SL(n) map");
    eqv->add_option("--op", st.op, "operator id")->required();
    eqv->add_option("--phi", st.phi_spec, "gauge spec");
    eqv->add_option("--variance", st.variance, "co | contra | auto");
    eqv->add_option("--seed", st.seed, "map seed")->required();
    eqv->add_option("--body", st.body_path, "body JSON path (default unit simplex in R^3)");
    eqv->add_option("--grid", st.grid_spec, "direction grid spec");
    eqv->add_option("--tol", st.tol, "pass tolerance");
    eqv->add_option("--quad-rel", st.quad_rel, "quadrature relative tolerance");
    eqv->add_option("--out", st.out_path, "output path");

    auto* sp = law->add_subcommand("scalar-props", "cancellation/ordering spot checks");
    sp->add_option("--phi", st.phi_spec, "gauge spec")->required();
    sp->add_option("--seed", st.seed, "sample seed");
    sp->add_option("--trials", st.trials, "number of trials");
    sp->add_option("--out", st.out_path, "output path");

    auto* pp = law->add_subcommand("projection", "linear-hull projection property");
    pp->add_option("--op", st.op, "operator id")->required();
    pp->add_option("--phi", st.phi_spec, "gauge spec")->required();
    pp->add_option("--body", st.body_path, "body JSON path")->required();
    pp->add_option("--grid", st.grid_spec, "direction grid spec");
    pp->add_option("--tol", st.tol, "pass tolerance");
    pp->add_option("--out", st.out_path, "output path");

    auto* exp = app.add_subcommand("export", "export a body to svg / obj / json");
    exp->add_option("--body", st.body_path, "body JSON path")->required();
    exp->add_option("--format", st.format, "svg | obj | json")->required();
    exp->add_option("--out", st.out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream cf(config_path);
            if (!cf) throw std::runtime_error("cannot open config file '" + config_path + "'");
            json cfg = json::parse(cf);
            auto maybe = [&](const char* key, auto& slot, const CLI::Option* opt) {
                if (cfg.contains(key) && (!opt || opt->count() == 0))
                    slot = cfg.at(key).get<std::decay_t<decltype(slot)>>();
            };
            maybe("seed", st.seed, nullptr);
            maybe("grid", st.grid_spec, nullptr);
            if (cfg.contains("tolerances")) {
                const auto& t = cfg.at("tolerances");
                if (t.contains("law")) st.tol = t.at("law").get<double>();
                if (t.contains("quadrature")) st.quad_rel = t.at("quadrature").get<double>();
                if (t.contains("quadrature_max_refine"))
                    st.quad_refine = t.at("quadrature_max_refine").get<int>();
            }
        }
        if (!(st.tol > 0.0) || !(st.quad_rel > 0.0) || st.quad_refine < 1)
            throw std::invalid_argument("tolerances must be positive");
        QuadratureConfig q(st.quad_rel, st.quad_refine);
        const Tolerances& tols = Tolerances::defaults();

        if (sum->parsed()) {
            double v;
            if (st.phi_spec.rfind("phi2:", 0) == 0)
                v = orlicz_sum_phi2(OrliczFunction2::parse(st.phi_spec), st.a, st.b);
            else
                v = orlicz_sum_scalar(OrliczFunction::parse(st.phi_spec), st.a, st.b);
            write_output(format_scalar(v) + "\n", st.out_path);
            return 0;
        }

        if (body->parsed()) {
            auto p = load_body_or_default(st.body_path);
            auto phi = OrliczFunction::parse(st.phi_spec);
            if (st.grid_spec.empty()) st.grid_spec = default_grid_for(p.ambient_dim());
            auto grid = make_grid(p.ambient_dim(), st.grid_spec);
            require_grid_size(grid);
            auto z = apply_operator(st.op, phi, p, q, tols);
            json prov = io::make_provenance(st.phi_spec, st.seed, tols, q);
            prov["op"] = st.op;
            prov["grid"] = st.grid_spec;
            write_output(io::support_table_json(z, grid, std::move(prov)).dump(2) + "\n",
                         st.out_path);
            return 0;
        }

        if (exp->parsed()) {
            auto p = load_body_or_default(st.body_path);
            if (st.format == "json")
                write_output(io::body_to_json(p).dump(2) + "\n", st.out_path);
            else if (st.format == "svg")
                write_output(io::to_svg(p), st.out_path);
            else if (st.format == "obj")
                write_output(io::to_obj(p), st.out_path);
            else
                throw std::invalid_argument("unknown export format '" + st.format + "'");
            return 0;
        }

        // law subcommands
        json prov = io::make_provenance(st.phi_spec, st.seed, tols, q);

        if (val->parsed()) {
            auto p = load_body_or_default(st.body_path);
            auto phi = OrliczFunction::parse(st.phi_spec);
            Vector u = parse_csv_vector(st.normal_csv);
            if (st.grid_spec.empty()) st.grid_spec = default_grid_for(p.ambient_dim());
            auto grid = law_grid(p.ambient_dim(), st.grid_spec);
            require_grid_size(grid);
            prov["op"] = st.op;
            prov["grid"] = st.grid_spec;
            auto r = check_valuation(st.op, phi, p, u, grid, st.tol, q, tols);
            return report_exit(r, prov, st.out_path);
        }

        if (cex->parsed()) {
            auto phi = OrliczFunction::parse(st.phi_spec);
            auto res = search_counterexample(phi, st.a, st.b);
            LawReport r;
            r.law = "segment-counterexample[" + st.phi_spec + "]";
            r.max_gap = res.gap;
            r.witness_inputs = {res.witness[0], res.witness[1], res.witness[2]};
            r.tolerance = st.min_gap;
            r.pass = res.gap > st.min_gap;  // a found violation is the expected outcome
            r.samples = static_cast<int>(default_counterexample_grid().size());
            r.samples = r.samples * r.samples * r.samples;
            prov["a"] = st.a;
            prov["b"] = st.b;
            write_output(io::law_report_json(r, prov).dump(2) + "\n", st.out_path);
            return r.pass ? 0 : 1;
        }

        if (cau->parsed()) {
            auto phi = OrliczFunction::parse(st.phi_spec);
            auto f = parse_scalar_map(st.f_spec);
            SplitMix64 rng(st.seed);
            std::vector<std::pair<double, double>> pairs;
            for (int i = 0; i < st.pairs; ++i)
                pairs.emplace_back(rng.uniform(1e-3, 4.0), rng.uniform(1e-3, 4.0));
            double resid = cauchy_residual(phi, st.a, f, pairs, tols);
            LawReport r;
            r.law = "cauchy[" + st.phi_spec + "," + st.f_spec + "]";
            r.max_gap = resid;
            r.tolerance = st.tol;
            r.pass = resid <= st.tol;
            r.samples = st.pairs;
            prov["a"] = st.a;
            prov["f"] = st.f_spec;
            return report_exit(r, prov, st.out_path);
        }

        if (eqv->parsed()) {
            auto p = load_body_or_default(st.body_path);
            auto phi = OrliczFunction::parse(st.phi_spec);
            if (st.grid_spec.empty()) st.grid_spec = default_grid_for(p.ambient_dim());
            auto grid = law_grid(p.ambient_dim(), st.grid_spec);
            require_grid_size(grid);
            Variance var = st.variance == "co"       ? Variance::Covariant
                           : st.variance == "contra" ? Variance::Contravariant
                                                     : operator_variance(st.op);
            auto m = random_sl(p.ambient_dim(), st.seed);
            prov["op"] = st.op;
            prov["grid"] = st.grid_spec;
            prov["variance"] = var == Variance::Covariant ? "co" : "contra";
            auto r = check_equivariance(st.op, phi, p, m, var, grid, st.tol, q, tols);
            return report_exit(r, prov, st.out_path);
        }

        if (sp->parsed()) {
            auto phi = OrliczFunction::parse(st.phi_spec);
            auto r = check_scalar_props(phi, st.seed, st.trials, tols);
            return report_exit(r, prov, st.out_path);
        }

        if (pp->parsed()) {
            auto p = load_body_or_default(st.body_path);
            auto phi = OrliczFunction::parse(st.phi_spec);
            if (st.grid_spec.empty()) st.grid_spec = default_grid_for(p.ambient_dim());
            auto grid = law_grid(p.ambient_dim(), st.grid_spec);
            require_grid_size(grid);
            prov["op"] = st.op;
            prov["grid"] = st.grid_spec;
            auto r = check_projection_property(st.op, phi, p, grid, st.tol, q, tols);
            return report_exit(r, prov, st.out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
