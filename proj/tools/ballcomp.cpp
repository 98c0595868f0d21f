// Batch front end: ingest map-spec files, run the compactness analyses,
// emit machine-readable JSON reports and CSV curve traces.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballcomp/decide.hpp"
#include "ballcomp/galerkin.hpp"
#include "ballcomp/io.hpp"

using nlohmann::json;
using namespace ballcomp;

namespace {

constexpr const char* kSchemaVersion = "ballcomp-report/1";

json to_json(Complex v) { return json::array({v.real(), v.imag()}); }

json to_json(const CVector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
    return arr;
}

json to_json(const SpaceSpec& space) {
    return {{"dim", space.n},
            {"weight_s", space.s},
            {"kernel_exponent", space.beta_exp()},
            {"name", space.is_hardy() ? "hardy" : "bergman"}};
}

json to_json(const TForm& f) {
    json beta = json::array(), gamma = json::array(), alpha = json::array();
    for (Eigen::Index i = 0; i < f.beta.size(); ++i) {
        beta.push_back(to_json(f.beta(i)));
        gamma.push_back(to_json(f.gamma(i)));
    }
    for (Eigen::Index i = 0; i < f.alpha.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < f.alpha.cols(); ++j)
            row.push_back(to_json(f.alpha(i, j)));
        alpha.push_back(row);
    }
    return {{"t", f.t}, {"K", to_json(f.K)}, {"beta", beta},
            {"gamma", gamma}, {"alpha", alpha}};
}

json to_json(const TFormDelta& d) {
    return {{"t", d.t},         {"K", d.K},         {"beta", d.beta},
            {"gamma", d.gamma}, {"alpha", d.alpha}, {"differing", d.differing}};
}

json to_json(const BoundReport& b) {
    json j = {{"bound", b.bound}, {"space", to_json(b.space)}};
    if (b.witness) {
        j["witness"] = to_json(*b.witness);
        j["d_at_witness"] = b.d_at_witness;
    }
    return j;
}

json to_json(const Decision& d) {
    json j = {{"verdict", verdict_name(d.verdict)},
              {"sup_norm_phi", d.sup_phi},
              {"sup_norm_psi", d.sup_psi}};
    if (d.bound) j["essential_norm_bound"] = to_json(*d.bound);
    if (d.tform_delta) j["tform_delta"] = to_json(*d.tform_delta);
    return j;
}

struct Options {
    std::string space_arg = "hardy";
    int dim = 0;  // 0 = take the dimension from the map file
    std::string out_path;
    std::string galerkin_arg;
    std::string curve_arg;
    std::string dump_matrix_path;
    Tolerances tol;
};

SpaceSpec make_space(const Options& opt, int map_dim) {
    const int n = opt.dim > 0 ? opt.dim : map_dim;
    if (n != map_dim)
        fail(ErrorKind::InvalidParams,
             "--dim disagrees with the map file dimension");
    if (opt.space_arg == "hardy") return SpaceSpec::hardy(n);
    if (opt.space_arg.rfind("bergman:", 0) == 0) {
        const double s = std::stod(opt.space_arg.substr(8));
        if (!(s > -1.0))
            fail(ErrorKind::InvalidParams, "bergman weight must satisfy s > -1");
        return SpaceSpec::bergman(n, s);
    }
    fail(ErrorKind::InvalidParams,
         "--space must be 'hardy' or 'bergman:<s>', got " + opt.space_arg);
}

std::pair<int, int> parse_galerkin(const std::string& arg) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos)
        fail(ErrorKind::InvalidParams, "--galerkin expects D:k");
    const int D = std::stoi(arg.substr(0, colon));
    const int k = std::stoi(arg.substr(colon + 1));
    if (D < 0 || k < 0 || k > D)
        fail(ErrorKind::InvalidParams, "--galerkin needs D >= k >= 0");
    return {D, k};
}

CurveSpec parse_curve(const std::string& arg, int dim) {
    CurveSpec spec;
    spec.dim = dim;
    if (arg == "gamma") {
        spec.family = CurveFamily::Gamma;
        return spec;
    }
    const auto colon = arg.find(':');
    const std::string name = arg.substr(0, colon);
    const std::string params = colon == std::string::npos ? "" : arg.substr(colon + 1);
    if (name == "gammaM") {
        spec.family = CurveFamily::GammaM;
        spec.M = std::stod(params);
        if (!(spec.M > 0.5))
            fail(ErrorKind::InvalidParams, "gammaM requires M > 1/2");
        return spec;
    }
    const auto comma = params.find(',');
    if ((name == "gammak" || name == "gammakr") && comma != std::string::npos) {
        spec.k = std::stoi(params.substr(0, comma));
        spec.r = std::stod(params.substr(comma + 1));
        if (name == "gammak") {
            spec.family = CurveFamily::GammaK;
            if (!(spec.r > 0.0 && spec.r < 1.0))
                fail(ErrorKind::InvalidParams, "gammak requires 0 < r < 1");
        } else {
            spec.family = CurveFamily::GammaKR;
            if (!(spec.r > 0.0 && spec.r < 0.5))
                fail(ErrorKind::InvalidParams, "gammakr requires 0 < r < 1/2");
        }
        return spec;
    }
    fail(ErrorKind::InvalidParams, "unknown --curve spec: " + arg);
}

void emit(const Options& opt, const std::string& content) {
    if (opt.out_path.empty()) {
        std::cout << content;
        return;
    }
    write_file_atomic(opt.out_path, content);
}

json contact_report(const LinearFractionalMap& map, const Tolerances& tol) {
    json contacts = json::array();
    try {
        const ContactSet set = contact_points(map, tol.selfmap_band);
        for (const auto& zeta : set.points) {
            const JCData jc = angular_derivative(map, zeta);
            json entry = {{"zeta", to_json(zeta)}, {"eta", to_json(jc.eta)},
                          {"continuum", set.continuum}};
            if (jc.finite())
                entry["d"] = jc.d_val;
            else
                entry["d"] = "infinity";
            contacts.push_back(entry);
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoContact) throw;
    }
    return contacts;
}

int cmd_analyze(const Options& opt, const std::string& path) {
    const LinearFractionalMap map = load_map_spec(path);
    const SpaceSpec space = make_space(opt, map.dim());
    json report = {{"schema_version", kSchemaVersion},
                   {"command", "analyze"},
                   {"input", path},
                   {"space", to_json(space)}};
    report["sup_norm"] = sup_norm(map);
    report["compact"] = is_compact_single(map, opt.tol);
    report["contacts"] = contact_report(map, opt.tol);
    report["adjoint_map"] = json::parse(serialize_map_spec(adjoint_map(map)));

    // T-form at a boundary fixed point, when one exists among the contacts.
    for (const auto& entry : report["contacts"]) {
        CVector zeta(map.dim());
        for (int i = 0; i < map.dim(); ++i)
            zeta(i) = Complex(entry["zeta"][i][0], entry["zeta"][i][1]);
        if ((map(zeta) - zeta).norm() <= opt.tol.data_image) {
            const auto conj_map = unitary_conjugate(map, zeta, zeta);
            report["tform"] = to_json(normalize_t_form(conj_map, opt.tol));
            report["tform_fixed_point"] = to_json(zeta);
            break;
        }
    }
    emit(opt, report.dump(2) + "\n");
    return 0;
}

int cmd_decide_diff(const Options& opt, const std::string& path_a,
                    const std::string& path_b) {
    const LinearFractionalMap phi = load_map_spec(path_a);
    const LinearFractionalMap psi = load_map_spec(path_b);
    if (phi.dim() != psi.dim())
        fail(ErrorKind::InvalidParams, "map files have different dimensions");
    const SpaceSpec space = make_space(opt, phi.dim());

    json report = {{"schema_version", kSchemaVersion},
                   {"command", "decide-diff"},
                   {"inputs", {path_a, path_b}},
                   {"space", to_json(space)}};
    const Decision decision = decide_difference(phi, psi, space, opt.tol);
    report["decision"] = to_json(decision);

    const NecessaryAudit audit = audit_necessary_conditions(phi, psi, space, opt.tol);
    json rows = json::array();
    for (const auto& row : audit.rows) {
        rows.push_back({{"zeta", to_json(row.zeta)},
                        {"phi_image", to_json(row.phi_image)},
                        {"psi_image", to_json(row.psi_image)},
                        {"d_phi", std::isfinite(row.d_phi) ? json(row.d_phi) : json("infinity")},
                        {"d_psi", std::isfinite(row.d_psi) ? json(row.d_psi) : json("infinity")},
                        {"same_data", row.same_data}});
    }
    report["necessary_conditions"] = rows;
    if (audit.tform) {
        report["tform_audit"] = to_json(*audit.tform);
        report["tform_audit_point"] = to_json(*audit.common_point);
    }

    if (!opt.galerkin_arg.empty()) {
        const auto [D, k] = parse_galerkin(opt.galerkin_arg);
        const TruncationBasis basis = monomial_norms(space, D);
        const TruncationMatrix ta = truncation_matrix(phi, basis, D);
        const TruncationMatrix tb = truncation_matrix(psi, basis, D);
        json probes = json::array();
        for (int cut = 0; cut <= k; ++cut)
            probes.push_back({{"k", cut}, {"value", tail_norm_probe(ta, tb, cut)}});
        report["galerkin"] = {{"degree_cap", D}, {"tail_norm_probe", probes}};
        if (!opt.dump_matrix_path.empty()) {
            std::ostringstream os;
            write_matrix_text(os, ta.entries - tb.entries);
            write_file_atomic(opt.dump_matrix_path, os.str());
            report["galerkin"]["difference_matrix"] = opt.dump_matrix_path;
        }
    }
    emit(opt, report.dump(2) + "\n");
    return 0;
}

int cmd_trace(const Options& opt, const std::string& path_a,
              const std::string& path_b) {
    const LinearFractionalMap phi = load_map_spec(path_a);
    const LinearFractionalMap psi = load_map_spec(path_b);
    if (phi.dim() != psi.dim())
        fail(ErrorKind::InvalidParams, "map files have different dimensions");
    const SpaceSpec space = make_space(opt, phi.dim());
    if (opt.curve_arg.empty())
        fail(ErrorKind::InvalidParams, "trace requires --curve");
    const CurveSpec curve = parse_curve(opt.curve_arg, phi.dim());

    double t0 = 0.0;
    switch (curve.family) {
        case CurveFamily::GammaM: t0 = 1e-2; break;
        case CurveFamily::Gamma: t0 = 0.5; break;
        case CurveFamily::GammaK: t0 = std::sqrt(1.0 - curve.r); break;
        case CurveFamily::GammaKR: t0 = 0.5; break;
    }

    std::string csv = "param";
    for (int j = 1; j <= phi.dim(); ++j)
        csv += ",re_z" + std::to_string(j) + ",im_z" + std::to_string(j);
    csv += ",quotient,rho,mixed_re,mixed_im\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof(buf), "%.17g%c", v, sep);
        csv += buf;
    };
    double t = t0;
    for (int step = 0; step < 16; ++step, t *= 0.5) {
        const CurvePoint p = curve_point(curve, t);
        put(p.param, ',');
        for (int j = 0; j < phi.dim(); ++j) {
            put(p.z(j).real(), ',');
            put(p.z(j).imag(), ',');
        }
        put(kernel_quotient(phi, psi, p.z, space), ',');
        put(pseudo_distance(phi(p.z), psi(p.z)), ',');
        const CVector pw = phi(p.z), qw = psi(p.z);
        const Complex mixed =
            p.one_minus_abs2 / (1.0 - (pw.adjoint() * qw).value());
        put(mixed.real(), ',');
        put(mixed.imag(), '\n');
    }
    emit(opt, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Composition-operator analysis on the unit ball"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--space", opt.space_arg, "hardy | bergman:<s>");
    app.add_option("--dim", opt.dim, "expected dimension (checked against map files)");
    app.add_option("--out", opt.out_path, "output path (default: stdout)");
    app.add_option("--tol-alg", opt.tol.algebraic, "projective equality tolerance");
    app.add_option("--tol-limit", opt.tol.limit, "curve-limit acceptance tolerance");
    app.add_option("--tol-data", opt.tol.data_image, "shared-data tolerance");

    std::string file_a, file_b;
    CLI::App* analyze = app.add_subcommand("analyze", "single-symbol report");
    analyze->fallthrough();
    analyze->add_option("map", file_a, "map-spec file")->required();

    CLI::App* decide = app.add_subcommand("decide-diff", "compact-difference decision");
    decide->fallthrough();
    decide->add_option("map_a", file_a, "first map-spec file")->required();
    decide->add_option("map_b", file_b, "second map-spec file")->required();
    decide->add_option("--galerkin", opt.galerkin_arg, "D:k truncation corroboration");
    decide->add_option("--dump-matrix", opt.dump_matrix_path,
                       "write the truncated difference matrix (text grid)");

    CLI::App* trace = app.add_subcommand("trace", "CSV of kernel data along a curve");
    trace->fallthrough();
    trace->add_option("map_a", file_a, "first map-spec file")->required();
    trace->add_option("map_b", file_b, "second map-spec file")->required();
    trace->add_option("--curve", opt.curve_arg,
                      "gammaM:M | gamma | gammak:k,r | gammakr:k,r");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        opt.tol.data_dilation = opt.tol.data_image;
        if (analyze->parsed()) return cmd_analyze(opt, file_a);
        if (decide->parsed()) return cmd_decide_diff(opt, file_a, file_b);
        if (trace->parsed()) return cmd_trace(opt, file_a, file_b);
    } catch (const Error& e) {
        std::cerr << "error [" << error_kind_name(e.kind()) << "]: " << e.what()
                  << "\n";
        switch (e.kind()) {
            case ErrorKind::Indeterminate:
            case ErrorKind::NonConvergent:
            case ErrorKind::QuadratureUnderResolved:
                return 3;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
