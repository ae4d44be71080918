#include "kinklab/config.hpp"

#include "kinklab/darboux.hpp"
#include "kinklab/errors.hpp"
#include "kinklab/kink.hpp"
#include "kinklab/operator.hpp"
#include "kinklab/phi8.hpp"
#include "kinklab/profile.hpp"
#include "kinklab/resonance.hpp"
#include "kinklab/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace kinklab {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "model.family",    "model.epsilon",   "model.coeffs",   "grid.L",
        "grid.n",          "out.dir",         "eps.list",       "fgr.order",
        "fgr.threshold",   "darboux.gamma",   "darboux.tol",    "darboux.activity",
        "resonances.lambdas", "resonances.omega", "scattering.k_count", "svg.enable",
        "tol",
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

RunConfig::RunConfig() = default;

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("config: cannot open " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_input("config: line " + std::to_string(lineno) + " is not `key = value`");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (known_keys().find(key) == known_keys().end())
        throw invalid_input("config: unknown key '" + key + "'");
    values_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw invalid_input("config: key '" + key + "' is not a number");
    }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, fallback);
    if (v != std::floor(v)) throw invalid_input("config: key '" + key + "' is not an integer");
    return static_cast<int>(v);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw invalid_input("config: key '" + key + "' is not a boolean");
}

std::vector<double> RunConfig::get_list(const std::string& key, const std::vector<double>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw invalid_input("config: key '" + key + "' has a non-numeric entry");
        }
    }
    if (out.empty()) throw invalid_input("config: key '" + key + "' is an empty list");
    return out;
}

Grid RunConfig::make_grid() const {
    return Grid(get_double("grid.L", 30.0), get_int("grid.n", 6001), Sector::full_line);
}

PotentialModel RunConfig::make_model() const {
    const std::string family = get("model.family", "phi4");
    if (family == "phi4") return make_phi_family(0.0);
    if (family == "phi48") return make_phi_family(get_double("model.epsilon", 0.0));
    if (family == "poly") {
        if (!has("model.coeffs")) throw invalid_input("config: model.family = poly needs model.coeffs");
        return PotentialModel::from_even_coeffs(get_list("model.coeffs", {}));
    }
    throw invalid_input("config: unknown model.family '" + family + "'");
}

std::vector<std::string> RunConfig::echo() const {
    std::vector<std::string> lines;
    for (const auto& kv : values_) lines.push_back(kv.first + " = " + kv.second);
    return lines;
}

std::string csv_format(const CsvTable& table) {
    std::string out;
    for (const auto& c : table.header_comments) out += "# " + c + "\n";
    for (size_t i = 0; i < table.columns.size(); ++i)
        out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + fmt17(row[i]);
        out += "\n";
    }
    return out;
}

void csv_write(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw numerical_error("csv_write: cannot open " + path);
    out << csv_format(table);
    if (!out) throw numerical_error("csv_write: write failed for " + path);
}

CsvTable csv_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("csv_read: cannot open " + path);
    CsvTable t;
    std::string line;
    bool have_columns = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.header_comments.push_back(trim(line.substr(1)));
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        if (!have_columns) {
            while (std::getline(ss, tok, ',')) t.columns.push_back(tok);
            have_columns = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string svg_format(const std::vector<SvgCurve>& curves, const std::string& title) {
    if (curves.empty()) throw invalid_input("svg_format: no curves");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& c : curves) {
        if (c.x.size() != c.y.size() || c.x.empty()) throw invalid_input("svg_format: malformed curve");
        for (double v : c.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : c.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
    if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }
    const double W = 900, H = 600, ml = 70, mr = 160, mt = 40, mb = 50;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"600\" viewBox=\"0 0 900 600\">\n";
    s += "<rect width=\"900\" height=\"600\" fill=\"white\"/>\n";
    s += "<text x=\"450\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + title + "</text>\n";
    // axes
    s += "<line x1=\"" + fmt6(ml) + "\" y1=\"" + fmt6(H - mb) + "\" x2=\"" + fmt6(W - mr) +
         "\" y2=\"" + fmt6(H - mb) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + fmt6(ml) + "\" y1=\"" + fmt6(mt) + "\" x2=\"" + fmt6(ml) + "\" y2=\"" +
         fmt6(H - mb) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt6(ml) + "\" y=\"" + fmt6(H - mb + 20) + "\" font-size=\"12\">" + fmt6(xmin) + "</text>\n";
    s += "<text x=\"" + fmt6(W - mr) + "\" y=\"" + fmt6(H - mb + 20) +
         "\" text-anchor=\"end\" font-size=\"12\">" + fmt6(xmax) + "</text>\n";
    s += "<text x=\"" + fmt6(ml - 6) + "\" y=\"" + fmt6(H - mb) +
         "\" text-anchor=\"end\" font-size=\"12\">" + fmt6(ymin) + "</text>\n";
    s += "<text x=\"" + fmt6(ml - 6) + "\" y=\"" + fmt6(mt + 10) +
         "\" text-anchor=\"end\" font-size=\"12\">" + fmt6(ymax) + "</text>\n";

    for (size_t c = 0; c < curves.size(); ++c) {
        const char* color = palette[c % 10];
        s += "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < curves[c].x.size(); ++i) {
            if (i) s += " ";
            s += fmt6(X(curves[c].x[i])) + "," + fmt6(Y(curves[c].y[i]));
        }
        s += "\"/>\n";
        const double ly = mt + 18.0 * static_cast<double>(c);
        s += "<line x1=\"" + fmt6(W - mr + 10) + "\" y1=\"" + fmt6(ly) + "\" x2=\"" +
             fmt6(W - mr + 40) + "\" y2=\"" + fmt6(ly) + "\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + fmt6(W - mr + 46) + "\" y=\"" + fmt6(ly + 4) + "\" font-size=\"12\">" +
             curves[c].label + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

void svg_write(const std::string& path, const std::vector<SvgCurve>& curves, const std::string& title) {
    const std::string body = svg_format(curves, title);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw numerical_error("svg_write: cannot open " + path);
    out << body;
    if (!out) throw numerical_error("svg_write: write failed for " + path);
}

namespace cli {

namespace {

std::vector<std::string> base_header(const RunConfig& cfg, const std::string& command) {
    std::vector<std::string> h;
    h.push_back(kToolVersion);
    h.push_back("command: " + command);
    for (const auto& line : cfg.echo()) h.push_back("config: " + line);
    return h;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::string dir = cfg.get("out.dir", ".");
    if (!dir.empty() && dir.back() != '/') dir += '/';
    return dir + name;
}

struct Pipeline {
    PotentialModel model;
    Grid grid;
    KinkData kink;
    GridFunction V1;
    SpectralData odd_spec;
    SpectralData full_spec;
};

Pipeline run_base(const RunConfig& cfg) {
    Pipeline p{cfg.make_model(), cfg.make_grid(), {}, {}, {}, {}};
    const ValidationReport rep = validate(p.model);
    if (!rep.all_pass) throw invalid_input("model fails structural validation");
    p.kink = compute_kink(p.model, p.grid);
    p.V1 = GridFunction(p.grid);
    for (int i = 0; i < p.grid.n; ++i) p.V1[i] = p.model.derivative(2, p.kink.H[i]);
    p.odd_spec = eigen_decompose(SchrodingerOperator(p.V1, p.model.omega2(), Sector::odd));
    p.full_spec = eigen_decompose(SchrodingerOperator(p.V1, p.model.omega2(), Sector::full_line));
    return p;
}

std::vector<double> internal_lambdas(const SpectralData& odd) {
    std::vector<double> ls;
    for (const auto& m : odd.modes)
        if (m.lambda_sq > 1e-6) ls.push_back(std::sqrt(m.lambda_sq));
    return ls;
}

int cmd_kink(const RunConfig& cfg, std::ostream& out) {
    const Pipeline p = run_base(cfg);
    CsvTable t;
    t.header_comments = base_header(cfg, "kink");
    t.columns = {"x", "H", "Hprime"};
    for (int i = 0; i < p.grid.n; ++i)
        t.rows.push_back({p.grid.x(i), p.kink.H[i], p.kink.Hprime[i]});
    const std::string path = out_path(cfg, "kink.csv");
    csv_write(path, t);
    out << "wrote " << path << "\n";
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const Pipeline p = run_base(cfg);
    CsvTable t;
    t.header_comments = base_header(cfg, "spectrum");
    t.columns = {"index", "lambda_sq", "lambda"};
    int idx = 0;
    for (const auto& m : p.odd_spec.modes) {
        const double lam = m.lambda_sq > 0.0 ? std::sqrt(m.lambda_sq) : 0.0;
        t.rows.push_back({static_cast<double>(idx), m.lambda_sq, lam});
        CsvTable mode;
        mode.header_comments = base_header(cfg, "spectrum mode " + std::to_string(idx));
        mode.columns = {"x", "phi"};
        for (int i = 0; i < p.grid.n; ++i) mode.rows.push_back({p.grid.x(i), m.phi[i]});
        csv_write(out_path(cfg, "mode_odd_" + std::to_string(idx) + ".csv"), mode);
        ++idx;
    }
    csv_write(out_path(cfg, "spectrum.csv"), t);
    out << "odd-sector eigenvalues below omega^2:";
    for (const auto& m : p.odd_spec.modes) out << " " << m.lambda_sq;
    out << "\nfull-line eigenvalues below omega^2:";
    for (const auto& m : p.full_spec.modes) out << " " << m.lambda_sq;
    out << "\n";
    return 0;
}

int repulsivity_common(const RunConfig& cfg, std::ostream& out, bool emit_files) {
    const Pipeline p = run_base(cfg);
    const DarbouxCascade cas = run_cascade(p.model, p.kink, p.grid);
    if (emit_files) {
        for (size_t s = 0; s < cas.stages.size(); ++s) {
            CsvTable t;
            t.header_comments = base_header(cfg, "darboux stage " + std::to_string(s + 1));
            t.columns = {"x", "V", "psi"};
            for (int i = 0; i < p.grid.n; ++i)
                t.rows.push_back({p.grid.x(i), cas.stages[s].V[i], cas.stages[s].psi[i]});
            csv_write(out_path(cfg, "darboux_stage_" + std::to_string(s + 1) + ".csv"), t);
        }
        CsvTable t;
        t.header_comments = base_header(cfg, "darboux V_D");
        t.columns = {"x", "V_D"};
        for (int i = 0; i < p.grid.n; ++i) t.rows.push_back({p.grid.x(i), cas.V_D[i]});
        csv_write(out_path(cfg, "darboux_VD.csv"), t);
    }
    const double tol = cfg.get_double("darboux.tol", cfg.get_double("tol", -1.0));
    const double activity = cfg.get_double("darboux.activity", 1e-3);
    const double gamma = cfg.get_double("darboux.gamma", -1.0);
    const RepulsivityReport rep = check_repulsivity(cas.V_D, p.model.omega2(), tol, activity, gamma);
    out << "stages = " << cas.N_tilde << "\n";
    out << "max_xVp = " << fmt17(rep.max_xVp) << "\n";
    out << "min_xVp = " << fmt17(rep.min_xVp) << "\n";
    out << "verdict = " << to_string(rep.verdict) << "\n";
    if (rep.km22_negative_eigencount >= 0)
        out << "km22_negative_eigencount = " << rep.km22_negative_eigencount << "\n";
    return rep.verdict == RepulsivityVerdict::repulsive ? 0 : 1;
}

int cmd_scattering(const RunConfig& cfg, std::ostream& out) {
    const Pipeline p = run_base(cfg);
    const std::vector<double> ks =
        make_k_grid(p.model.omega(), cfg.get_int("scattering.k_count", 200));
    const JostData j = compute_jost(p.V1, p.model.omega2(), ks);
    CsvTable t;
    t.header_comments = base_header(cfg, "scattering");
    t.columns = {"k", "ReT", "ImT", "absT"};
    for (size_t i = 0; i < ks.size(); ++i)
        t.rows.push_back({ks[i], j.T[i].real(), j.T[i].imag(), std::abs(j.T[i])});
    const std::string path = out_path(cfg, "scattering.csv");
    csv_write(path, t);
    out << "wrote " << path << "\n";
    out << "threshold resonance at omega^2: " << (edge_resonance_check(j) ? "absent" : "present")
        << "\n";
    return 0;
}

int cmd_resonances(const RunConfig& cfg, std::ostream& out) {
    std::vector<double> lambdas;
    double omega;
    if (cfg.has("resonances.lambdas")) {
        lambdas = cfg.get_list("resonances.lambdas", {});
        omega = cfg.get_double("resonances.omega", -1.0);
        if (omega <= 0.0) throw invalid_input("resonances: explicit lambdas need resonances.omega");
    } else {
        const Pipeline p = run_base(cfg);
        lambdas = internal_lambdas(p.odd_spec);
        omega = p.model.omega();
    }
    if (lambdas.empty()) throw invalid_input("resonances: no internal modes");
    const ResonanceStructure s = enumerate_sets(lambdas, omega);
    const GenericityReport gen = check_genericity(s);
    out << "M = " << s.M << "\n";
    auto dump = [&](const char* name, const std::vector<MultiIndex>& set) {
        out << name << " =";
        for (const auto& m : set) out << " " << m.to_string();
        out << "\n";
    };
    dump("R_min", s.R_min);
    dump("NR", s.NR);
    dump("Lambda_0", s.Lambda_0);
    for (size_t j = 0; j < s.Lambda_j.size(); ++j)
        dump(("Lambda_" + std::to_string(j + 1)).c_str(), s.Lambda_j[j]);
    out << "genericity = " << (gen.pass ? "pass" : "fail") << "\n";
    return gen.pass ? 0 : 1;
}

struct FgrRun {
    ResonanceStructure structure;
    FgrReport report;
};

FgrRun run_fgr(const RunConfig& cfg, const Pipeline& p) {
    const std::vector<double> lambdas = internal_lambdas(p.odd_spec);
    if (lambdas.empty()) throw invalid_input("fgr: model has no internal modes");
    const ResonanceStructure s = enumerate_sets(lambdas, p.model.omega());
    const GenericityReport gen = check_genericity(s);
    if (!gen.pass) throw invalid_input("fgr: genericity fails; refined profile is not defined");
    int order = cfg.get_int("fgr.order", std::min(s.M, 3));
    int needed = 0;
    for (const auto& m : s.R_min) needed = std::max(needed, m.order());
    order = std::max(order, needed);
    const RefinedProfile prof = build_refined_profile(p.model, p.kink, p.odd_spec, s, order);
    const auto sources = compute_rmin_sources(prof);
    const double kfgr_min = 1e-3;
    std::vector<double> extra;
    for (const auto& kv : sources) {
        const double mu = frequency(kv.first, prof.lambda);
        extra.push_back(std::sqrt(std::sqrt(mu * mu - p.model.omega2())));
    }
    const std::vector<double> kgrid =
        make_k_grid(p.model.omega(), cfg.get_int("scattering.k_count", 200), kfgr_min, -1.0, extra);
    const JostData jost = compute_jost(p.V1, p.model.omega2(), kgrid);
    FgrRun r{s, fgr_coefficient(prof, sources, jost, p.model.omega(),
                                cfg.get_double("fgr.threshold", 1e-8))};
    return r;
}

int cmd_fgr(const RunConfig& cfg, std::ostream& out) {
    const Pipeline p = run_base(cfg);
    const FgrRun r = run_fgr(cfg, p);
    for (const auto& e : r.report.entries) {
        out << "m = " << e.m.to_string() << "  r_m = " << fmt17(e.r_m) << "  k = " << fmt17(e.k_eval)
            << "  gamma = " << fmt17(e.gamma_pc) << "  "
            << (e.nondegenerate ? "nondegenerate" : "DEGENERATE") << "\n";
    }
    return r.report.all_nondegenerate ? 0 : 1;
}

int cmd_phi8_figure(const RunConfig& cfg, std::ostream& out) {
    std::vector<double> defaults;
    for (int i = 0; i <= 9; ++i) defaults.push_back(0.1 * i);
    const std::vector<double> eps = cfg.get_list("eps.list", defaults);
    const Grid grid = cfg.make_grid();
    const Phi8Curves data = figure1_data(eps, grid);

    std::vector<SvgCurve> curves;
    for (const auto& kv : data.curves) {
        char label[32];
        std::snprintf(label, sizeof(label), "eps = %.3g", kv.first);
        CsvTable t;
        t.header_comments = base_header(cfg, std::string("phi8-figure ") + label);
        t.header_comments.push_back("eigenvalue_count: " + std::to_string(data.eigenvalue_counts.at(kv.first)));
        t.columns = {"x", "value"};
        SvgCurve c;
        c.label = label;
        for (int i = 0; i < grid.n; ++i) {
            t.rows.push_back({grid.x(i), kv.second[i]});
            c.x.push_back(grid.x(i));
            c.y.push_back(kv.second[i]);
        }
        char name[64];
        std::snprintf(name, sizeof(name), "phi8_eps_%.4f.csv", kv.first);
        csv_write(out_path(cfg, name), t);
        curves.push_back(std::move(c));
    }
    if (cfg.get_bool("svg.enable", true))
        svg_write(out_path(cfg, "phi8_figure.svg"), curves, "V_D minus asymptote across eps");
    out << "wrote " << data.curves.size() << " curves\n";
    return 0;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
    const Pipeline p = run_base(cfg);
    bool all = true;

    const ValidationReport w = validate(p.model);
    out << "potential structure (double zero, mass, positivity, evenness): "
        << (w.all_pass ? "pass" : "FAIL") << "\n";
    all = all && w.all_pass;

    const DarbouxCascade cas = run_cascade(p.model, p.kink, p.grid);
    const RepulsivityReport rep = check_repulsivity(cas.V_D, p.model.omega2());
    const bool a1 = rep.verdict == RepulsivityVerdict::repulsive;
    out << "assumption 1 (repulsivity of V_D after " << cas.N_tilde
        << " transformations): " << to_string(rep.verdict) << (a1 ? " -> pass" : " -> FAIL") << "\n";
    all = all && a1;

    const std::vector<double> lambdas = internal_lambdas(p.odd_spec);
    if (lambdas.empty()) {
        out << "assumption 2 (spectral genericity): no internal modes -> FAIL\n";
        out << "assumption 3 (FGR nondegeneracy): not evaluated\n";
        return 1;
    }
    const ResonanceStructure s = enumerate_sets(lambdas, p.model.omega());
    const GenericityReport gen = check_genericity(s);
    out << "assumption 2 (spectral genericity, M = " << s.M << "): "
        << (gen.pass ? "pass" : "FAIL") << "\n";
    all = all && gen.pass;

    if (gen.pass) {
        const FgrRun r = run_fgr(cfg, p);
        out << "assumption 3 (FGR nondegeneracy):";
        for (const auto& e : r.report.entries)
            out << " gamma" << e.m.to_string() << " = " << fmt17(e.gamma_pc);
        out << (r.report.all_nondegenerate ? " -> pass" : " -> FAIL") << "\n";
        all = all && r.report.all_nondegenerate;
    } else {
        out << "assumption 3 (FGR nondegeneracy): not evaluated (genericity failed)\n";
        all = false;
    }
    out << "certificate: " << (all ? "PASS" : "FAIL") << "\n";
    return all ? 0 : 1;
}

} // namespace

int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (command == "kink") return cmd_kink(cfg, out);
        if (command == "spectrum") return cmd_spectrum(cfg, out);
        if (command == "darboux") return repulsivity_common(cfg, out, true);
        if (command == "scattering") return cmd_scattering(cfg, out);
        if (command == "check-repulsivity") return repulsivity_common(cfg, out, false);
        if (command == "resonances") return cmd_resonances(cfg, out);
        if (command == "fgr") return cmd_fgr(cfg, out);
        if (command == "phi8-figure") return cmd_phi8_figure(cfg, out);
        if (command == "certify") return cmd_certify(cfg, out);
        err << "unknown command '" << command << "'\n";
        return 2;
    } catch (const invalid_input& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const capability_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace cli

} // namespace kinklab
