#include "sgefem/runner.hpp"

#include "sgefem/errors.hpp"
#include "sgefem/svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

namespace sgefem {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// fixed-size work pool over sweep indices; exceptions come back as messages
void parallel_for(int n, int threads,
                  const std::function<std::optional<std::string>(int)>& job,
                  std::vector<std::string>& errors) {
    errors.assign(n, "");
    threads = std::max(1, threads);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                if (auto err = job(i)) errors[i] = *err;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (threads == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(threads, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ConfigError("cannot write " + path.string());
        out << text;
    }
    fs::rename(tmp, path);
}

ordered_json summary_json(const CaseSummary& s) {
    ordered_json j;
    j["K"] = {s.k.k[0], s.k.k[1], s.k.k[2], s.k.k[3]};
    j["J"] = s.j;
    j["J_normalized"] = s.j_normalized;
    j["kt"] = s.kt;
    j["enrichment_jump"] = s.enrichment_jump;
    j["health"] = {{"residual_norm", s.report.residual_norm},
                   {"out_of_balance_norm", s.report.out_of_balance_norm},
                   {"equilibrium_gap", s.report.equilibrium_gap},
                   {"symmetry_gap", s.report.symmetry_gap}};
    j["mesh"] = {{"nodes", s.n_nodes},
                 {"elements", s.n_elements},
                 {"enriched", s.n_enriched},
                 {"dofs", s.report.n_dofs},
                 {"free_dofs", s.report.n_free}};
    return j;
}

std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string summary_to_json(const RunConfig& config, const CaseSummary& summary) {
    ordered_json j;
    j["config"] = ordered_json::parse(serialize_config(config));
    j["result"] = summary_json(summary);
    return j.dump(2) + "\n";
}

CaseResult solve_case(const RunConfig& config) {
    CaseResult out;
    out.material = make_material(config.youngs_modulus, config.poisson_ratio,
                                 config.length_scale);
    DomainSpec spec;
    spec.half_crack = config.half_crack;
    spec.half_domain = config.half_domain;
    spec.fan_radius = config.fan_radius;
    spec.fan_count = config.fan_count;
    spec.grading = config.grading;
    out.mesh = generate_quarter_mesh(spec);

    AssemblyOptions opts;
    opts.conventional_rule = 13;
    opts.enriched_rule = config.quadrature_id;
    opts.enrichment = config.enrichment;
    Assembler assembler(out.mesh, out.material, opts);
    out.solution = assembler.solve_mode(config.mode, config.load);
    out.summary = summarize_case(out.mesh, out.material, out.solution, config.mode,
                                 config.load, config.half_domain / 40.0,
                                 config.enrichment);
    return out;
}

CaseSummary run_single(const RunConfig& config, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const CaseResult r = solve_case(config);
    write_text_atomic(fs::path(out_dir) / "summary.json",
                      summary_to_json(config, r.summary));

    const FieldEvaluator eval(r.mesh, r.material, r.solution, config.enrichment);
    const double t = config.load;
    const double d = config.half_crack;

    if (config.mode == CrackMode::I) {
        const auto profile = crack_opening_profile(eval, r.mesh, 160);
        std::string csv = "x,v,v_asymptotic\n";
        PlotSeries num{"numeric", {}, {}, "#1f77b4", false, true};
        PlotSeries asy{"tip asymptote", {}, {}, "#d62728", true, false};
        const double amp = -(1.0 + r.material.kolosov) /
                           (2.0 * r.material.shear_modulus) *
                           (r.summary.k.k[0] + 5.0 / 3.0 * r.summary.k.k[1]);
        for (const auto& [x, v] : profile) {
            const double va = amp * std::pow(std::abs(x), 1.5);
            csv += csv_num(x) + "," + csv_num(v) + "," + csv_num(va) + "\n";
            num.x.push_back(x);
            num.y.push_back(v);
            asy.x.push_back(x);
            asy.y.push_back(va);
        }
        write_text_atomic(fs::path(out_dir) / "crack_opening.csv", csv);
        PlotSpec ps;
        ps.title = "crack opening profile";
        ps.xlabel = "x [m]";
        ps.ylabel = "v [m]";
        write_svg_plot((fs::path(out_dir) / "crack_opening.svg").string(), ps,
                       {num, asy});
    }

    // Cauchy stresses along the crack plane y = 0
    {
        std::string csv = "x,tau11_over_t,tau22_over_t,tau12_over_t\n";
        std::vector<double> xs;
        const double xr = config.half_domain - d;
        const double lo = std::min(config.fan_radius / 20.0, d / 1000.0);
        for (int i = 0; i < 40; ++i)
            xs.push_back(-d + (d - lo) * i / 39.0);
        for (int i = 0; i < 30; ++i)
            xs.push_back(-lo * std::pow(d / lo, 1.0 - i / 29.0));
        for (int i = 0; i < 30; ++i)
            xs.push_back(lo * std::pow(xr / lo, i / 29.0));
        for (int i = 0; i < 40; ++i)
            xs.push_back(lo + (xr - lo) * i / 39.0);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        PlotSeries s11{"tau11/t", {}, {}, "#2ca02c", false, false};
        PlotSeries s22{"tau22/t", {}, {}, "#1f77b4", false, false};
        PlotSeries s12{"tau12/t", {}, {}, "#d62728", false, false};
        for (double x : xs) {
            if (x <= -d || x >= xr) continue;
            const FieldSample f = eval.evaluate({x, 0.0});
            csv += csv_num(x) + "," + csv_num(f.cauchy[0] / t) + "," +
                   csv_num(f.cauchy[1] / t) + "," + csv_num(f.cauchy[2] / t) + "\n";
            s11.x.push_back(x);
            s11.y.push_back(f.cauchy[0] / t);
            s22.x.push_back(x);
            s22.y.push_back(f.cauchy[1] / t);
            s12.x.push_back(x);
            s12.y.push_back(f.cauchy[2] / t);
        }
        write_text_atomic(fs::path(out_dir) / "stress_y0.csv", csv);
        PlotSpec ps;
        ps.title = "Cauchy stress along y = 0";
        ps.xlabel = "x [m]";
        ps.ylabel = "tau / t";
        write_svg_plot((fs::path(out_dir) / "stress_y0.svg").string(), ps,
                       {s11, s22, s12});
    }
    return r.summary;
}

void run_convergence(const RunConfig& config, const std::string& out_dir,
                     int threads) {
    if (config.sweep_values.empty()) {
        throw ConfigError("run_convergence: empty sweep list");
    }
    fs::create_directories(out_dir);
    fs::create_directories(fs::path(out_dir) / "points");
    const int n = static_cast<int>(config.sweep_values.size());

    struct Row {
        double value = 0.0;
        CaseSummary enriched;
        std::optional<CaseSummary> conventional;
        bool ok = false;
    };
    std::vector<Row> rows(n);
    std::vector<std::string> errors;

    auto job = [&](int i) -> std::optional<std::string> {
        const double v = config.sweep_values[i];
        RunConfig c = config;
        c.study = StudyType::Single;
        switch (config.sweep) {
            case SweepParameter::RadiusOverEll:
                c.fan_radius = v * config.length_scale;
                break;
            case SweepParameter::FanCount:
                c.fan_count = static_cast<int>(std::lround(v));
                break;
            case SweepParameter::Quadrature:
                c.quadrature_id = static_cast<int>(std::lround(v));
                break;
        }
        Row row;
        row.value = v;
        c.enrichment = true;
        const CaseResult enr = solve_case(c);
        row.enriched = enr.summary;
        write_text_atomic(fs::path(out_dir) / "points" /
                              ("enriched_" + std::to_string(i) + ".json"),
                          summary_to_json(c, enr.summary));
        if (config.sweep == SweepParameter::RadiusOverEll) {
            RunConfig cc = c;
            cc.enrichment = false;
            const CaseResult conv = solve_case(cc);
            row.conventional = conv.summary;
            write_text_atomic(fs::path(out_dir) / "points" /
                                  ("conventional_" + std::to_string(i) + ".json"),
                              summary_to_json(cc, conv.summary));
        }
        row.ok = true;
        rows[i] = row;
        return std::nullopt;
    };
    parallel_for(n, threads, job, errors);

    std::string csv =
        "value,kt_enriched,kt_conventional,K1,K2,K3,K4,J,J_normalized,dofs,status\n";
    PlotSeries enr{"enriched", {}, {}, "#1f77b4", false, true};
    PlotSeries conv{"conventional", {}, {}, "#d62728", false, true};
    for (int i = 0; i < n; ++i) {
        const Row& row = rows[i];
        if (!row.ok) {
            csv += csv_num(config.sweep_values[i]) + ",,,,,,,,,,failed: " +
                   errors[i] + "\n";
            continue;
        }
        const CaseSummary& e = row.enriched;
        csv += csv_num(row.value) + "," + csv_num(e.kt) + "," +
               (row.conventional ? csv_num(row.conventional->kt) : "") + "," +
               csv_num(e.k.k[0]) + "," + csv_num(e.k.k[1]) + "," +
               csv_num(e.k.k[2]) + "," + csv_num(e.k.k[3]) + "," + csv_num(e.j) +
               "," + csv_num(e.j_normalized) + "," +
               std::to_string(e.report.n_dofs) + ",ok\n";
        enr.x.push_back(row.value);
        enr.y.push_back(e.kt);
        if (row.conventional) {
            conv.x.push_back(row.value);
            conv.y.push_back(row.conventional->kt);
        }
    }
    write_text_atomic(fs::path(out_dir) / "convergence.csv", csv);

    PlotSpec ps;
    ps.xlabel = (config.sweep == SweepParameter::RadiusOverEll) ? "R / ell"
                : (config.sweep == SweepParameter::FanCount)    ? "M"
                                                                : "quadrature points";
    ps.ylabel = "K_t";
    ps.title = std::string("tip stress concentration, mode ") + mode_name(config.mode);
    ps.logx = (config.sweep == SweepParameter::RadiusOverEll);
    std::vector<PlotSeries> series{enr};
    if (!conv.x.empty()) series.push_back(conv);
    write_svg_plot((fs::path(out_dir) / "convergence.svg").string(), ps, series);
}

void run_size_effect(const RunConfig& config, const std::string& out_dir,
                     int threads) {
    if (config.d_over_length.empty() || config.ell_over_length.empty()) {
        throw ConfigError("run_size_effect: empty sweep lists");
    }
    fs::create_directories(out_dir);
    fs::create_directories(fs::path(out_dir) / "points");
    const int nd = static_cast<int>(config.d_over_length.size());
    const int nl = static_cast<int>(config.ell_over_length.size());
    const int n = nd * nl;

    struct Row {
        double ell_ratio = 0.0, d_ratio = 0.0;
        CaseSummary s;
        bool ok = false;
    };
    std::vector<Row> rows(n);
    std::vector<std::string> errors;

    auto job = [&](int i) -> std::optional<std::string> {
        const int il = i / nd, id = i % nd;
        Row row;
        row.ell_ratio = config.ell_over_length[il];
        row.d_ratio = config.d_over_length[id];
        RunConfig c = config;
        c.study = StudyType::Single;
        c.length_scale = row.ell_ratio * config.half_domain;
        c.half_crack = row.d_ratio * config.half_domain;
        c.fan_radius = 0.1 * c.length_scale;  // paper settings R/ell = 0.1
        const CaseResult res = solve_case(c);
        row.s = res.summary;
        row.ok = true;
        rows[i] = row;
        write_text_atomic(fs::path(out_dir) / "points" /
                              ("point_" + std::to_string(i) + ".json"),
                          summary_to_json(c, res.summary));
        return std::nullopt;
    };
    parallel_for(n, threads, job, errors);

    const double t = config.load;
    std::string csv =
        "ell_over_L,d_over_L,K1,K2,K3,K4,K1_norm,K2_norm,K3_norm,K4_norm,J,"
        "J_normalized,kt,inv_kt,status\n";
    std::vector<PlotSeries> kseries, jseries, iseries;
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                             "#8c564b", "#e377c2"};
    for (int il = 0; il < nl; ++il) {
        const double lr = config.ell_over_length[il];
        const double ell = lr * config.half_domain;
        const double knorm = t / std::sqrt(ell);
        PlotSeries k1{"K1, ell/L=" + csv_num(lr), {}, {}, palette[il % 6], false, true};
        PlotSeries k2{"K2, ell/L=" + csv_num(lr), {}, {}, palette[il % 6], true, true};
        PlotSeries jn{"ell/L=" + csv_num(lr), {}, {}, palette[il % 6], false, true};
        PlotSeries ik{"ell/L=" + csv_num(lr), {}, {}, palette[il % 6], false, true};
        for (int id = 0; id < nd; ++id) {
            const int i = il * nd + id;
            const Row& row = rows[i];
            if (!row.ok) {
                csv += csv_num(config.ell_over_length[il]) + "," +
                       csv_num(config.d_over_length[id]) +
                       ",,,,,,,,,,,,,failed: " + errors[i] + "\n";
                continue;
            }
            const CaseSummary& s = row.s;
            csv += csv_num(row.ell_ratio) + "," + csv_num(row.d_ratio);
            for (int a = 0; a < 4; ++a) csv += "," + csv_num(s.k.k[a]);
            for (int a = 0; a < 4; ++a) csv += "," + csv_num(s.k.k[a] / knorm);
            csv += "," + csv_num(s.j) + "," + csv_num(s.j_normalized) + "," +
                   csv_num(s.kt) + "," + csv_num(1.0 / s.kt) + ",ok\n";
            const int a0 = (config.mode == CrackMode::I) ? 0 : 2;
            k1.x.push_back(row.d_ratio);
            k1.y.push_back(s.k.k[a0] / knorm);
            k2.x.push_back(row.d_ratio);
            k2.y.push_back(s.k.k[a0 + 1] / knorm);
            jn.x.push_back(row.d_ratio);
            jn.y.push_back(s.j_normalized);
            ik.x.push_back(row.d_ratio);
            ik.y.push_back(1.0 / s.kt);
        }
        kseries.push_back(k1);
        kseries.push_back(k2);
        jseries.push_back(jn);
        iseries.push_back(ik);
    }
    // classical infinite-plate reference for the J plot: Jbar = d / d_min
    {
        PlotSeries cl{"classical (infinite plate)", {}, {}, "#000000", true, false};
        for (int id = 0; id < nd; ++id) {
            cl.x.push_back(config.d_over_length[id]);
            cl.y.push_back(config.d_over_length[id] / (1.0 / 40.0));
        }
        jseries.push_back(cl);
    }
    write_text_atomic(fs::path(out_dir) / "size_effect.csv", csv);

    PlotSpec pk;
    pk.title = std::string("normalized amplitude factors, mode ") +
               mode_name(config.mode);
    pk.xlabel = "d / L";
    pk.ylabel = "K / (t ell^-1/2)";
    write_svg_plot((fs::path(out_dir) / "amplitudes.svg").string(), pk, kseries);
    PlotSpec pj;
    pj.title = "normalized J-integral";
    pj.xlabel = "d / L";
    pj.ylabel = "J / J0";
    write_svg_plot((fs::path(out_dir) / "j_integral.svg").string(), pj, jseries);
    PlotSpec pi;
    pi.title = "inverse tip stress concentration";
    pi.xlabel = "d / L";
    pi.ylabel = "1 / K_t";
    write_svg_plot((fs::path(out_dir) / "inverse_kt.svg").string(), pi, iseries);
}

} // namespace sgefem
