#include "fuchsian/runners.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fuchsian/boundary.hpp"
#include "fuchsian/config.hpp"
#include "fuchsian/limits.hpp"
#include "fuchsian/orbits.hpp"
#include "fuchsian/trigapprox.hpp"

namespace fuchsian {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct RunContext {
    Config cfg;
    RunOptions opts;
    fs::path dir;
    std::vector<std::pair<std::string, std::uint64_t>> outputs;

    void write(const std::string& name, const std::string& content) {
        fs::create_directories(dir);
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        out << content;
        outputs.emplace_back(name, fnv1a(content.data(), content.size()));
    }

    EnumerationOptions enum_opts() const {
        EnumerationOptions e;
        e.workers = opts.workers;
        e.budget_elements = opts.budget_elements.value_or(
            static_cast<std::size_t>(cfg.number_or("run.budget_elements", 5e7)));
        return e;
    }
};

GroupSpec group_from_config(const Config& cfg) {
    const std::string kind = cfg.string_or("group.kind", "arithmetic-lattice");
    const bool minus_one = cfg.boolean_or("group.include_minus_one", true);
    std::vector<Mat2> gens;
    if (cfg.has("group.generators")) {
        for (const auto& row : cfg.matrix_list("group.generators")) {
            if (row.size() != 4)
                throw config_error("group.generators rows must be [a, b, c, d]");
            gens.push_back({row[0], row[1], row[2], row[3]});
        }
    }
    if (kind == "arithmetic-lattice") {
        GroupSpec s = GroupSpec::sl2z();
        if (!gens.empty()) s.generators = gens;
        return s;
    }
    if (kind == "free-group" || kind == "schottky") {
        if (gens.empty()) {
            if (kind == "schottky") return GroupSpec::schottky_fixture();
            throw config_error("group.generators required for kind = \"" + kind + "\"");
        }
        return kind == "schottky" ? GroupSpec::schottky(gens, minus_one)
                                  : GroupSpec::free_group(gens, minus_one);
    }
    throw config_error("unknown group.kind: " + kind);
}

RepSpace rep_from_config(const Config& cfg) {
    std::vector<int> weights = cfg.has("rep.weights") ? cfg.integer_list("rep.weights")
                                                      : std::vector<int>{1};
    return build_rep(weights);
}

std::vector<double> ladder_from_config(const Config& cfg) {
    if (!cfg.has("run.T_ladder")) throw config_error("missing run.T_ladder");
    auto ladder = cfg.number_list("run.T_ladder");
    if (ladder.empty()) throw config_error("run.T_ladder must be nonempty");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1])
            throw config_error("run.T_ladder must be strictly increasing");
    return ladder;
}

double resolve_delta(const RunContext& ctx, const GroupSpec& spec, std::string* note) {
    if (ctx.cfg.has("run.delta_override")) {
        if (note) *note = "delta from config override";
        return ctx.cfg.number("run.delta_override");
    }
    const double T_delta = ctx.cfg.number_or("run.T_delta", 400.0);
    const auto est = estimate_exponent(spec, ExponentMethod::GrowthFit, T_delta, ctx.enum_opts());
    if (note) {
        *note = "delta fitted from orbit growth up to T = " + format_double(T_delta);
        if (!est.warning.empty()) *note += "; " + est.warning;
    }
    return est.delta_hat;
}

BoundaryMeasure measure_for_group(const RunContext& ctx, const GroupSpec& spec,
                                  const OrbitSet& orbit, double delta) {
    if (spec.kind == GroupKind::ArithmeticLattice)
        return BoundaryMeasure::lebesgue(ctx.cfg.integer_or("run.lebesgue_atoms", 64));
    PsOptions popt;
    popt.delta_hint = delta;
    const BoundaryMeasure mu = ps_estimate(
        orbit, delta + ctx.cfg.number_or("run.ps_offset", 0.05), PsMode::PattersonLimit, popt);
    // the angle-slot double sums of the limit integral are quadratic in the
    // atom count; pool large empirical measures onto a histogram first
    const int bins = ctx.cfg.integer_or("run.measure_bins", 512);
    return mu.atoms.size() > 4 * std::size_t(bins) ? binned(mu, bins) : mu;
}

json complex_json(const complexd& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// ---- subcommands ----------------------------------------------------------

void run_enumerate(RunContext& ctx) {
    const GroupSpec spec = group_from_config(ctx.cfg);
    const RepSpace rep = rep_from_config(ctx.cfg);
    const auto ladder = ladder_from_config(ctx.cfg);
    const OrbitSet orbit = enumerate_orbit(spec, rep, ladder.back(), ctx.enum_opts());
    ctx.write("orbit.csv", orbit_to_csv(orbit));
    json j;
    j["T"] = orbit.T;
    j["k"] = orbit.rep_k;
    j["elements"] = orbit.elements.size();
    j["paired"] = orbit.paired;
    j["dedup_count"] = orbit.dedup_count;
    ctx.write("enumerate.json", j.dump(2) + "\n");
}

void run_exponent(RunContext& ctx) {
    const GroupSpec spec = group_from_config(ctx.cfg);
    const std::string method_name = ctx.cfg.string_or("exponent.method", "growth-fit");
    ExponentMethod method;
    if (method_name == "growth-fit") method = ExponentMethod::GrowthFit;
    else if (method_name == "poincare-abscissa") method = ExponentMethod::PoincareAbscissa;
    else throw config_error("exponent.method must be growth-fit or poincare-abscissa");
    const double T_max = ctx.cfg.number_or("exponent.T_max", ctx.cfg.number_or("run.T_delta", 400.0));
    const auto est = estimate_exponent(spec, method, T_max, ctx.enum_opts());
    json j;
    j["delta_hat"] = est.delta_hat;
    j["stderr"] = est.stderr_;
    j["method"] = method_name;
    j["T_min"] = est.T_min;
    j["T_max"] = est.T_max;
    j["warning"] = est.warning;
    ctx.write("exponent.json", j.dump(2) + "\n");
}

void run_ps(RunContext& ctx) {
    const GroupSpec spec = group_from_config(ctx.cfg);
    const RepSpace rep = rep_from_config(ctx.cfg);
    const auto ladder = ladder_from_config(ctx.cfg);
    std::string note;
    const double delta = resolve_delta(ctx, spec, &note);
    const OrbitSet orbit = enumerate_orbit(spec, rep, ladder.back(), ctx.enum_opts());

    const std::string mode_name = ctx.cfg.string_or("ps.mode", "patterson-limit");
    const PsMode mode = mode_name == "empirical-angular" ? PsMode::EmpiricalAngular
                                                         : PsMode::PattersonLimit;
    std::vector<double> offsets = ctx.cfg.has("ps.s_offsets")
                                      ? ctx.cfg.number_list("ps.s_offsets")
                                      : std::vector<double>{0.1, 0.05, 0.025};
    const int n_max = ctx.cfg.integer_or("ps.n_max", 8);

    json j;
    j["delta"] = delta;
    j["delta_note"] = note;
    j["mode"] = mode_name;
    json runs = json::array();
    std::vector<std::vector<complexd>> coeff_rows;
    for (double off : offsets) {
        const double s = delta + off;
        PsOptions popt;
        popt.delta_hint = delta;
        const BoundaryMeasure mu = ps_estimate(orbit, s, mode, popt);
        char tag[32];
        std::snprintf(tag, sizeof tag, "s%g", off);
        ctx.write("measure_" + std::string(tag) + ".csv", measure_to_csv(mu));
        ctx.write("fourier_" + std::string(tag) + ".csv", fourier_table_csv(mu, n_max));
        std::vector<complexd> row;
        for (int n = 0; n <= n_max; ++n) row.push_back(fourier_coeff(mu, n));
        coeff_rows.push_back(row);
        json r;
        r["s_offset"] = off;
        r["atoms"] = mu.atoms.size();
        r["warning"] = mu.warning;
        r["mu_hat_0"] = complex_json(row[0]);
        runs.push_back(r);
        if (mode == PsMode::EmpiricalAngular) break;  // no s ladder in that mode
    }
    j["runs"] = runs;
    if (coeff_rows.size() >= 2) {
        double worst = 0;
        for (int n = 0; n <= n_max; ++n)
            worst = std::max(worst, std::abs(coeff_rows[coeff_rows.size() - 1][n] -
                                             coeff_rows[coeff_rows.size() - 2][n]));
        j["stability_last_two_rungs"] = worst;
    }
    ctx.write("ps.json", j.dump(2) + "\n");
}

void run_compare(RunContext& ctx) {
    const GroupSpec spec = group_from_config(ctx.cfg);
    const RepSpace rep = rep_from_config(ctx.cfg);
    const auto ladder = ladder_from_config(ctx.cfg);
    const int quad = ctx.cfg.integer_or("run.quadrature", 256);
    std::string note;
    const double delta = resolve_delta(ctx, spec, &note);
    const OrbitSet orbit = enumerate_orbit(spec, rep, ladder.back(), ctx.enum_opts());
    const double q = 2 * delta / rep.k;

    LimitSpec lspec;
    lspec.mu = measure_for_group(ctx, spec, orbit, delta);
    lspec.delta = delta;
    lspec.rep = rep;
    lspec.mass_constant =
        double(orbit.count_norm_le(ladder.back())) / std::pow(ladder.back(), q);

    json j;
    j["delta"] = delta;
    j["delta_note"] = note;
    j["k"] = rep.k;
    j["mass_constant"] = lspec.mass_constant;
    j["v_gamma"] = delta > 0.5 + 1e-6 ? v_gamma(delta) : 0.0;
    json reports = json::array();
    std::ostringstream csv;
    csv << "function,T,emp_re,emp_im,limit_re,limit_im,rel_error,self_norm_rel_error\n";

    for (const auto& f : standard_test_suite(rep)) {
        const TestFunction sym = symmetrize(f, rep);
        const complexd lim = limit_integral(lspec, sym, quad);
        json rep_j;
        rep_j["function"] = f.name;
        rep_j["T_ladder"] = ladder;
        rep_j["limit"] = complex_json(lim);
        rep_j["mass_constant"] = lspec.mass_constant;
        rep_j["delta"] = delta;
        rep_j["k"] = rep.k;
        json emp_arr = json::array(), rel_arr = json::array(), self_arr = json::array();
        for (double T : ladder) {
            const complexd emp = empirical_avg(orbit, rep, f, T, true, delta);
            const double rel = std::abs(emp - lim) / std::max(std::abs(lim), 1e-12);
            const double ball_emp = double(orbit.count_norm_le(T)) / std::pow(T, q);
            const complexd self_emp = emp / ball_emp;
            const complexd self_lim = lim / lspec.mass_constant;
            const double self_rel =
                std::abs(self_emp - self_lim) / std::max(std::abs(self_lim), 1e-12);
            emp_arr.push_back(complex_json(emp));
            rel_arr.push_back(rel);
            self_arr.push_back(self_rel);
            csv << f.name << ',' << format_double(T) << ',' << format_double(emp.real()) << ','
                << format_double(emp.imag()) << ',' << format_double(lim.real()) << ','
                << format_double(lim.imag()) << ',' << format_double(rel) << ','
                << format_double(self_rel) << '\n';
        }
        rep_j["empirical"] = emp_arr;
        rep_j["rel_error"] = rel_arr;
        rep_j["self_norm_rel_error"] = self_arr;
        // observational only: the log-log slope of the error along the ladder
        if (ladder.size() >= 2) {
            std::vector<double> lx, ly;
            for (std::size_t i = 0; i < ladder.size(); ++i) {
                const double e = self_arr[i].get<double>();
                if (e > 1e-14) {
                    lx.push_back(std::log(ladder[i]));
                    ly.push_back(std::log(e));
                }
            }
            if (lx.size() >= 2)
                rep_j["observed_rate_slope"] = fit_line(lx, ly).slope;
        }
        reports.push_back(rep_j);
    }
    j["reports"] = reports;
    ctx.write("compare.json", j.dump(2) + "\n");
    ctx.write("compare.csv", csv.str());
}

void run_marginal(RunContext& ctx) {
    const GroupSpec spec = group_from_config(ctx.cfg);
    const RepSpace rep = rep_from_config(ctx.cfg);
    if (rep.k != 1 || rep.parts.size() != 1)
        throw config_error("marginal requires rep.weights = [1]");
    const auto ladder = ladder_from_config(ctx.cfg);
    const int quad = ctx.cfg.integer_or("run.quadrature", 256);
    std::string note;
    const double delta = resolve_delta(ctx, spec, &note);
    const OrbitSet orbit = enumerate_orbit(spec, rep, ladder.back(), ctx.enum_opts());
    const BoundaryMeasure mu = measure_for_group(ctx, spec, orbit, delta);

    struct Named {
        std::string name;
        std::function<double(double)> f;
    };
    const std::vector<Named> fams = {
        {"r^2", [](double r) { return r * r; }},
        {"r", [](double r) { return r; }},
        {"r^4", [](double r) { return r * r * r * r; }},
    };
    json j;
    j["delta"] = delta;
    j["delta_note"] = note;
    std::ostringstream csv;
    csv << "function,T,empirical,limit,rel_error\n";
    json reports = json::array();
    for (const auto& fam : fams) {
        const auto rep_out = marginal_a_distribution(orbit, ladder, fam.f, mu, delta, quad);
        json r;
        r["function"] = fam.name;
        r["T_ladder"] = rep_out.T_ladder;
        r["limit"] = rep_out.limit_value.real();
        r["mass_constant"] = rep_out.mass_constant;
        r["delta"] = rep_out.delta;
        r["k"] = rep_out.k;
        json emp = json::array(), rel = json::array();
        for (std::size_t i = 0; i < ladder.size(); ++i) {
            emp.push_back(rep_out.empirical[i].real());
            rel.push_back(rep_out.rel_error[i]);
            csv << fam.name << ',' << format_double(ladder[i]) << ','
                << format_double(rep_out.empirical[i].real()) << ','
                << format_double(rep_out.limit_value.real()) << ','
                << format_double(rep_out.rel_error[i]) << '\n';
        }
        r["empirical"] = emp;
        r["rel_error"] = rel;
        reports.push_back(r);
    }
    j["reports"] = reports;
    ctx.write("marginal.json", j.dump(2) + "\n");
    ctx.write("marginal.csv", csv.str());
}

void run_sectors(RunContext& ctx) {
    const GroupSpec spec = group_from_config(ctx.cfg);
    const RepSpace rep = rep_from_config(ctx.cfg);
    const auto ladder = ladder_from_config(ctx.cfg);
    const int n_max = ctx.cfg.integer_or("sectors.n_max", 3);
    const int m_max = ctx.cfg.integer_or("sectors.m_max", 0);
    const OrbitSet orbit = enumerate_orbit(spec, rep, ladder.back(), ctx.enum_opts());

    std::ostringstream csv;
    csv << "n,m,T,re,im,ratio_re,ratio_im\n";
    for (double T : ladder) {
        const double Tg = std::pow(T, 1.0 / rep.k);  // |gamma| scale
        const complexd base = sector_sum(orbit, 0, 0, Tg);
        for (int n = -n_max; n <= n_max; ++n) {
            for (int m = -m_max; m <= m_max; ++m) {
                const complexd s = sector_sum(orbit, n, m, Tg);
                const complexd ratio = s / base;
                csv << n << ',' << m << ',' << format_double(T) << ','
                    << format_double(s.real()) << ',' << format_double(s.imag()) << ','
                    << format_double(ratio.real()) << ',' << format_double(ratio.imag()) << '\n';
            }
        }
    }
    ctx.write("sectors.csv", csv.str());
}

void run_fejer(RunContext& ctx) {
    FejerOptions fopt;
    fopt.grid = ctx.cfg.integer_or("fejer.grid", 512);
    fopt.use_fft = ctx.cfg.boolean_or("fejer.use_fft", false);
    fopt.workers = ctx.opts.workers;
    std::vector<int> ladder = ctx.cfg.has("fejer.R_ladder")
                                  ? ctx.cfg.integer_list("fejer.R_ladder")
                                  : std::vector<int>{8, 16, 32, 64, 128};
    std::vector<std::string> names = ctx.cfg.has("fejer.functions")
                                         ? ctx.cfg.string_list("fejer.functions")
                                         : std::vector<std::string>{"abs-sin", "abs-sin-sqrt"};
    struct Psi {
        std::function<complexd(double, double)> f;
        double alpha;
        double c;
    };
    auto lookup = [](const std::string& name) -> Psi {
        if (name == "abs-sin")
            return {[](double a, double) { return complexd(std::abs(std::sin(a)), 0); }, 1.0, 1.0};
        if (name == "abs-sin-sqrt")
            return {[](double a, double) { return complexd(std::sqrt(std::abs(std::sin(a))), 0); },
                    0.5, 1.0};
        if (name == "smooth-trig")
            return {[](double a, double b) {
                        return complexd(std::cos(2 * a) + 0.5 * std::cos(2 * b), 0);
                    },
                    1.0, 3.0};
        if (name == "mixed")
            return {[](double a, double b) {
                        return complexd(std::abs(std::sin(a)) * std::abs(std::cos(b)), 0);
                    },
                    1.0, 2.0};
        throw config_error("unknown fejer function: " + name);
    };

    json j;
    json fits = json::array();
    for (const auto& name : names) {
        const Psi psi = lookup(name);
        const RateFit fit = holder_rate_fit(psi.f, psi.alpha, ladder, psi.c, fopt);
        std::ostringstream csv;
        csv << "R,sup_error,bound\n";
        for (std::size_t i = 0; i < fit.R_ladder.size(); ++i)
            csv << fit.R_ladder[i] << ',' << format_double(fit.sup_error[i]) << ','
                << format_double(fit.bound[i]) << '\n';
        ctx.write("rate_" + name + ".csv", csv.str());
        json f;
        f["function"] = name;
        f["alpha"] = psi.alpha;
        f["slope_raw"] = fit.slope_raw;
        f["slope_log_adjusted"] = fit.slope_log_adjusted;
        f["fitted_exponent"] = fit.exponent();
        f["c0"] = fit.c0;
        f["warning"] = fit.warning;
        fits.push_back(f);
    }
    j["fits"] = fits;
    ctx.write("fejer.json", j.dump(2) + "\n");
}

void run_annuli(RunContext& ctx) {
    const GroupSpec spec = group_from_config(ctx.cfg);
    const RepSpace rep = rep_from_config(ctx.cfg);
    const auto ladder = ladder_from_config(ctx.cfg);
    std::string note;
    const double delta = resolve_delta(ctx, spec, &note);
    const OrbitSet orbit = enumerate_orbit(spec, rep, ladder.back(), ctx.enum_opts());
    std::vector<int> Ns = ctx.cfg.has("annuli.N_values") ? ctx.cfg.integer_list("annuli.N_values")
                                                         : std::vector<int>{1, 4, 16, 64};

    std::ostringstream csv;
    csv << "N,j,count,M_value\n";
    json j;
    j["delta"] = delta;
    j["elements"] = orbit.elements.size();
    json checks = json::array();
    const auto suite = standard_test_suite(rep);
    const TestFunction& probe = suite[2];  // x11^2
    const complexd direct = empirical_avg(orbit, rep, probe, orbit.T, true, delta);
    for (int N : Ns) {
        const AnnuliPartition part = partition_annuli(orbit, N, delta);
        std::size_t total = 0;
        for (int jj = 0; jj < N; ++jj) {
            csv << N << ',' << jj << ',' << part.cell_size(jj) << ','
                << format_double(part.M_values[jj]) << '\n';
            total += part.cell_size(jj);
        }
        const complexd partitioned =
            empirical_avg_partitioned(orbit, rep, probe, orbit.T, delta, part);
        json c;
        c["N"] = N;
        c["cells_cover_orbit"] = total == orbit.elements.size();
        c["bit_identical_sum"] = partitioned == direct;
        checks.push_back(c);
    }
    j["checks"] = checks;
    ctx.write("annuli.csv", csv.str());
    ctx.write("annuli.json", j.dump(2) + "\n");
}

}  // namespace

const char* tool_version() { return kVersion; }

std::vector<std::string> run_subcommand(const std::string& name, const RunOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    RunContext ctx{Config::parse_file(opts.config_path), opts, {}, {}};
    std::string out_dir = !opts.out_dir.empty()
                              ? opts.out_dir
                              : ctx.cfg.string_or("run.output_dir", ".");
    ctx.dir = out_dir;

    if (name == "enumerate") run_enumerate(ctx);
    else if (name == "exponent") run_exponent(ctx);
    else if (name == "ps") run_ps(ctx);
    else if (name == "compare") run_compare(ctx);
    else if (name == "marginal") run_marginal(ctx);
    else if (name == "sectors") run_sectors(ctx);
    else if (name == "fejer") run_fejer(ctx);
    else if (name == "annuli") run_annuli(ctx);
    else throw unknown_subcommand_error("unknown subcommand: " + name);

    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    json manifest;
    manifest["tool"] = "fuchsian";
    manifest["version"] = kVersion;
    manifest["subcommand"] = name;
    manifest["config_path"] = opts.config_path;
    manifest["seed"] = ctx.cfg.integer_or("run.seed", 0);
    manifest["workers"] = opts.workers;
    manifest["wall_ms"] = wall.count();
    manifest["config"] = ctx.cfg.raw_text();
    json files = json::array();
    std::vector<std::string> names;
    for (const auto& [fname, hash] : ctx.outputs) {
        char hex[24];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
        files.push_back(json{{"file", fname}, {"fnv1a", hex}});
        names.push_back(fname);
    }
    manifest["outputs"] = files;
    {
        std::ofstream out(ctx.dir / "manifest.json", std::ios::binary);
        out << manifest.dump(2) << "\n";
    }
    return names;
}

}  // namespace fuchsian
