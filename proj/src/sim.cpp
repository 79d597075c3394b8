// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "nonlocal/classic_schemes.hpp"
#include "nonlocal/diagnostics.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/twopop.hpp"

namespace nonlocal {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto t = trim(text);
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + std::string(t) + "'");
    return v;
}

std::uint64_t to_u64(std::string_view key, std::string_view text) {
    std::uint64_t v = 0;
    const auto t = trim(text);
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
        throw ConfigError("key '" + std::string(key) + "': expected a non-negative integer, got '" + std::string(t) + "'");
    return v;
}

template <class E>
E to_enum(std::string_view key, std::string_view text, std::initializer_list<std::pair<std::string_view, E>> options) {
    for (const auto& [name, value] : options)
        if (text == name) return value;
    std::string allowed;
    for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : "|") + std::string(name);
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) + "' is not one of " + allowed);
}

const char* name_of(SchemeKind s) {
    switch (s) {
        case SchemeKind::fd: return "fd";
        case SchemeKind::fv: return "fv";
        case SchemeKind::fem: return "fem";
    }
    return "?";
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

SimConfig SimConfig::parse(std::string_view text) {
    SimConfig c;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (!seen.insert(std::string(key)).second) throw ConfigError("key '" + std::string(key) + "' given twice");

        if (key == "model") c.model = to_enum<ModelKind>(key, value, {{"single", ModelKind::single}, {"two", ModelKind::two}});
        else if (key == "dim") {
            const auto d = to_u64(key, value);
            if (d != 1 && d != 2) throw ConfigError("key 'dim': must be 1 or 2");
            c.dim = static_cast<int>(d);
        } else if (key == "scheme") c.scheme = to_enum<SchemeKind>(key, value, {{"fd", SchemeKind::fd}, {"fv", SchemeKind::fv}, {"fem", SchemeKind::fem}});
        else if (key == "advection")
            c.advection = to_enum<AdvectionTreatment>(key, value, {{"semi_implicit", AdvectionTreatment::semi_implicit},
                                                                   {"explicit", AdvectionTreatment::explicit_transport}});
        else if (key == "fem_weights")
            c.fem_weights = to_enum<FemAdvectionWeights>(key, value, {{"conservative", FemAdvectionWeights::conservative},
                                                                      {"row_weighted", FemAdvectionWeights::row_weighted}});
        else if (key == "kernel_method")
            c.kernel_method = to_enum<KernelMethod>(key, value, {{"fft", KernelMethod::fft}, {"trapezoid", KernelMethod::trapezoid},
                                                                 {"direct", KernelMethod::direct}});
        else if (key == "kernel_weight")
            c.kernel_weight = to_enum<KernelWeight>(key, value, {{"unit", KernelWeight::unit}, {"ball", KernelWeight::ball}});
        else if (key == "mesh_split")
            c.split = to_enum<DiagonalSplit>(key, value, {{"uniform", DiagonalSplit::uniform}, {"alternating", DiagonalSplit::alternating}});
        else if (key == "ic")
            c.ic = to_enum<InitialCondition>(key, value, {{"perturbed_constant", InitialCondition::perturbed_constant},
                                                          {"gaussian_sum", InitialCondition::gaussian_sum}});
        else if (key == "ic_base") c.ic_base = to_double(key, value);
        else if (key == "ic_amplitude") c.ic_amplitude = to_double(key, value);
        else if (key == "D") c.D = to_double(key, value);
        else if (key == "alpha") c.alpha = to_double(key, value);
        else if (key == "Su") c.Su = to_double(key, value);
        else if (key == "Sv") c.Sv = to_double(key, value);
        else if (key == "C") c.C = to_double(key, value);
        else if (key == "r") c.r = to_double(key, value);
        else if (key == "L") c.L = to_double(key, value);
        else if (key == "N") c.N = to_u64(key, value);
        else if (key == "tau") c.tau = to_double(key, value);
        else if (key == "t_end") c.t_end = to_double(key, value);
        else if (key == "seed") c.seed = to_u64(key, value);
        else if (key == "solver_tol") c.solver_tol = to_double(key, value);
        else if (key == "diagnostics_stride") c.diagnostics_stride = to_u64(key, value);
        else if (key == "oscillation_warmup") c.oscillation_warmup = to_double(key, value);
        else if (key == "output") c.output = std::string(value);
        else if (key == "snapshot_times") {
            std::string_view rest = value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                c.snapshot_times.push_back(to_double(key, rest.substr(0, comma)));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
        } else throw ConfigError("unknown key '" + std::string(key) + "'");
    }

    const bool two = c.model == ModelKind::two;
    if (two && seen.count("alpha")) throw ConfigError("key 'alpha' does not apply to model = two (use Su, Sv, C)");
    for (const char* k : {"Su", "Sv", "C"})
        if (!two && seen.count(k)) throw ConfigError(std::string("key '") + k + "' requires model = two");
    c.validate();
    return c;
}

SimConfig SimConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void SimConfig::validate() const {
    const bool two = model == ModelKind::two;
    const std::string ctx = std::string("model = ") + (two ? "two" : "single") + ", dim = " + std::to_string(dim);
    if (scheme != SchemeKind::fem && (dim != 1 || two))
        throw ConfigError(std::string("scheme = ") + name_of(scheme) + " is only available for model = single, dim = 1 (got " + ctx + ")");
    if (advection == AdvectionTreatment::explicit_transport && (scheme != SchemeKind::fem || dim != 1 || two))
        throw ConfigError("advection = explicit requires scheme = fem, model = single, dim = 1");
    if (kernel_method == KernelMethod::trapezoid && (dim != 1 || two))
        throw ConfigError("kernel_method = trapezoid requires model = single, dim = 1 (got " + ctx + ")");
    if (kernel_method == KernelMethod::direct && N > 128)
        throw ConfigError("kernel_method = direct is limited to N <= 128");
    if (kernel_weight && dim != 2) throw ConfigError("kernel_weight applies to dim = 2 only");
    if (split != DiagonalSplit::uniform && dim != 2) throw ConfigError("mesh_split applies to dim = 2 only");
    if (fem_weights != FemAdvectionWeights::conservative && (scheme != SchemeKind::fem || dim != 1))
        throw ConfigError("fem_weights applies to scheme = fem, dim = 1 only");
    if (ic == InitialCondition::gaussian_sum && (dim != 1 || two))
        throw ConfigError("ic = gaussian_sum requires model = single, dim = 1");
    if (ic_amplitude < 0.0) throw ConfigError("ic_amplitude must be >= 0");
    if (!(solver_tol > 0.0)) throw ConfigError("solver_tol must be > 0");
    if (diagnostics_stride == 0) throw ConfigError("diagnostics_stride must be >= 1");
    if (dim == 2 && N < 4) throw ConfigError("N must be >= 4 in 2D");

    if (two) twopop_params().validate();
    else model_params().validate();

    const double steps = t_end / tau;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        throw ConfigError("t_end must be a multiple of tau");
    for (double t : snapshot_times) {
        if (t < 0.0 || t > t_end * (1.0 + 1e-12))
            throw ConfigError("snapshot_times: " + fmt17(t) + " outside [0, t_end]");
        const double s = t / tau;
        if (std::abs(s - std::round(s)) > 1e-9 * std::max(1.0, s))
            throw ConfigError("snapshot_times: " + fmt17(t) + " is not a multiple of tau");
    }
    for (std::size_t i = 1; i < snapshot_times.size(); ++i)
        if (!(snapshot_times[i] > snapshot_times[i - 1])) throw ConfigError("snapshot_times must be strictly increasing");
}

KernelWeight SimConfig::effective_kernel_weight() const {
    if (kernel_weight) return *kernel_weight;
    return model == ModelKind::two ? KernelWeight::ball : KernelWeight::unit;
}

double SimConfig::effective_oscillation_warmup() const {
    if (oscillation_warmup) return *oscillation_warmup;
    return ic == InitialCondition::perturbed_constant && ic_amplitude > 0.0 ? 0.1 : 0.0;
}

ModelParams SimConfig::model_params() const { return {D, alpha, r, L, N, tau, t_end, seed}; }

TwoPopParams SimConfig::twopop_params() const { return {D, Su, Sv, C, r, L, N, tau, t_end, seed}; }

std::size_t SimConfig::total_steps() const { return static_cast<std::size_t>(std::llround(t_end / tau)); }

std::size_t SimConfig::step_of(double t) const { return static_cast<std::size_t>(std::llround(t / tau)); }

std::string snapshot_name(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snap_t%.6g.csv", t);
    return buf;
}

// ---------------------------------------------------------------------------
// Simulation state

namespace {

/// Oscillation flag for one profile: 1D report directly, 2D via every grid line.
bool oscillatory(std::span<const double> u, int dim, std::size_t n) {
    if (dim == 1) return is_oscillatory(oscillation_report(u));
    std::vector<double> line(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) line[i] = u[j * n + i];
        if (is_oscillatory(oscillation_report(line))) return true;
        for (std::size_t i = 0; i < n; ++i) line[i] = u[i * n + j];
        if (is_oscillatory(oscillation_report(line))) return true;
    }
    return false;
}

void require_finite(std::span<const double> u, std::size_t step) {
    for (double x : u)
        if (!std::isfinite(x)) throw SolverError("non-finite density after step " + std::to_string(step));
}

/// Owns the fields and the per-run operators of one configuration.
class Simulation {
public:
    explicit Simulation(const SimConfig& c) : c_(c) {
        const bool two = c.model == ModelKind::two;
        if (c.dim == 1) {
            g1_ = std::make_unique<PeriodicGrid1D>(c.L, c.N);
            op1_ = std::make_unique<NonlocalOperator1D>(*g1_, c.r, c.kernel_method);
            if (c.ic == InitialCondition::gaussian_sum) u1_ = std::make_unique<Field1D>(gaussian_sum_ic(*g1_));
            else u1_ = std::make_unique<Field1D>(perturbed_constant_ic(*g1_, c.ic_base, c.ic_amplitude, c.seed));
            if (two) v1_ = std::make_unique<Field1D>(perturbed_constant_ic(*g1_, c.ic_base, c.ic_amplitude, c.seed + 1));
        } else {
            g2_ = std::make_unique<PeriodicGrid2D>(c.L, c.N);
            op2_ = std::make_unique<NonlocalOperator2D>(*g2_, c.r, c.kernel_method, c.effective_kernel_weight());
            stepper_ = std::make_unique<Fem2DStepper>(*g2_, FemParams2D{c.D, c.tau, c.solver_tol}, c.split);
            u2_ = std::make_unique<Field2D>(perturbed_constant_ic(*g2_, c.ic_base, c.ic_amplitude, c.seed));
            if (two) v2_ = std::make_unique<Field2D>(perturbed_constant_ic(*g2_, c.ic_base, c.ic_amplitude, c.seed + 1));
        }
    }

    void step() {
        ++steps_;
        if (c_.dim == 1) {
            if (v1_) {
                auto [u, v] = twopop_step(*u1_, *v1_, *op1_, c_.twopop_params());
                *u1_ = std::move(u);
                *v1_ = std::move(v);
            } else {
                const auto K = op1_->compute(*u1_, c_.alpha);
                *u1_ = step_single_1d(K);
            }
        } else {
            if (v2_) {
                auto [u, v] = twopop_step(*u2_, *v2_, *op2_, *stepper_, c_.twopop_params());
                *u2_ = std::move(u);
                *v2_ = std::move(v);
            } else {
                *u2_ = stepper_->step(*u2_, op2_->compute(*u2_, c_.alpha));
            }
        }
        require_finite(u(), steps_);
        if (two()) require_finite(v(), steps_);
    }

    bool two() const { return v1_ || v2_; }
    std::span<const double> u() const { return u1_ ? u1_->view() : u2_->view(); }
    std::span<const double> v() const { return v1_ ? v1_->view() : (v2_ ? v2_->view() : std::span<const double>{}); }
    double time() const { return static_cast<double>(steps_) * c_.tau; }

    double mass(std::span<const double> f) const {
        double s = 0.0;
        for (double x : f) s += x;
        const double h = g1_ ? g1_->spacing() : g2_->spacing();
        return s * (g1_ ? h : h * h);
    }

    DiagnosticsRow diagnostics() const {
        DiagnosticsRow row;
        row.time = time();
        const std::span<const double> fields[2] = {u(), v()};
        for (int s = 0; s < (two() ? 2 : 1); ++s) {
            row.mass[s] = mass(fields[s]);
            row.min[s] = *std::min_element(fields[s].begin(), fields[s].end());
            row.max[s] = *std::max_element(fields[s].begin(), fields[s].end());
            row.oscillatory = row.oscillatory || oscillatory(fields[s], c_.dim, c_.N);
        }
        row.similarity = two() ? cosine_similarity(u(), v()) : std::numeric_limits<double>::quiet_NaN();
        return row;
    }

    void write_snapshot(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + path.string() + "'");
        const auto uu = u();
        const auto vv = v();
        if (g1_) {
            out << (two() ? "x,u,v\n" : "x,u\n");
            for (std::size_t i = 0; i < uu.size(); ++i) {
                out << fmt17(g1_->x(i)) << ',' << fmt17(uu[i]);
                if (two()) out << ',' << fmt17(vv[i]);
                out << '\n';
            }
        } else {
            out << (two() ? "x,y,u,v\n" : "x,y,u\n");
            const std::size_t n = g2_->cells_per_axis();
            for (std::size_t iy = 0; iy < n; ++iy) {
                for (std::size_t ix = 0; ix < n; ++ix) {
                    const std::size_t k = iy * n + ix;
                    out << fmt17(g2_->coord(ix)) << ',' << fmt17(g2_->coord(iy)) << ',' << fmt17(uu[k]);
                    if (two()) out << ',' << fmt17(vv[k]);
                    out << '\n';
                }
            }
        }
        if (!out) throw ConfigError("failed writing '" + path.string() + "'");
    }

private:
    Field1D step_single_1d(std::span<const double> K) const {
        const double h = g1_->spacing();
        switch (c_.scheme) {
            case SchemeKind::fd: return fd_step(*u1_, K, SchemeCoefficients::make(c_.D, c_.tau, h));
            case SchemeKind::fv: return fv_step(*u1_, K, SchemeCoefficients::make(c_.D, c_.tau, h));
            case SchemeKind::fem: break;
        }
        const FemParams1D p{c_.D, c_.tau, c_.fem_weights};
        return c_.advection == AdvectionTreatment::explicit_transport ? fem_step_explicit(*u1_, K, p) : fem_step(*u1_, K, p);
    }

    SimConfig c_;
    std::size_t steps_ = 0;
    std::unique_ptr<PeriodicGrid1D> g1_;
    std::unique_ptr<PeriodicGrid2D> g2_;
    std::unique_ptr<NonlocalOperator1D> op1_;
    std::unique_ptr<NonlocalOperator2D> op2_;
    std::unique_ptr<Fem2DStepper> stepper_;
    std::unique_ptr<Field1D> u1_, v1_;
    std::unique_ptr<Field2D> u2_, v2_;
};

void write_diagnostics(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows, bool two) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << (two ? "time,mass_u,mass_v,min_u,min_v,max_u,max_v,oscillatory,similarity\n"
                : "time,mass_u,min_u,max_u,oscillatory\n");
    for (const auto& r : rows) {
        out << fmt17(r.time) << ',' << fmt17(r.mass[0]);
        if (two) out << ',' << fmt17(r.mass[1]);
        out << ',' << fmt17(r.min[0]);
        if (two) out << ',' << fmt17(r.min[1]);
        out << ',' << fmt17(r.max[0]);
        if (two) out << ',' << fmt17(r.max[1]);
        out << ',' << (r.oscillatory ? 1 : 0);
        if (two) out << ',' << fmt17(r.similarity);
        out << '\n';
    }
}

}  // namespace

RunResult run(const SimConfig& config, std::ostream* log) {
    config.validate();
    std::filesystem::create_directories(config.output);
    Simulation sim(config);

    RunResult result;
    result.diagnostics = config.output / "diagnostics.csv";
    std::map<std::size_t, double> snaps;
    for (double t : config.snapshot_times) snaps[config.step_of(t)] = t;

    const std::size_t total = config.total_steps();
    auto record = [&](std::size_t n) {
        const auto it = snaps.find(n);
        const bool on_stride = n % config.diagnostics_stride == 0 || n == total;
        if (it == snaps.end() && !on_stride) return;
        result.rows.push_back(sim.diagnostics());
        if (it != snaps.end()) {
            const auto path = config.output / snapshot_name(it->second);
            sim.write_snapshot(path);
            result.snapshots.push_back(path);
            if (log) *log << "t = " << it->second << "  wrote " << path.filename().string() << '\n';
        }
    };

    try {
        record(0);
        for (std::size_t n = 1; n <= total; ++n) {
            sim.step();
            record(n);
        }
    } catch (const SolverError&) {
        write_diagnostics(result.diagnostics, result.rows, sim.two());
        throw;
    }
    write_diagnostics(result.diagnostics, result.rows, sim.two());
    return result;
}

// ---------------------------------------------------------------------------

std::filesystem::path compare_schemes(const SimConfig& config, const std::vector<std::string>& schemes,
                                      std::ostream* log) {
    if (config.model != ModelKind::single || config.dim != 1)
        throw ConfigError("compare_schemes requires model = single, dim = 1");
    if (schemes.empty()) throw ConfigError("compare_schemes: empty scheme list");

    std::vector<std::unique_ptr<Simulation>> sims;
    for (const auto& name : schemes) {
        SimConfig c = config;
        c.advection = AdvectionTreatment::semi_implicit;
        if (name == "fd") c.scheme = SchemeKind::fd;
        else if (name == "fv") c.scheme = SchemeKind::fv;
        else if (name == "fem") c.scheme = SchemeKind::fem;
        else if (name == "fem_explicit") {
            c.scheme = SchemeKind::fem;
            c.advection = AdvectionTreatment::explicit_transport;
        } else throw ConfigError("compare: unknown scheme '" + name + "' (fd|fv|fem|fem_explicit)");
        if (c.scheme != SchemeKind::fem) c.fem_weights = FemAdvectionWeights::conservative;
        c.validate();
        sims.push_back(std::make_unique<Simulation>(c));
    }

    std::filesystem::create_directories(config.output);
    const auto path = config.output / "comparison.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << "time,scheme_a,scheme_b,rel_l2,rel_linf,oscillatory_a,oscillatory_b\n";

    const double warmup = config.effective_oscillation_warmup();
    std::vector<char> flagged(sims.size(), 0);
    std::map<std::size_t, double> snaps;
    for (double t : config.snapshot_times) snaps[config.step_of(t)] = t;
    const std::size_t total = config.total_steps();
    for (std::size_t n = 0; n <= total; ++n) {
        if (n > 0)
            for (auto& s : sims) s->step();
        const double t = static_cast<double>(n) * config.tau;
        if (n > 0 && t >= warmup - 1e-12)
            for (std::size_t k = 0; k < sims.size(); ++k)
                flagged[k] = flagged[k] || is_oscillatory(oscillation_report(sims[k]->u()));
        const auto it = snaps.find(n);
        if (it == snaps.end()) continue;
        for (std::size_t a = 0; a < sims.size(); ++a) {
            for (std::size_t b = a; b < sims.size(); ++b) {
                out << fmt17(it->second) << ',' << schemes[a] << ',' << schemes[b] << ','
                    << fmt17(relative_l2(sims[a]->u(), sims[b]->u())) << ','
                    << fmt17(relative_linf(sims[a]->u(), sims[b]->u())) << ',' << int(flagged[a]) << ','
                    << int(flagged[b]) << '\n';
            }
        }
        if (log) *log << "t = " << it->second << "  compared " << sims.size() << " schemes\n";
    }
    out.flush();
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
    return path;
}

}  // namespace nonlocal
