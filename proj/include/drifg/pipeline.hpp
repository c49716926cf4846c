#ifndef DRIFG_PIPELINE_HPP
#define DRIFG_PIPELINE_HPP

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "drifg/evaluation.hpp"
#include "drifg/io.hpp"
#include "drifg/recovery.hpp"
#include "drifg/scene.hpp"

namespace drifg {

/// Everything a pipeline run needs, parsed from the flat key=value config.
/// Unknown keys are errors; every key has a default.
struct PipelineConfig {
    std::size_t rows = 256;
    std::size_t cols = 256;
    FringeSpec fringe;
    double snr_db = std::numeric_limits<double>::infinity();
    std::size_t alpha_num = 1, alpha_den = 2;
    std::size_t beta_num = 1, beta_den = 2;
    WaveletConfig wavelet;
    RecoveryConfig recovery;
    std::uint64_t seed = 1;
    std::string input;               // for the decimate command
    std::string reference = "truth"; // evaluate reference: truth | conventional
    int coherence_draws = 50;
    std::size_t coherence_rows = 8;
    std::size_t coherence_cols = 8;

    std::string raw_text; // the config file verbatim, echoed into reports
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw config_error("config: bad number for '" + key + "': " + v);
    }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw config_error("config: bad integer for '" + key + "': " + v);
    return out;
}

inline void parse_rational(const std::string& key, const std::string& v,
                           std::size_t& num, std::size_t& den) {
    const auto slash = v.find('/');
    if (slash == std::string::npos) {
        num = parse_u64(key, v);
        den = 1;
        return;
    }
    num = parse_u64(key, v.substr(0, slash));
    den = parse_u64(key, v.substr(slash + 1));
    if (den == 0) throw config_error("config: zero denominator in '" + key + "'");
}

} // namespace detail

inline PipelineConfig parse_pipeline_config(const std::string& text) {
    PipelineConfig cfg;
    cfg.raw_text = text;
    auto kv = parse_config_text(text);

    const std::set<std::string> known = {
        "rows", "cols", "fringe", "ramp_x", "ramp_y", "elev_scale", "hill_count",
        "hill_sigma_frac", "flat_x", "flat_y", "amplitude", "rayleigh_sigma",
        "amplitude_value", "snr_db", "alpha", "beta", "wavelet", "levels",
        "lambda", "max_iters", "step", "rel_tol", "normalize", "seed", "input",
        "reference", "coherence_draws", "coherence_rows", "coherence_cols"};
    for (const auto& [k, v] : kv)
        if (!known.count(k)) throw config_error("config: unknown key '" + k + "'");

    auto get = [&](const char* k) -> std::optional<std::string> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };

    if (auto v = get("rows")) cfg.rows = detail::parse_u64("rows", *v);
    if (auto v = get("cols")) cfg.cols = detail::parse_u64("cols", *v);
    if (auto v = get("fringe")) {
        if (*v == "zero") cfg.fringe.family = FringeFamily::zero;
        else if (*v == "ramp") cfg.fringe.family = FringeFamily::ramp;
        else if (*v == "hills") cfg.fringe.family = FringeFamily::hills;
        else if (*v == "cone") cfg.fringe.family = FringeFamily::cone;
        else throw config_error("config: fringe must be zero|ramp|hills|cone");
    }
    if (auto v = get("ramp_x")) cfg.fringe.ramp_x = detail::parse_double("ramp_x", *v);
    if (auto v = get("ramp_y")) cfg.fringe.ramp_y = detail::parse_double("ramp_y", *v);
    if (auto v = get("elev_scale")) cfg.fringe.elev_scale = detail::parse_double("elev_scale", *v);
    if (auto v = get("hill_count"))
        cfg.fringe.hill_count = static_cast<int>(detail::parse_u64("hill_count", *v));
    if (auto v = get("hill_sigma_frac"))
        cfg.fringe.hill_sigma_frac = detail::parse_double("hill_sigma_frac", *v);
    if (auto v = get("flat_x")) cfg.fringe.flat_x = detail::parse_double("flat_x", *v);
    if (auto v = get("flat_y")) cfg.fringe.flat_y = detail::parse_double("flat_y", *v);
    if (auto v = get("amplitude")) {
        if (*v == "rayleigh") cfg.fringe.amplitude_law = AmplitudeLaw::rayleigh;
        else if (*v == "constant") cfg.fringe.amplitude_law = AmplitudeLaw::constant;
        else throw config_error("config: amplitude must be rayleigh|constant");
    }
    if (auto v = get("rayleigh_sigma"))
        cfg.fringe.rayleigh_sigma = detail::parse_double("rayleigh_sigma", *v);
    if (auto v = get("amplitude_value"))
        cfg.fringe.amplitude_value = detail::parse_double("amplitude_value", *v);
    if (auto v = get("snr_db")) cfg.snr_db = detail::parse_double("snr_db", *v);
    if (auto v = get("alpha")) detail::parse_rational("alpha", *v, cfg.alpha_num, cfg.alpha_den);
    if (auto v = get("beta")) detail::parse_rational("beta", *v, cfg.beta_num, cfg.beta_den);
    if (auto v = get("wavelet")) cfg.wavelet.family = wavelet_family_from_string(*v);
    if (auto v = get("levels"))
        cfg.wavelet.levels = static_cast<int>(detail::parse_u64("levels", *v));
    if (auto v = get("lambda")) cfg.recovery.lambda = detail::parse_double("lambda", *v);
    if (auto v = get("max_iters"))
        cfg.recovery.max_iters = static_cast<int>(detail::parse_u64("max_iters", *v));
    if (auto v = get("step")) cfg.recovery.step = detail::parse_double("step", *v);
    if (auto v = get("rel_tol")) cfg.recovery.rel_tol = detail::parse_double("rel_tol", *v);
    if (auto v = get("normalize")) cfg.recovery.normalize_input = (*v != "0");
    if (auto v = get("seed")) cfg.seed = detail::parse_u64("seed", *v);
    if (auto v = get("input")) cfg.input = *v;
    if (auto v = get("reference")) {
        if (*v != "truth" && *v != "conventional")
            throw config_error("config: reference must be truth|conventional");
        cfg.reference = *v;
    }
    if (auto v = get("coherence_draws"))
        cfg.coherence_draws = static_cast<int>(detail::parse_u64("coherence_draws", *v));
    if (auto v = get("coherence_rows"))
        cfg.coherence_rows = detail::parse_u64("coherence_rows", *v);
    if (auto v = get("coherence_cols"))
        cfg.coherence_cols = detail::parse_u64("coherence_cols", *v);

    cfg.recovery.validate();
    return cfg;
}

namespace detail {

inline std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_report(const std::filesystem::path& path, const std::string& body,
                         const std::string& config_echo) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw dimension_error("cannot open for writing: " + path.string());
    out << body;
    out << "\n[config]\n" << config_echo;
    if (!config_echo.empty() && config_echo.back() != '\n') out << "\n";
}

inline BandSelection band_from(const PipelineConfig& cfg, std::size_t rows, std::size_t cols) {
    return make_band_selection(rows, cols, cfg.alpha_num, cfg.alpha_den,
                               cfg.beta_num, cfg.beta_den);
}

} // namespace detail

/// simulate: generate the scene, form the pair, decimate z2 to the common
/// band, build theta, write everything.
inline void run_simulate(const PipelineConfig& cfg, const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    SceneTruth scene = generate_scene(cfg.rows, cfg.cols, cfg.fringe, cfg.seed);
    auto [z1, z2] = form_image_pair(scene);
    z2 = add_noise(z2, cfg.snr_db, cfg.seed + 1);
    BandSelection band = detail::band_from(cfg, cfg.rows, cfg.cols);
    ComplexImage z2_low = decimate(z2, band);
    ModulationField mod = modulation_from_reference(z1, scene.flat_phase);

    write_complex_image(outdir / "z1.cimg", z1);
    write_complex_image(outdir / "z2.cimg", z2);
    write_complex_image(outdir / "z2_low.cimg", z2_low);
    write_complex_image(outdir / "theta.cimg", mod.theta);
    write_real_field(outdir / "flat_phase.cimg", scene.flat_phase);
    write_real_field(outdir / "elev_phase.cimg", scene.elevation_phase);
    write_real_field(outdir / "speckle_phase.cimg", scene.speckle_phase);
    write_real_field(outdir / "amplitude.cimg", scene.amplitude);

    std::string body;
    body += "command = simulate\n";
    body += "rows = " + std::to_string(cfg.rows) + "\n";
    body += "cols = " + std::to_string(cfg.cols) + "\n";
    body += "reduced_rows = " + std::to_string(band.reduced_rows) + "\n";
    body += "reduced_cols = " + std::to_string(band.reduced_cols) + "\n";
    detail::write_report(outdir / "simulate_report.txt", body, cfg.raw_text);
}

/// decimate: read cfg.input, band-filter and resample, write <out>/decimated.cimg.
inline void run_decimate(const PipelineConfig& cfg, const std::filesystem::path& outdir) {
    if (cfg.input.empty()) throw config_error("decimate: 'input' key is required");
    std::filesystem::create_directories(outdir);
    ComplexImage z = read_complex_image(cfg.input);
    BandSelection band = detail::band_from(cfg, z.rows, z.cols);
    write_complex_image(outdir / "decimated.cimg", decimate(z, band));
}

/// recover: read z2_low + theta, solve the l1 problem, write u, x and the
/// run report. Wall time goes to stdout, not into the deterministic report.
inline RecoveryResult run_recover(const PipelineConfig& cfg, const std::filesystem::path& outdir) {
    ComplexImage z2_low = read_complex_image(outdir / "z2_low.cimg");
    ModulationField mod{read_complex_image(outdir / "theta.cimg")};
    BandSelection band = detail::band_from(cfg, mod.theta.rows, mod.theta.cols);
    if (z2_low.rows != band.reduced_rows || z2_low.cols != band.reduced_cols)
        throw dimension_error("recover: z2_low dims inconsistent with alpha/beta");

    RecoveryResult res = fista_recover(z2_low, mod, band, cfg.wavelet, cfg.recovery);

    write_complex_image(outdir / "u_rec.cimg", res.u);
    write_complex_image(outdir / "x_rec.cimg", res.x.coeffs);

    std::string body;
    body += "command = recover\n";
    body += "iterations = " + std::to_string(res.report.iterations_run) + "\n";
    body += "residual_norm = " + detail::fmt_g17(res.report.residual_norm) + "\n";
    body += "final_sparsity = " + detail::fmt_g17(res.report.final_sparsity) + "\n";
    body += "input_scale = " + detail::fmt_g17(res.report.scale) + "\n";
    body += "objective_trace =";
    for (double v : res.report.objective_trace) body += " " + detail::fmt_g17(v);
    body += "\n";
    detail::write_report(outdir / "recover_report.txt", body, cfg.raw_text);
    return res;
}

struct EvaluateSummary {
    double rrmse = 0.0;
    double wrapped_mean_abs_err = 0.0;
    std::size_t residues_rec = 0;
    std::size_t residues_ref = 0;
};

/// evaluate: compare the recovered interferogram phase with the reference
/// (known truth, or the conventional interferogram for A/B runs), unwrapping
/// both with the same least-squares unwrapper.
inline EvaluateSummary run_evaluate(const PipelineConfig& cfg, const std::filesystem::path& outdir) {
    ComplexImage u_rec = read_complex_image(outdir / "u_rec.cimg");
    PhaseField rec_wrapped = wrapped_phase_of(u_rec);

    PhaseField ref_wrapped;
    if (cfg.reference == "truth") {
        RealField elev = read_real_field(outdir / "elev_phase.cimg");
        RealField w(elev.rows, elev.cols);
        for (std::size_t i = 0; i < elev.data.size(); ++i)
            w.data[i] = wrap_phase(elev.data[i]);
        ref_wrapped = PhaseField{std::move(w), true};
    } else {
        ComplexImage z1 = read_complex_image(outdir / "z1.cimg");
        ComplexImage z2 = read_complex_image(outdir / "z2.cimg");
        RealField flat = read_real_field(outdir / "flat_phase.cimg");
        ComplexImage ifg = remove_flat_earth(conventional_interferogram(z1, z2), flat);
        ref_wrapped = wrapped_phase_of(ifg);
    }
    if (rec_wrapped.values.rows != ref_wrapped.values.rows ||
        rec_wrapped.values.cols != ref_wrapped.values.cols)
        throw dimension_error("evaluate: recovered and reference dims differ");

    EvaluateSummary sum;
    double acc = 0.0;
    for (std::size_t i = 0; i < rec_wrapped.values.data.size(); ++i)
        acc += std::abs(wrap_phase(rec_wrapped.values.data[i] - ref_wrapped.values.data[i]));
    sum.wrapped_mean_abs_err = acc / static_cast<double>(rec_wrapped.values.data.size());

    UnwrapResult rec_unwrapped = unwrap_ls(rec_wrapped);
    UnwrapResult ref_unwrapped = unwrap_ls(ref_wrapped);
    sum.residues_rec = rec_unwrapped.residue_count;
    sum.residues_ref = ref_unwrapped.residue_count;
    sum.rrmse = rrmse_db(rec_unwrapped.phase, ref_unwrapped.phase);

    write_phase_pgm(outdir / "phase_rec.pgm", rec_wrapped.values);
    write_phase_pgm(outdir / "phase_ref.pgm", ref_wrapped.values);
    write_real_pgm_with_sidecar(outdir / "unwrapped_rec.pgm", rec_unwrapped.phase.values);
    write_real_pgm_with_sidecar(outdir / "unwrapped_ref.pgm", ref_unwrapped.phase.values);

    std::string body;
    body += "command = evaluate\n";
    body += "reference = " + cfg.reference + "\n";
    body += "rrmse_db = " + detail::fmt_g17(sum.rrmse) + "\n";
    body += "wrapped_mean_abs_err = " + detail::fmt_g17(sum.wrapped_mean_abs_err) + "\n";
    body += "residues_recovered = " + std::to_string(sum.residues_rec) + "\n";
    body += "residues_reference = " + std::to_string(sum.residues_ref) + "\n";
    detail::write_report(outdir / "evaluate_report.txt", body, cfg.raw_text);
    return sum;
}

struct CoherenceSummary {
    double mean_random = 0.0;
    double max_random = 0.0;
    double coherence_fixed = 0.0; // theta identically 1
};

/// coherence: Monte-Carlo mutual-coherence probe of the dense sensing matrix
/// on a small instance, random speckle theta vs theta identically 1.
inline CoherenceSummary run_coherence(const PipelineConfig& cfg, const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    const std::size_t R = cfg.coherence_rows, C = cfg.coherence_cols;
    BandSelection band = detail::band_from(cfg, R, C);
    WaveletConfig wcfg = cfg.wavelet;
    // small instances cannot carry deep decompositions
    while ((std::size_t{1} << wcfg.levels) > std::min(R, C)) --wcfg.levels;
    if (wcfg.levels < 1) throw config_error("coherence: instance too small for any wavelet level");

    CoherenceSummary sum;
    ModulationField flat_mod{ComplexImage(R, C, cplx{1.0, 0.0})};
    sum.coherence_fixed = mutual_coherence(build_dense_sensing(flat_mod, band, wcfg));

    if (cfg.coherence_draws < 1) throw config_error("coherence: draws must be >= 1");
    double acc = 0.0, worst = 0.0;
    for (int d = 0; d < cfg.coherence_draws; ++d) {
        Rng rng(cfg.seed + static_cast<std::uint64_t>(d));
        ModulationField mod{ComplexImage(R, C)};
        for (cplx& v : mod.theta.data) {
            const double p = rng.uniform_phase();
            v = cplx(std::cos(p), std::sin(p));
        }
        const double mu = mutual_coherence(build_dense_sensing(mod, band, wcfg));
        acc += mu;
        worst = std::max(worst, mu);
    }
    sum.mean_random = acc / cfg.coherence_draws;
    sum.max_random = worst;

    std::string body;
    body += "command = coherence\n";
    body += "instance = " + std::to_string(R) + "x" + std::to_string(C) + "\n";
    body += "draws = " + std::to_string(cfg.coherence_draws) + "\n";
    body += "mean_coherence_random_theta = " + detail::fmt_g17(sum.mean_random) + "\n";
    body += "max_coherence_random_theta = " + detail::fmt_g17(sum.max_random) + "\n";
    body += "coherence_fixed_theta = " + detail::fmt_g17(sum.coherence_fixed) + "\n";
    body += std::string("random_mean_smaller = ") +
            (sum.mean_random < sum.coherence_fixed ? "yes" : "no") + "\n";
    detail::write_report(outdir / "coherence_report.txt", body, cfg.raw_text);
    return sum;
}

} // namespace drifg

#endif
