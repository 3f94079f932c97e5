#include "gkp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gkp::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF on every platform
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void put_provenance(std::ofstream& out, const std::vector<std::string>& lines) {
    for (const auto& l : lines) out << "# " << l << "\n";
}

}  // namespace

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_wavefunction_csv(const std::string& path,
                            const lith::SampledWaveFunction& wf,
                            const std::vector<std::string>& provenance) {
    auto out = open_out(path);
    put_provenance(out, provenance);
    out << "y,re,im,abs2,phase\n";
    for (std::size_t i = 0; i < wf.size(); ++i) {
        const auto a = wf.amps[i];
        out << format_float(wf.y_at(i)) << ',' << format_float(a.real()) << ','
            << format_float(a.imag()) << ',' << format_float(std::norm(a)) << ','
            << format_float(std::arg(a)) << "\n";
    }
}

void write_spectrum_csv(const std::string& path, const spec::MomentumSpectrum& sp,
                        const std::vector<std::string>& provenance) {
    auto out = open_out(path);
    put_provenance(out, provenance);
    out << "p,re,im,abs2\n";
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const auto a = sp.psi[i];
        out << format_float(sp.p[i]) << ',' << format_float(a.real()) << ','
            << format_float(a.imag()) << ',' << format_float(std::norm(a)) << "\n";
    }
}

void write_outcomes_csv(const std::string& path, const std::vector<double>& samples,
                        const std::vector<std::string>& provenance) {
    auto out = open_out(path);
    put_provenance(out, provenance);
    out << "x0\n";
    for (double s : samples) out << format_float(s) << "\n";
}

void write_sweep_csv(const std::string& path, const std::vector<err::SweepRow>& rows,
                     const std::vector<std::string>& provenance) {
    auto out = open_out(path);
    put_provenance(out, provenance);
    out << "g0,alpha,d,t,Px,Pp_plus,Pp_minus,Pplus_bound,Pminus_bound,Pmax,feasible\n";
    for (const auto& r : rows) {
        out << format_float(r.g0) << ',' << format_float(r.alpha) << ',' << r.d << ','
            << format_float(r.interaction_time) << ',' << format_float(r.report.px)
            << ',' << format_float(r.report.pp_plus) << ','
            << format_float(r.report.pp_minus) << ','
            << format_float(r.report.plus_bound) << ','
            << format_float(r.report.minus_bound) << ','
            << format_float(r.report.p_max) << ',' << (r.feasible ? 1 : 0) << "\n";
    }
}

nlohmann::json record_json(const lith::GenerationRecord& rec) {
    return nlohmann::json{{"alpha", rec.alpha},
                          {"d", rec.d},
                          {"x0", rec.x0},
                          {"N", rec.normalization},
                          {"J", rec.j_value},
                          {"pdf_at_x0", rec.pdf_at_x0},
                          {"grid_points", rec.grid_points},
                          {"dy", rec.dy}};
}

nlohmann::json report_json(const err::IntrinsicErrorReport& rep) {
    return nlohmann::json{{"Px", rep.px},
                          {"Pp_plus", rep.pp_plus},
                          {"Pp_minus", rep.pp_minus},
                          {"Pplus_bound", rep.plus_bound},
                          {"Pminus_bound", rep.minus_bound},
                          {"Pmax", rep.p_max},
                          {"n_max", rep.n_max},
                          {"tail_estimate", rep.tail_estimate},
                          {"quad_rel_tol", rep.quad_rel_tol},
                          {"overlap_01_re", rep.overlap_01.real()},
                          {"overlap_01_im", rep.overlap_01.imag()},
                          {"N_plus_sq", rep.n_plus_sq},
                          {"N_minus_sq", rep.n_minus_sq},
                          {"momentum_route", rep.momentum_route},
                          {"plus_dominated", rep.plus_dominated},
                          {"minus_dominated", rep.minus_dominated}};
}

nlohmann::json feasibility_json(const phys::PhysicalSetup& setup,
                                const phys::FeasibilityReport& feas) {
    return nlohmann::json{{"species", setup.species.label},
                          {"g0", setup.coupling_g0},
                          {"w0", setup.waist},
                          {"alpha", setup.alpha},
                          {"d", setup.half_wave_count},
                          {"D", setup.calibration_d},
                          {"t", setup.interaction_time},
                          {"detuning", setup.detuning},
                          {"velocity", setup.velocity},
                          {"mode_volume", setup.mode_volume},
                          {"t_lower", feas.t_lower},
                          {"t_upper", feas.t_upper},
                          {"raman_nath_ok", feas.raman_nath_ok},
                          {"large_detuning_ok", feas.large_detuning_ok},
                          {"margin_lower", feas.margin_lower},
                          {"margin_upper", feas.margin_upper},
                          {"note", feas.note}};
}

void write_json(const std::string& path, const nlohmann::json& j,
                const std::vector<std::string>& provenance) {
    nlohmann::json wrapped = j;
    if (!provenance.empty()) wrapped["provenance"] = provenance;
    auto out = open_out(path);
    out << wrapped.dump(2) << "\n";
}

}  // namespace gkp::io
