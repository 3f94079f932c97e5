#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gkp/error_analysis.hpp"
#include "gkp/lithography.hpp"
#include "gkp/physical_model.hpp"
#include "gkp/spectral.hpp"

// Deterministic flat-file export: CSV with 17-significant-digit floats, LF
// newlines, '#'-prefixed provenance header lines; JSON mirrors of the record
// and report types.

namespace gkp::io {

// Shortest-exact would not be deterministic across libraries; %.16e always
// carries 17 significant digits.
std::string format_float(double v);

void write_wavefunction_csv(const std::string& path,
                            const lith::SampledWaveFunction& wf,
                            const std::vector<std::string>& provenance);
void write_spectrum_csv(const std::string& path, const spec::MomentumSpectrum& sp,
                        const std::vector<std::string>& provenance);
void write_outcomes_csv(const std::string& path, const std::vector<double>& samples,
                        const std::vector<std::string>& provenance);
void write_sweep_csv(const std::string& path, const std::vector<err::SweepRow>& rows,
                     const std::vector<std::string>& provenance);

nlohmann::json record_json(const lith::GenerationRecord& rec);
nlohmann::json report_json(const err::IntrinsicErrorReport& rep);
nlohmann::json feasibility_json(const phys::PhysicalSetup& setup,
                                const phys::FeasibilityReport& feas);

void write_json(const std::string& path, const nlohmann::json& j,
                const std::vector<std::string>& provenance);

}  // namespace gkp::io
