// cli.hpp — scenario presets, CSV output and the `jcfb` command dispatcher

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jcfb/core_types.hpp"
#include "jcfb/models.hpp"

namespace jcfb::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2, kNumericalFailure = 3 };

// Named parameter sets, all with kappa = 1. `t_max` and `tau` are in units
// of 1/kappa. Spectrum presets leave tau open (needs_kappa_tau).
struct Preset {
    std::string name;
    std::string caption;        // parameter statement the preset encodes
    double gamma;
    double kappa;
    double kappa1;
    double tau;
    double phi;
    double t_max;
    int steps_per_delay;
    int modes;                  // mode-sum truncation, 0 = automatic
    std::vector<ModelKind> models;
    bool needs_kappa_tau = false;
};

const std::vector<Preset>& presets();
// nullptr for an unknown name.
const Preset* find_preset(const std::string& name);

// "%.17g"
std::string format_number(double x);

// `# params: ...` line, header `t,re_ce,im_ce,abs2_ce,re_cg,im_cg,abs2_cg,t_over_tau`,
// one row per sample.
void write_trajectory_csv(std::ostream& os, const FeedbackParams& params, ModelKind kind,
                          const Trajectory& trajectory);

struct CsvTable {
    std::vector<std::string> comments;   // lines starting with '#', without the '#'
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Numeric CSV reader for the files written here. Non-numeric cells throw
// std::invalid_argument.
CsvTable read_csv(std::istream& is);

// Full command line, argv[0] included. Returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jcfb::cli
