#ifndef RWLAB_RUNNER_HPP
#define RWLAB_RUNNER_HPP

#include "rwlab/config.hpp"
#include "rwlab/report.hpp"

#include <string>
#include <vector>

namespace rwlab {

std::string_view code_version();

/// Computes the experiment; nothing touches the disk.
ReportRecord execute(const RunConfig& config);

/// Plot for a finished record, or an empty spec when the experiment has none.
PlotSpec plot_for(const ReportRecord& record);

struct RunOutput {
  ReportRecord record;
  std::vector<std::string> files;
};

/// execute() then write <experiment>.csv, .json and (with plot) .svg into
/// config.out_dir. Files written before a failure are removed.
RunOutput run(const RunConfig& config);

} // namespace rwlab

#endif
