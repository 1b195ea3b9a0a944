#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qrefine/refine.hpp"

namespace qrefine {

/// log10(error) against solve ordinal, 800x600, decade gridlines. Needs
/// error_vs_truth on the records; zero errors are pinned to the bottom axis.
std::string render_error_decay_svg(const RefinementTrace& trace);

/// Center path for two-variable traces: dashed moves, a marker per level end,
/// and a star at `truth` when given.
std::string render_trajectory_svg(const RefinementTrace& trace, const std::optional<Vector>& truth);

/// Writes the decay plot to `out` and, for n = 2, the trajectory next to it
/// as <stem>_trajectory.svg. Skipped plots are explained on `notices`.
std::vector<std::filesystem::path> emit_plots(const RefinementTrace& trace, const std::optional<Vector>& truth,
                                              const std::filesystem::path& out, std::ostream& notices);

}  // namespace qrefine
