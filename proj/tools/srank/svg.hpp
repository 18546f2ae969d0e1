#pragma once

#include <optional>
#include <string>
#include <vector>

#include <sra/nullref.hpp>
#include <sra/types.hpp>

namespace srank {

struct PlotCurve {
    sra::DepthCurve curve;
    std::optional<int> flagged_from;  // depths past this are drawn dashed
};

struct PlotOptions {
    int width = 720;
    int height = 480;
    std::string title;
    std::string y_label = "agreement";
};

/// Renders curves over an optional quantile band as a standalone SVG
/// document. All inputs must share one depth range. Output bytes are a pure
/// function of the inputs.
std::string render_svg(const std::vector<PlotCurve>& curves, const sra::ReferenceBand* band,
                       const PlotOptions& options);

}  // namespace srank
