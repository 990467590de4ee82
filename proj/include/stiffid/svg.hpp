#pragma once

// Minimal deterministic SVG charts: fixed geometry, fixed number formatting,
// no fonts beyond the generic family, so identical inputs give identical bytes.

#include <string>
#include <utility>
#include <vector>

#include "stiffid/center.hpp"
#include "stiffid/identify.hpp"
#include "stiffid/sizing.hpp"

namespace stiffid::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    bool line = true;
    bool markers = false;
    bool dashed = false;
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    bool equal_aspect = false;
};

/// Grid of panels, `columns` wide, each 360 x 280 px.
std::string render(const std::vector<Panel>& panels, int columns, const std::string& title);

/// Charge, discharge, midpoints and midline of each twist component of one case.
std::string fit_plot(const CaseReduction& c);

/// Lines, M points, normals and CR projected on xy, yz and xz.
std::string center_plot(const CenterMeasurement& m, const CenterSolution& s);

/// Deflection and stiffness against fixture length.
std::string sweep_plot(const std::vector<SweepRow>& rows);

}  // namespace stiffid::svg
