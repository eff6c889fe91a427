#pragma once

#include <map>
#include <string>
#include <vector>

#include "systolic/complex.hpp"
#include "systolic/flatgeom.hpp"

namespace systolic {

struct SvgPolyline {
    PolyPath path;
    std::string stroke;
};

/// A flat disc with its lattice positions, paths drawn over it and vertices
/// to emphasise.
struct SvgScene {
    const FlagComplex* disc = nullptr;
    std::map<VertexId, LatticePoint> embedding;
    std::vector<SvgPolyline> paths;
    VertexSet highlighted;
    std::string title;
};

inline constexpr double kSvgUnit = 40.0;

/// Scenes are laid out left to right. Unit triangle side 40px, the first row
/// of each scene on top, all numbers printed with two decimals.
std::string renderSvg(const std::vector<SvgScene>& scenes);

}  // namespace systolic
