#include "systolic/svg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace systolic {

namespace {

constexpr double kMargin = 30.0;
const double kRowHeight = kSvgUnit * std::sqrt(3.0) / 2.0;

struct Frame {
    double left = 0;  // pixel offset of the scene
    double minX = 0;
    int minRow = 0;
    double width = 0, height = 0;

    double px(double x) const { return left + kMargin + (x - minX) * kSvgUnit; }
    double py(double row) const { return kMargin + (row - minRow) * kRowHeight; }
};

Frame frameFor(const SvgScene& s, double left) {
    Frame f;
    f.left = left;
    double maxX = 0;
    int maxRow = 0;
    bool first = true;
    for (const auto& [v, p] : s.embedding) {
        const double x = toDouble(p.x);
        if (first || x < f.minX) f.minX = x;
        if (first || x > maxX) maxX = x;
        if (first || p.row < f.minRow) f.minRow = p.row;
        if (first || p.row > maxRow) maxRow = p.row;
        first = false;
    }
    f.width = (maxX - f.minX) * kSvgUnit + 2 * kMargin;
    f.height = (maxRow - f.minRow) * kRowHeight + 2 * kMargin;
    return f;
}

}  // namespace

std::string renderSvg(const std::vector<SvgScene>& scenes) {
    std::vector<Frame> frames;
    double left = 0, height = 2 * kMargin;
    for (const auto& s : scenes) {
        frames.push_back(frameFor(s, left));
        left += frames.back().width;
        height = std::max(height, frames.back().height);
    }
    const double width = std::max(left, 2 * kMargin);
    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.2f}\" height=\"{:.2f}\" viewBox=\"0 0 {:.2f} {:.2f}\">\n",
        width, height, width, height);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < scenes.size(); ++i) {
        const SvgScene& s = scenes[i];
        const Frame& f = frames[i];
        out += fmt::format("<g id=\"scene{}\">\n", i);
        if (!s.title.empty())
            out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\">{}</text>\n", f.px(f.minX),
                               kMargin / 2, s.title);
        auto pos = [&](VertexId v) {
            const LatticePoint& p = s.embedding.at(v);
            return std::make_pair(f.px(toDouble(p.x)), f.py(p.row));
        };
        for (const Simplex& t : s.disc->triangles()) {
            auto [ax, ay] = pos(t.vertices()[0]);
            auto [bx, by] = pos(t.vertices()[1]);
            auto [cx, cy] = pos(t.vertices()[2]);
            out += fmt::format("<polygon points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" fill=\"#eef3fb\"/>\n", ax,
                               ay, bx, by, cx, cy);
        }
        for (const auto& [a, b] : s.disc->edges()) {
            auto [ax, ay] = pos(a);
            auto [bx, by] = pos(b);
            out += fmt::format(
                "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#8a9bb5\" stroke-width=\"1\"/>\n",
                ax, ay, bx, by);
        }
        for (const auto& line : s.paths) {
            std::string pts;
            for (int r = line.path.firstRow; r <= line.path.lastRow(); ++r) {
                if (!pts.empty()) pts += ' ';
                pts += fmt::format("{:.2f},{:.2f}", f.px(toDouble(line.path.at(r))), f.py(r));
            }
            out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2.5\"/>\n", pts,
                               line.stroke);
        }
        for (const auto& [v, p] : s.embedding) {
            auto [x, y] = pos(v);
            const bool hi = std::binary_search(s.highlighted.begin(), s.highlighted.end(), v);
            out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{}\" fill=\"{}\"/>\n", x, y, hi ? 6 : 4,
                               hi ? "#d1495b" : "#2e4057");
            out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\">{}</text>\n", x + 5, y - 5, v);
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace systolic
