#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_point.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "atlas/map.hpp"

namespace atlas {

namespace {

namespace bg = boost::geometry;
using Point = bg::model::d2::point_xy<double>;

std::string fmt(double v)
{
    if (std::abs(v) < 5e-4) v = 0.0; // avoid "-0.000"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += ch;
        }
    }
    return out;
}

} // namespace

std::string render_map(const Embedding& emb, std::span<const std::string> labels, const MapStyle& style)
{
    const int n = static_cast<int>(emb.coordinates.size());
    if (static_cast<int>(labels.size()) != n) {
        throw std::invalid_argument("render_map: one label per rule required");
    }
    for (int h : style.highlight) {
        if (h < 0 || h >= n) throw std::invalid_argument("render_map: highlight index out of range");
    }

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (int i = 0; i < n; ++i) {
        const auto& p = emb.coordinates[i];
        if (i == 0 || p[0] < xmin) xmin = p[0];
        if (i == 0 || p[0] > xmax) xmax = p[0];
        if (i == 0 || p[1] < ymin) ymin = p[1];
        if (i == 0 || p[1] > ymax) ymax = p[1];
    }
    double span = std::max(xmax - xmin, ymax - ymin);
    if (span < 1e-12) span = 1.0;
    const double size = style.size;
    const double margin = 0.15 * size;
    const double scale = (size - 2 * margin) / span;
    const double ox = margin + 0.5 * (span - (xmax - xmin)) * scale;
    const double oy = margin + 0.5 * (span - (ymax - ymin)) * scale;
    auto px = [&](int i) { return ox + (emb.coordinates[i][0] - xmin) * scale; };
    auto py = [&](int i) { return size - (oy + (emb.coordinates[i][1] - ymin) * scale); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.size << "\" height=\""
        << style.size << "\" viewBox=\"0 0 " << style.size << ' ' << style.size << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << style.size << "\" height=\"" << style.size
        << "\" fill=\"#ffffff\"/>\n";
    if (!style.title.empty()) {
        out << "  <text x=\"" << fmt(size / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"16\">" << xml_escape(style.title) << "</text>\n";
    }

    if (!style.highlight.empty()) {
        bg::model::multi_point<Point> pts;
        for (int h : style.highlight) pts.emplace_back(px(h), py(h));
        bg::model::polygon<Point> hull;
        bg::convex_hull(pts, hull);
        out << "  <polygon class=\"highlight\" points=\"";
        const auto& ring = hull.outer();
        // The closing vertex repeats the first one.
        const std::size_t count = ring.size() > 1 ? ring.size() - 1 : ring.size();
        for (std::size_t i = 0; i < count; ++i) {
            out << (i ? " " : "") << fmt(ring[i].x()) << ',' << fmt(ring[i].y());
        }
        out << "\" fill=\"#f4cccc\" stroke=\"#f4cccc\" stroke-width=\"28\" stroke-linejoin=\"round\"/>\n";
    }

    for (int i = 0; i < n; ++i) {
        out << "  <circle cx=\"" << fmt(px(i)) << "\" cy=\"" << fmt(py(i))
            << "\" r=\"5\" fill=\"#1f4e79\"/>\n";
        out << "  <text x=\"" << fmt(px(i) + 8) << "\" y=\"" << fmt(py(i) - 6)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(labels[i]) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace atlas
