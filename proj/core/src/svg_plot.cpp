#include "loadcast/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "loadcast/error.hpp"

namespace loadcast::plot {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const PlotInput& in, int width, int height) {
    const std::size_t n = in.forecast.size();
    if (n == 0) throw std::invalid_argument("render_svg: nothing to plot");
    if (in.times.size() != n) throw AlignmentError("render_svg: timestamps and forecast differ in length");
    if (!in.actual.empty() && in.actual.size() != n) throw AlignmentError("render_svg: actuals misaligned");
    const bool band = !in.lower.empty() || !in.upper.empty();
    if (band && (in.lower.size() != n || in.upper.size() != n)) throw AlignmentError("render_svg: bounds misaligned");

    double lo = *std::min_element(in.forecast.begin(), in.forecast.end());
    double hi = *std::max_element(in.forecast.begin(), in.forecast.end());
    auto widen = [&](const std::vector<double>& v) {
        if (v.empty()) return;
        lo = std::min(lo, *std::min_element(v.begin(), v.end()));
        hi = std::max(hi, *std::max_element(v.begin(), v.end()));
    };
    widen(in.actual);
    widen(in.lower);
    widen(in.upper);
    if (hi - lo < 1e-9) {
        lo -= 1.0;
        hi += 1.0;
    }

    const double left = 70, right = 20, top = 40, bottom = 50;
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto x = [&](std::size_t i) { return left + (n == 1 ? pw / 2 : pw * static_cast<double>(i) / static_cast<double>(n - 1)); };
    auto y = [&](double v) { return top + ph * (hi - v) / (hi - lo); };
    auto polyline = [&](const std::vector<double>& v) {
        std::string pts;
        for (std::size_t i = 0; i < n; ++i) pts += num(x(i)) + "," + num(y(v[i])) + " ";
        if (!pts.empty()) pts.pop_back();
        return pts;
    };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(left) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" + escape(in.title) + "</text>\n";

    // grid and y labels
    for (int k = 0; k <= 4; ++k) {
        const double v = lo + (hi - lo) * k / 4.0;
        s += "<line x1=\"" + num(left) + "\" x2=\"" + num(left + pw) + "\" y1=\"" + num(y(v)) + "\" y2=\"" + num(y(v)) +
             "\" stroke=\"#ddd\"/>\n";
        s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y(v) + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + num(v) + "</text>\n";
    }
    s += "<text x=\"" + num(left) + "\" y=\"" + num(height - 18.0) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
         escape(format_iso_hour(in.times.front())) + "</text>\n";
    s += "<text x=\"" + num(left + pw) + "\" y=\"" + num(height - 18.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + escape(format_iso_hour(in.times.back())) +
         "</text>\n";

    if (band) {
        std::string pts;
        for (std::size_t i = 0; i < n; ++i) pts += num(x(i)) + "," + num(y(in.upper[i])) + " ";
        for (std::size_t i = n; i-- > 0;) pts += num(x(i)) + "," + num(y(in.lower[i])) + " ";
        pts.pop_back();
        s += "<polygon class=\"interval\" points=\"" + pts + "\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
    }
    if (!in.actual.empty()) {
        s += "<polyline class=\"actual\" points=\"" + polyline(in.actual) +
             "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    }
    s += "<polyline class=\"forecast\" points=\"" + polyline(in.forecast) +
         "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.2\"/>\n";

    // legend
    double lx = left + pw - 220;
    s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<line x1=\"" + num(lx) + "\" x2=\"" + num(lx + 20) + "\" y1=\"20\" y2=\"20\" stroke=\"#d62728\" stroke-width=\"2\"/>";
    s += "<text x=\"" + num(lx + 24) + "\" y=\"24\">forecast</text>\n";
    if (!in.actual.empty()) {
        lx += 90;
        s += "<line x1=\"" + num(lx) + "\" x2=\"" + num(lx + 20) + "\" y1=\"20\" y2=\"20\" stroke=\"#333\" stroke-width=\"2\"/>";
        s += "<text x=\"" + num(lx + 24) + "\" y=\"24\">actual</text>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace loadcast::plot
