#include "reactline/svg.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "reactline/text.hpp"

namespace reactline {

namespace {

// Fixed two-decimal pixel coordinates: locale-independent and stable, and
// identical inputs (a 100% rate and the top gridline) produce identical text.
std::string px(double v) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_spectrum_svg(const std::vector<SpectrumPoint>& points,
                                const SvgOptions& options) {
  if (points.empty()) throw std::invalid_argument("cannot plot an empty spectrum");

  const double w = options.width;
  const double h = options.height;
  const double left = 64.0, right = 24.0, top = 44.0, bottom = 56.0;
  const double plot_w = w - left - right;
  const double plot_h = h - top - bottom;

  double s0 = points.front().span_m, s1 = points.front().span_m;
  for (const SpectrumPoint& p : points) {
    s0 = std::min(s0, p.span_m);
    s1 = std::max(s1, p.span_m);
  }
  auto x_of = [&](double span) {
    if (s1 == s0) return left + plot_w / 2.0;
    return left + (span - s0) / (s1 - s0) * plot_w;
  };
  auto y_of = [&](double rate) {
    double r = std::clamp(rate, 0.0, 100.0);
    return top + (100.0 - r) / 100.0 * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << " "
      << options.height << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\""
      << options.height << "\" fill=\"#ffffff\"/>\n";
  out << "  <text x=\"" << px(w / 2.0)
      << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape_xml(options.title) << "</text>\n";

  for (int r = 0; r <= 100; r += 25) {
    std::string y = px(y_of(r));
    out << "  <line x1=\"" << px(left) << "\" y1=\"" << y << "\" x2=\"" << px(left + plot_w)
        << "\" y2=\"" << y << "\" stroke=\"#d0d0d0\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << px(left - 8.0) << "\" y=\"" << px(y_of(r) + 4.0)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << r
        << "</text>\n";
  }

  const int x_ticks = 5;
  for (int i = 0; i <= x_ticks; ++i) {
    double span = s0 + (s1 - s0) * i / x_ticks;
    std::string x = px(x_of(span));
    out << "  <line x1=\"" << x << "\" y1=\"" << px(top + plot_h) << "\" x2=\"" << x
        << "\" y2=\"" << px(top + plot_h + 5.0) << "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << x << "\" y=\"" << px(top + plot_h + 18.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(span) << "</text>\n";
  }

  out << "  <line x1=\"" << px(left) << "\" y1=\"" << px(top) << "\" x2=\"" << px(left)
      << "\" y2=\"" << px(top + plot_h) << "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
  out << "  <line x1=\"" << px(left) << "\" y1=\"" << px(top + plot_h) << "\" x2=\""
      << px(left + plot_w) << "\" y2=\"" << px(top + plot_h)
      << "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";

  out << "  <text x=\"" << px(left + plot_w / 2.0) << "\" y=\"" << px(h - 12.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">span (m)"
      << "</text>\n";
  out << "  <text x=\"16\" y=\"" << px(top + plot_h / 2.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << px(top + plot_h / 2.0)
      << ")\">exceedance rate (%)</text>\n";

  out << "  <polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) out << " ";
    out << px(x_of(points[i].span_m)) << "," << px(y_of(points[i].rate_percent));
  }
  out << "\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace reactline
