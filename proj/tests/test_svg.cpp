#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "reactline/geometry.hpp"
#include "reactline/svg.hpp"

using namespace reactline;

namespace {

SpectrumPoint point(double span, double rate) {
  SpectrumPoint p;
  p.span_m = span;
  p.rate_percent = rate;
  return p;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

/// Vertex list of the chart polyline as "x,y" strings.
std::vector<std::string> polyline_vertices(const std::string& svg) {
  std::size_t tag = svg.find("<polyline");
  REQUIRE(tag != std::string::npos);
  std::size_t open = svg.find("points=\"", tag);
  REQUIRE(open != std::string::npos);
  open += 8;
  std::size_t close = svg.find('"', open);
  REQUIRE(close != std::string::npos);
  std::string body = svg.substr(open, close - open);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t space = body.find(' ', start);
    if (space == std::string::npos) space = body.size();
    if (space > start) out.push_back(body.substr(start, space - start));
    start = space + 1;
  }
  return out;
}

std::string y_of(const std::string& vertex) {
  return vertex.substr(vertex.find(',') + 1);
}

}  // namespace

TEST_CASE("the chart is a single polyline with one vertex per point") {
  std::vector<SpectrumPoint> points;
  std::vector<double> grid = default_span_grid();
  for (double span : grid) points.push_back(point(span, 50.0));
  REQUIRE(points.size() == 44);

  std::string svg = render_spectrum_svg(points, SvgOptions{});
  CHECK(count_occurrences(svg, "<polyline") == 1);
  CHECK(polyline_vertices(svg).size() == 44);
}

TEST_CASE("a one hundred percent rate sits exactly on the top gridline") {
  std::vector<SpectrumPoint> points = {point(5.0, 100.0), point(10.0, 100.0),
                                       point(20.0, 100.0)};
  SvgOptions opt;
  std::string svg = render_spectrum_svg(points, opt);

  // The top gridline is the one labelled 100; its y must match each vertex
  // textually, not merely within rounding.
  std::size_t label = svg.find(">100<");
  REQUIRE(label != std::string::npos);
  std::size_t line = svg.rfind("<line", label);
  REQUIRE(line != std::string::npos);
  std::size_t y1 = svg.find("y1=\"", line) + 4;
  std::string top_y = svg.substr(y1, svg.find('"', y1) - y1);

  for (const std::string& v : polyline_vertices(svg)) CHECK(y_of(v) == top_y);
}

TEST_CASE("a zero rate sits exactly on the bottom gridline") {
  std::vector<SpectrumPoint> points = {point(5.0, 0.0), point(25.0, 0.0)};
  std::string svg = render_spectrum_svg(points, SvgOptions{});

  // Gridlines run top to bottom; the last <line> before the axes is the 0 line.
  auto vertices = polyline_vertices(svg);
  REQUIRE(vertices.size() == 2);
  CHECK(y_of(vertices[0]) == y_of(vertices[1]));
  // The 0 gridline shares its y with the x axis, which the vertices ride on.
  std::string y = y_of(vertices[0]);
  CHECK(count_occurrences(svg, "y1=\"" + y + "\"") >= 2);
}

TEST_CASE("rates outside the axis clamp onto it") {
  std::vector<SpectrumPoint> spill = {point(5.0, 150.0), point(10.0, -20.0)};
  std::vector<SpectrumPoint> pinned = {point(5.0, 100.0), point(10.0, 0.0)};
  std::string a = render_spectrum_svg(spill, SvgOptions{});
  std::string b = render_spectrum_svg(pinned, SvgOptions{});
  CHECK(polyline_vertices(a) == polyline_vertices(b));
}

TEST_CASE("rendering is deterministic and escapes the title") {
  std::vector<SpectrumPoint> points = {point(3.0, 12.5), point(9.0, 80.0)};
  SvgOptions opt;
  opt.title = "a < b & c";
  std::string first = render_spectrum_svg(points, opt);
  std::string second = render_spectrum_svg(points, opt);
  CHECK(first == second);
  CHECK(first.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(first.find("a < b & c") == std::string::npos);
}

TEST_CASE("an empty spectrum cannot be charted") {
  CHECK_THROWS_AS(render_spectrum_svg({}, SvgOptions{}), std::invalid_argument);
}

TEST_CASE("a single point still renders a valid chart") {
  std::string svg = render_spectrum_svg({point(10.0, 40.0)}, SvgOptions{});
  CHECK(polyline_vertices(svg).size() == 1);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
}
