#include "twistfind/svg.hpp"

#include <cstdio>
#include <sstream>

namespace twistfind {

namespace {

std::string num(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(v));
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

Rect default_viewport(const PlanarSet& s, const ShapeCertificate* cert) {
  if (cert) {
    const ContextSummary& c = cert->context;
    const Real pad = 0.05L * (c.d + c.C + c.epsilon);
    Rect box{{std::min(c.O.x - c.C, c.A.x - c.epsilon), std::min(c.O.y - c.C, c.A.y - c.epsilon)},
             {std::max(c.O.x + c.C, c.A.x + c.epsilon), std::max(c.O.y + c.C, c.A.y + c.epsilon)}};
    for (Point v : cert->vertices) {
      box.min = {std::min(box.min.x, v.x), std::min(box.min.y, v.y)};
      box.max = {std::max(box.max.x, v.x), std::max(box.max.y, v.y)};
    }
    return {box.min - Point{pad, pad}, box.max + Point{pad, pad}};
  }
  if (auto b = s.bounds()) return *b;
  throw Error(Errc::InvalidInput, "viewport: required for a scene without a window");
}

std::vector<std::string> vertex_labels(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::IsoscelesTriangle: return {"O", "p", "f(p)"};
    case ShapeKind::RightTriangle: return {"O", "p", "g(p)"};
    case ShapeKind::IsoscelesTrapezoid: return {"p", "f(p)", "f(p)/R", "p/R"};
  }
  return {};
}

}  // namespace

std::string render_svg(const PlanarSet& s, const ShapeCertificate* cert, const PlotSpec& spec) {
  const Rect view = spec.viewport ? *spec.viewport : default_viewport(s, cert);
  if (!(view.width() > 0) || !(view.height() > 0) || !std::isfinite(view.width()) || !std::isfinite(view.height())) {
    throw Error(Errc::InvalidInput, "viewport: must have positive area");
  }
  if (!(spec.width_px > 0) || spec.set_resolution < 1) throw Error(Errc::InvalidInput, "plot: invalid pixel size");

  const Real scale = spec.width_px / view.width();
  const Real height_px = std::max<Real>(1, view.height() * scale);
  const auto X = [&](Real x) { return num((x - view.min.x) * scale); };
  const auto Y = [&](Real y) { return num((view.max.y - y) * scale); };
  const Real font = std::max<Real>(10, spec.width_px / 60);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(spec.width_px) << "\" height=\""
      << num(height_px) << "\" viewBox=\"0 0 " << num(spec.width_px) << " " << num(height_px) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(spec.width_px) << "\" height=\"" << num(height_px)
      << "\" fill=\"white\"/>\n";

  if (spec.layers.set) {
    const int nx = spec.set_resolution;
    const Real cell = view.width() / nx;
    const int ny = static_cast<int>(std::min<Real>(4 * nx, std::ceil(view.height() / cell)));
    const Real cell_h = view.height() / ny;
    out << "<g id=\"set\" fill=\"#9ecae1\" stroke=\"none\">\n";
    std::ostringstream d;
    for (int j = 0; j < ny; ++j) {
      const Real y = view.max.y - (j + 0.5L) * cell_h;
      int i = 0;
      while (i < nx) {
        const auto in = [&](int k) { return s.contains({view.min.x + (k + 0.5L) * cell, y}); };
        if (!in(i)) {
          ++i;
          continue;
        }
        const int start = i;
        while (i < nx && in(i)) ++i;
        const Real x0 = view.min.x + start * cell;
        const Real x1 = view.min.x + i * cell;
        const Real top = view.max.y - j * cell_h;
        d << "M" << X(x0) << " " << Y(top) << "H" << X(x1) << "V" << Y(top - cell_h) << "H" << X(x0) << "Z";
      }
    }
    if (!d.str().empty()) out << "<path class=\"set\" d=\"" << d.str() << "\"/>\n";
    out << "</g>\n";
  }

  if (cert) {
    const ContextSummary& c = cert->context;
    const std::string stroke = num(spec.stroke_width);
    if (spec.layers.disks) {
      out << "<g id=\"disks\" fill=\"none\" stroke=\"#333333\" stroke-width=\"" << stroke << "\">\n";
      const auto circle = [&](const char* cls, Point center, Real r, const char* extra, const char* label) {
        out << "<circle class=\"" << cls << "\" cx=\"" << X(center.x) << "\" cy=\"" << Y(center.y) << "\" r=\""
            << num(r * scale) << "\"" << extra << "/>\n";
        out << "<text x=\"" << X(center.x + r * 0.72L) << "\" y=\"" << Y(center.y + r * 0.72L)
            << "\" font-size=\"" << num(font) << "\" stroke=\"none\" fill=\"#333333\">" << label << "</text>\n";
      };
      circle("disk-D", c.O, c.C, "", "D");
      circle("disk-B", c.A, c.epsilon, "", "B");
      circle("disk-Bprime", c.A, c.epsilon / 2, " stroke-dasharray=\"4 3\"", "B′");
      out << "</g>\n";
    }
    if (spec.layers.axes) {
      out << "<g id=\"axes\" stroke=\"#777777\" stroke-width=\"" << stroke << "\">\n"
          << "<line x1=\"" << X(c.O.x) << "\" y1=\"" << Y(c.O.y) << "\" x2=\"" << X(c.A.x) << "\" y2=\""
          << Y(c.A.y) << "\"/>\n"
          << "<text x=\"" << X((c.O.x + c.A.x) / 2) << "\" y=\"" << Y((c.O.y + c.A.y) / 2)
          << "\" dy=\"" << num(font) << "\" font-size=\"" << num(font) << "\" stroke=\"none\">d</text>\n"
          << "</g>\n";
    }
    if (spec.layers.edges) {
      out << "<g id=\"edges\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"" << stroke << "\">\n";
      const auto& v = cert->vertices;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Point a = v[i];
        const Point b = v[(i + 1) % v.size()];
        out << "<path class=\"edge\" d=\"M" << X(a.x) << " " << Y(a.y) << "L" << X(b.x) << " " << Y(b.y)
            << "\"/>\n";
      }
      out << "</g>\n";
    }
    if (spec.layers.vertices) {
      out << "<g id=\"vertices\" fill=\"#000000\">\n";
      const auto dot = [&](Point p, const std::string& label) {
        out << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"" << num(2 * spec.stroke_width)
            << "\"/>\n<text x=\"" << X(p.x) << "\" y=\"" << Y(p.y) << "\" dx=\"" << num(font / 2)
            << "\" font-size=\"" << num(font) << "\">" << label << "</text>\n";
      };
      const auto labels = vertex_labels(cert->kind);
      for (std::size_t i = 0; i < cert->vertices.size(); ++i) dot(cert->vertices[i], labels[i]);
      dot(c.A, "A");
      if (cert->kind == ShapeKind::IsoscelesTrapezoid) dot(c.O, "O");
      out << "</g>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace twistfind
