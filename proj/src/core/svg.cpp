#include "svg.hpp"

#include <sstream>

namespace mumford {

namespace {

const char* kPalette[] = {"#d62728", "#2ca02c", "#1f77b4", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

// Pixel coordinate with three exact decimals.
std::string px(const Rat& unit) {
  Rat v = Rat(20) + Rat(400) * unit;
  Int milli = floor_rat(v * 1000 + Rat(1, 2));
  Int whole = floor_div(milli, Int(1000));
  Int frac = milli - whole * 1000;
  std::string f = frac.str();
  while (f.size() < 3) f = "0" + f;
  while (!f.empty() && f.back() == '0') f.pop_back();
  return f.empty() ? whole.str() : whole.str() + "." + f;
}

std::string py(const Rat& unit) { return px(Rat(1) - unit); }  // flip y

const char* color_of(const CellClass& cc) {
  size_t idx = 0;
  if (!cc.weights.empty()) idx = cc.weights.begin()->first;
  return kPalette[idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

std::string weight_label(const CellClass& cc) {
  Rat total = 0;
  for (auto& [s, w] : cc.weights) total += w;
  return total == 0 ? std::string() : to_string(total);
}

}  // namespace

std::string emit_svg(const PeriodicComplex& pc) {
  if (pc.dim > 2) throw std::invalid_argument("svg rendering needs dimension <= 2");
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 440 440\">\n";
  os << "  <rect x=\"20\" y=\"20\" width=\"400\" height=\"400\" fill=\"none\" "
        "stroke=\"#000000\" stroke-width=\"1\"/>\n";

  if (pc.dim == 1) {
    // The circle R/Z drawn along the bottom edge of the square.
    for (const CellClass& cc : pc.cells) {
      if (cc.dim != 0) continue;
      Rat x = cc.verts[0][0];
      os << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(Rat(0)) << "\" r=\"5\" fill=\""
         << color_of(cc) << "\"/>\n";
      std::string label = weight_label(cc);
      if (!label.empty())
        os << "  <text x=\"" << px(x) << "\" y=\"" << py(Rat(1, 20))
           << "\" font-size=\"16\" text-anchor=\"middle\">" << label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
  }

  // Walls, clipped to the fundamental square, over nearby translates.
  for (const CellClass& cc : pc.cells) {
    if (cc.dim != 1) continue;
    bool labeled = false;
    for (int s0 = -2; s0 <= 2; ++s0)
      for (int s1 = -2; s1 <= 2; ++s1) {
        RatVec a = cc.verts[0], b = cc.verts[1];
        RatVec shift(2);
        for (size_t i = 0; i < 2; ++i) {
          shift[i] = Rat(s0) * Rat(pc.period[0][i]) + Rat(s1) * Rat(pc.period[1][i]);
          a[i] += shift[i];
          b[i] += shift[i];
        }
        // Clip segment a + t(b-a), t in [0,1], to the unit square.
        Rat tlo = 0, thi = 1;
        bool empty = false;
        for (size_t i = 0; i < 2 && !empty; ++i) {
          Rat d = b[i] - a[i];
          for (int side = 0; side < 2 && !empty; ++side) {
            // side 0: x_i >= 0; side 1: x_i <= 1.
            Rat num0 = side == 0 ? -a[i] : a[i] - Rat(1);
            Rat den0 = side == 0 ? d : -d;
            if (den0 == 0) {
              if (num0 > 0) empty = true;
            } else if (den0 > 0) {
              tlo = std::max(tlo, Rat(num0 / den0));
            } else {
              thi = std::min(thi, Rat(num0 / den0));
            }
          }
        }
        if (empty || tlo >= thi) continue;
        RatVec p = add(a, scale(sub(b, a), tlo));
        RatVec q = add(a, scale(sub(b, a), thi));
        os << "  <line x1=\"" << px(p[0]) << "\" y1=\"" << py(p[1]) << "\" x2=\"" << px(q[0])
           << "\" y2=\"" << py(q[1]) << "\" stroke=\"" << color_of(cc)
           << "\" stroke-width=\"2\"/>\n";
        if (!labeled) {
          std::string label = weight_label(cc);
          if (!label.empty()) {
            RatVec mid = scale(add(p, q), Rat(1, 2));
            os << "  <text x=\"" << px(mid[0]) << "\" y=\"" << py(mid[1])
               << "\" font-size=\"16\" text-anchor=\"middle\">" << label << "</text>\n";
            labeled = true;
          }
        }
      }
  }
  // Vertex classes.
  for (const CellClass& cc : pc.cells) {
    if (cc.dim != 0) continue;
    const RatVec& v = cc.verts[0];
    if (v[0] < 0 || v[0] > 1 || v[1] < 0 || v[1] > 1) continue;
    os << "  <circle cx=\"" << px(v[0]) << "\" cy=\"" << py(v[1])
       << "\" r=\"4\" fill=\"#000000\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string emit_svg(const MumfordData& data) {
  data.validate();
  if (data.g > 2) throw std::invalid_argument("svg rendering needs dimension <= 2");
  std::vector<size_t> full;
  for (size_t i = 0; i < data.k; ++i) full.push_back(i);
  return emit_svg(stratification(data, full).complex);
}

}  // namespace mumford
