#include "brickwork/svg.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace brickwork {

namespace {

constexpr double kWidth = 600, kHeight = 540;
const double E1[2] = {300, 40}, E2[2] = {560, 490}, E3[2] = {40, 490};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

void place(const LatticePoint& p, double& x, double& y) {
    double s = static_cast<double>(p.num[0] + p.num[1] + p.num[2]);
    double a = p.num[0] / s, b = p.num[1] / s, c = p.num[2] / s;
    x = a * E1[0] + b * E2[0] + c * E3[0];
    y = a * E1[1] + b * E2[1] + c * E3[1];
}

std::string label(const GroupType& G, const LatticePoint& p) {
    Int r = G.order();
    for (int i = 0; i < 3; ++i)
        if (p.num[i] == r && p.num[(i + 1) % 3] == 0 && p.num[(i + 2) % 3] == 0) return "e" + std::to_string(i + 1);
    auto t = G.lattice_class(p.num);
    if (t && G.class_point(*t).num == p.num) return "v" + std::to_string(*t);
    return to_string(p);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string render_svg(const Fan& fan) {
    Fan f = fan.canonical();
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
       << "<title>" << escape(f.group.to_string()) << "</title>\n"
       << "<g stroke=\"black\" stroke-width=\"1\">\n";
    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        auto cyc = cyclic_rays(f.cone(i));
        for (std::size_t l = 0; l < cyc.size(); ++l) {
            int a = f.ray_index(cyc[l]), b = f.ray_index(cyc[(l + 1) % cyc.size()]);
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    }
    for (auto [a, b] : edges) {
        double x1, y1, x2, y2;
        place(f.rays[a], x1, y1);
        place(f.rays[b], x2, y2);
        os << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
           << "\"/>\n";
    }
    os << "</g>\n";
    for (auto& p : f.rays) {
        double x, y;
        place(p, x, y);
        os << "<g class=\"ray\"><circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
           << "\" r=\"3\" fill=\"black\"/><text x=\"" << fmt(x + 5) << "\" y=\"" << fmt(y - 5)
           << "\" font-size=\"12\" font-family=\"serif\">" << escape(label(f.group, p)) << "</text></g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace brickwork
