#include "orbitpow/cli_support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace orbitpow {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string to_toml(const RunConfig& c) {
    // keys sorted; this ordering is the canonical form
    std::ostringstream o;
    o << "alpha = " << quote(c.alpha) << "\n";
    o << "beta = " << quote(c.beta) << "\n";
    o << "bit_budget = " << c.bit_budget << "\n";
    o << "bound = " << c.bound << "\n";
    o << "command = " << quote(c.command) << "\n";
    o << "count = " << c.count << "\n";
    o << "degree_shift = " << c.degree_shift << "\n";
    o << "eps = " << fmt_double(c.eps) << "\n";
    o << "k_max = " << c.k_max << "\n";
    o << "m = " << c.m << "\n";
    o << "n_max = " << c.n_max << "\n";
    o << "out_dir = " << quote(c.out_dir) << "\n";
    o << "poly = " << quote(c.poly) << "\n";
    o << "s = " << quote(c.s) << "\n";
    o << "tol = " << fmt_double(c.tol) << "\n";
    o << "variant = " << quote(c.variant) << "\n";
    o << "workers = " << c.workers << "\n";
    return o.str();
}

RunConfig config_from_toml(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    auto unquote = [](std::string v) {
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
            std::string out;
            for (std::size_t i = 1; i + 1 < v.size(); ++i) {
                if (v[i] == '\\' && i + 2 < v.size()) ++i;
                out += v[i];
            }
            return out;
        }
        return v;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line without '=': " + line);
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
        };
        trim(key);
        trim(val);
        try {
            if (key == "alpha") c.alpha = unquote(val);
            else if (key == "beta") c.beta = unquote(val);
            else if (key == "bit_budget") c.bit_budget = std::stol(val);
            else if (key == "bound") c.bound = std::stol(val);
            else if (key == "command") c.command = unquote(val);
            else if (key == "count") c.count = std::stol(val);
            else if (key == "degree_shift") c.degree_shift = std::stoi(val);
            else if (key == "eps") c.eps = std::stod(val);
            else if (key == "k_max") c.k_max = std::stol(val);
            else if (key == "m") c.m = std::stol(val);
            else if (key == "n_max") c.n_max = std::stol(val);
            else if (key == "out_dir") c.out_dir = unquote(val);
            else if (key == "poly") c.poly = unquote(val);
            else if (key == "s") c.s = unquote(val);
            else if (key == "tol") c.tol = std::stod(val);
            else if (key == "variant") c.variant = unquote(val);
            else if (key == "workers") c.workers = std::stoi(val);
            else throw ParseError("unknown config key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw ParseError("bad value for config key '" + key + "'");
        }
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_toml(ss.str());
}

std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(to_toml(cfg))));
    return buf;
}

std::string manifest_json(const RunConfig& cfg, double wall_seconds,
                          const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = cfg.command;
    j["config_hash"] = config_hash_hex(cfg);
    j["config"] = to_toml(cfg);
    j["versions"] = {{"orbitpow", kToolVersion}, {"gmp", gmp_version}};
    j["wall_time_s"] = wall_seconds;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

namespace {

constexpr double kW = 840, kH = 520;
constexpr double kL = 70, kR = 20, kT = 40, kB = 50;

struct Scale {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    double sx(double x) const { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); }
    double sy(double y) const { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); }
};

Scale fit(const std::vector<std::pair<double, double>>& pts) {
    Scale s;
    if (pts.empty()) return s;
    s.xmin = s.xmax = pts[0].first;
    s.ymin = s.ymax = pts[0].second;
    for (const auto& [x, y] : pts) {
        s.xmin = std::min(s.xmin, x);
        s.xmax = std::max(s.xmax, x);
        s.ymin = std::min(s.ymin, y);
        s.ymax = std::max(s.ymax, y);
    }
    if (s.xmax == s.xmin) s.xmax = s.xmin + 1;
    if (s.ymax == s.ymin) s.ymax = s.ymin + 1;
    double padx = 0.04 * (s.xmax - s.xmin), pady = 0.08 * (s.ymax - s.ymin);
    s.xmin -= padx;
    s.xmax += padx;
    s.ymin -= pady;
    s.ymax += pady;
    return s;
}

std::string svg_header(const std::string& title, const std::string& xl, const std::string& yl,
                       const Scale& s) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    o << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";
    o << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << xl << "</text>\n";
    o << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << kH / 2 << ")\">" << yl << "</text>\n";
    // frame and ticks
    o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\""
      << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";
    char buf[64];
    for (int i = 0; i <= 5; ++i) {
        double xv = s.xmin + (s.xmax - s.xmin) * i / 5.0;
        double yv = s.ymin + (s.ymax - s.ymin) * i / 5.0;
        std::snprintf(buf, sizeof(buf), "%.4g", xv);
        o << "<text x=\"" << s.sx(xv) << "\" y=\"" << kH - kB + 16
          << "\" text-anchor=\"middle\" font-size=\"10\">" << buf << "</text>\n";
        std::snprintf(buf, sizeof(buf), "%.4g", yv);
        o << "<text x=\"" << kL - 6 << "\" y=\"" << s.sy(yv) + 3
          << "\" text-anchor=\"end\" font-size=\"10\">" << buf << "</text>\n";
    }
    return o.str();
}

}  // namespace

std::string svg_step_plot(const PlotSeries& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label) {
    Scale s = fit(series.points);
    std::ostringstream o;
    o << svg_header(title, x_label, y_label, s);
    if (series.points.empty()) {
        o << "<text x=\"" << kW / 2 << "\" y=\"" << kH / 2
          << "\" text-anchor=\"middle\" font-size=\"14\" fill=\"gray\">no data</text>\n";
    } else {
        o << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        double prev_y = series.points[0].second;
        for (std::size_t i = 0; i < series.points.size(); ++i) {
            const auto& [x, y] = series.points[i];
            if (i) o << " " << s.sx(x) << "," << s.sy(prev_y);
            o << " " << s.sx(x) << "," << s.sy(y);
            prev_y = y;
        }
        o << "\"/>\n";
        for (const auto& [x, y] : series.points)
            o << "<circle cx=\"" << s.sx(x) << "\" cy=\"" << s.sy(y) << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_scatter_with_envelope(const PlotSeries& scatter, const std::string& title,
                                      const std::string& x_label, const std::string& y_label) {
    Scale s = fit(scatter.points);
    std::ostringstream o;
    o << svg_header(title, x_label, y_label, s);
    if (scatter.points.empty()) {
        o << "<text x=\"" << kW / 2 << "\" y=\"" << kH / 2
          << "\" text-anchor=\"middle\" font-size=\"14\" fill=\"gray\">no data</text>\n";
    } else {
        for (const auto& [x, y] : scatter.points)
            o << "<circle cx=\"" << s.sx(x) << "\" cy=\"" << s.sy(y)
              << "\" r=\"1.8\" fill=\"steelblue\" fill-opacity=\"0.5\"/>\n";
        auto sorted = scatter.points;
        std::sort(sorted.begin(), sorted.end());
        o << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
        double running = sorted[0].second;
        for (const auto& [x, y] : sorted) {
            running = std::max(running, y);
            o << " " << s.sx(x) << "," << s.sy(running);
        }
        o << "\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::vector<std::vector<double>> load_csv_numeric(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;  // header
        }
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            // plain double, rational "p/q", or a label (taken as 0)
            try {
                std::size_t pos = 0;
                double v = std::stod(cell, &pos);
                if (pos == cell.size()) {
                    row.push_back(v);
                    continue;
                }
                if (pos < cell.size() && cell[pos] == '/') {
                    double den = std::stod(cell.substr(pos + 1));
                    row.push_back(den != 0 ? v / den : 0.0);
                    continue;
                }
            } catch (const std::invalid_argument&) {
            }
            row.push_back(0.0);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace orbitpow
